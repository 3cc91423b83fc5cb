"""
V(p) (x) L(k) as sl_2-modules on (k+1)-tuples of one-variable polynomials.

A tuple (f_0..f_k) stands for sum_l f_l (x) v_l. Each generator acts by its
V(p) operator on every slot plus its L(k) matrix across slots. The copy of
K[x] inside the tensor acts through r * g = r(x + N) g, where N is the
matrix of x on L(k).

The decomposition V(p) (x) L(k) = sum_i V(p + k - 2i) is found by solving,
for each shift s, the linear system

    h.g = (p + s) * g,    y.g = q_s * g,    q_s = q(p + s)

and certified degree by degree with the grading G(x^a v_l) = 2a + k - 2l.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from app.algebra import linalg
from app.algebra.polynomial import Polynomial
from app.config import SPLIT_CHECK_DEGREE, TENSOR_DEGREE_MARGIN
from app.errors import DegenerateSplit, DimensionMismatch
from app.lie.sl import SL2_H, SL2_X, SL2_Y, Sl2BasisElement
from app.modules.representation import representation_builder
from app.reports import DecompositionReport, SplitReport, Summand
from app.tensor.finite import FiniteModule, build_finite_module
from app.utils import system_logger, time_operation

Coordinate = Tuple[int, int]  # (slot, exponent)


@dataclass(frozen=True)
class TensorElement:
    """Coordinates of an element of V(p) (x) L(k) in the weight basis of L(k)."""

    components: Tuple[Polynomial, ...]

    @classmethod
    def of(cls, *components: Polynomial) -> "TensorElement":
        return cls(tuple(components))

    @classmethod
    def zero(cls, k: int) -> "TensorElement":
        return cls(tuple(Polynomial.zero(1) for _ in range(k + 1)))

    @classmethod
    def basis_vector(cls, k: int, slot: int, exponent: int) -> "TensorElement":
        parts = [Polynomial.zero(1)] * (k + 1)
        parts[slot] = Polynomial.monomial((exponent,))
        return cls(tuple(parts))

    @property
    def k(self) -> int:
        return len(self.components) - 1

    def _check(self, other: "TensorElement") -> None:
        if len(other.components) != len(self.components):
            raise DimensionMismatch(len(self.components), len(other.components))

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        return TensorElement(tuple(a - b for a, b in zip(self.components, other.components)))

    def scale(self, factor) -> "TensorElement":
        return TensorElement(tuple(c.scale(factor) for c in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def coordinates(self) -> Dict[Coordinate, Fraction]:
        coords = {}
        for slot, component in enumerate(self.components):
            for (exponent,), coeff in component.terms.items():
                coords[(slot, exponent)] = coeff
        return coords

    def grade_part(self, grade: int) -> Dict[Coordinate, Fraction]:
        """Coordinates of the part with 2a + k - 2l equal to grade."""
        k = self.k
        return {
            (slot, exponent): coeff
            for (slot, exponent), coeff in self.coordinates().items()
            if 2 * exponent + k - 2 * slot == grade
        }

    def to_strings(self) -> List[str]:
        return [str(c) for c in self.components]


class TensorAction:
    """The sl_2 action on V(p) (x) L(k)."""

    def __init__(self, p: Polynomial, k: int):
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        system_logger.debug(f"Initializing TensorAction for V({p}) x L({k})")
        self.p = p
        self.k = k
        self.rep = representation_builder.build_rep_sl2(p)
        self.module: FiniteModule = build_finite_module(k)

    def _matrix_apply(self, matrix, element: TensorElement) -> List[Polynomial]:
        size = self.k + 1
        out = [Polynomial.zero(1) for _ in range(size)]
        for row in range(size):
            for column in range(size):
                entry = matrix[row, column]
                if entry != 0:
                    out[row] = out[row] + element.components[column].scale(linalg.to_fraction(entry))
        return out

    def act(self, generator: Sl2BasisElement, element: TensorElement) -> TensorElement:
        if element.k != self.k:
            raise DimensionMismatch(self.k, element.k)
        operator = self.rep.rho[generator]
        across = self._matrix_apply(self.module.matrix(generator), element)
        return TensorElement(tuple(operator.apply(c) + a for c, a in zip(element.components, across)))

    def polynomial_action(self, r: Polynomial, element: TensorElement) -> TensorElement:
        """r(x + N) applied to element, with N nilpotent and commuting with x."""
        total = TensorElement.zero(self.k)
        power = element
        derivative = r
        for j in range(self.k + 1):
            if derivative.is_zero():
                break
            total = total + TensorElement(tuple(derivative * c for c in power.components)).scale(Fraction(1, factorial(j)))
            power = TensorElement(tuple(self._matrix_apply(self.module.x, power)))
            derivative = derivative.differentiate(1)
        return total

    def check_relations(self, degree: int) -> List[str]:
        """Bracket relations on every basis tuple x^a v_l with a <= degree; returns failures."""
        relations = [(SL2_H, SL2_X, SL2_X, 2), (SL2_H, SL2_Y, SL2_Y, -2), (SL2_X, SL2_Y, SL2_H, 1)]
        failures = []
        for slot in range(self.k + 1):
            for exponent in range(degree + 1):
                v = TensorElement.basis_vector(self.k, slot, exponent)
                for a, b, c, coeff in relations:
                    left = self.act(a, self.act(b, v)) - self.act(b, self.act(a, v))
                    if left != self.act(c, v).scale(coeff):
                        failures.append(f"[{a},{b}] on x^{exponent} v_{slot}")
        return failures


def tensor_representation(p: Polynomial, k: int) -> TensorAction:
    return TensorAction(p, k)


# L(1) splitting

def _phi(shift_term: Polynomial, f: Polynomial) -> TensorElement:
    return TensorElement.of(shift_term * f + f.differentiate(1), f)


def _psi(p: Polynomial, f: Polynomial) -> TensorElement:
    x = Polynomial.variable(1, 1)
    return TensorElement.of(((p + p.evaluate_at_zero()) * f).scale(Fraction(1, 2)) + x * f.differentiate(1), x * f)


@time_operation
def split_tensor_L1(p: Polynomial, check_degree: int = SPLIT_CHECK_DEGREE) -> SplitReport:
    """
    Certify V(p) (x) L(1) = V(p - 1) + V(p + 1) through

        phi(f) = ((p - p(0))/(2x) f + f', f)
        psi(f) = ((p + p(0))/2 f + x f', x f)

    Raises:
        DegenerateSplit: when p(0) = 1, where phi(x f) = psi(f)
    """
    action = TensorAction(p, 1)
    q = action.rep.qi[1]
    constant = p.evaluate_at_zero()
    shift_term = (p - constant).exact_divide_by_var(1).scale(Fraction(1, 2))
    x = Polynomial.variable(1, 1)
    one = Polynomial.constant(1, 1)
    phi = lambda f: _phi(shift_term, f)
    psi = lambda f: _psi(p, f)

    checks = {
        "h.phi(1)=phi(p-1)": action.act(SL2_H, phi(one)) == phi(p - 1),
        "y.phi(1)=phi(q+a)": action.act(SL2_Y, phi(one)) == phi(q + shift_term),
        "h.psi(1)=psi(p+1)": action.act(SL2_H, psi(one)) == psi(p + 1),
        "y.psi(1)=psi(q-a)": action.act(SL2_Y, psi(one)) == psi(q - shift_term),
        "x.phi(1)=phi(x)": action.act(SL2_X, phi(one)) == phi(x),
        "x.psi(1)=psi(x)": action.act(SL2_X, psi(one)) == psi(x),
    }
    checks["phi(xf)-psi(f)=((1-p(0))f,0)"] = all(
        phi(x ** j * x) - psi(x ** j) == TensorElement.of((x ** j).scale(1 - constant), Polynomial.zero(1))
        for j in range(check_degree + 1)
    )

    # phi(K[x]) + psi(K[x]) must be direct and reach every coordinate vector up to check_degree
    # psi(x^D) needs phi(x^(D+1)) even when p is constant
    reach = check_degree + max(p.total_degree(), 1) + 1
    generators = [phi(x ** j).coordinates() for j in range(reach)]
    generators += [psi(x ** j).coordinates() for j in range(reach)]
    targets = [TensorElement.basis_vector(1, slot, a).coordinates() for slot in (0, 1) for a in range(check_degree + 1)]
    measured = linalg.rank(generators)
    spans = all(linalg.in_span(generators, target) for target in targets)
    rank_data = {"generators": len(generators), "rank": measured, "check_degree": check_degree}
    checks["independent"] = measured == len(generators)
    checks["spans"] = spans

    if constant == 1:
        system_logger.warning(f"Degenerate L(1) split for p = {p}: rank {measured} of {len(generators)}")
        raise DegenerateSplit(f"p(0) = 1 for p = {p}; phi(x f) = psi(f)", rank_data)

    certified = all(checks.values())
    if not certified:
        system_logger.warning(f"L(1) split checks failed for p = {p}: {checks}")
    return SplitReport(
        p=str(p),
        phi_generator=phi(one).to_strings(),
        psi_generator=psi(one).to_strings(),
        check_degree=check_degree,
        checks=checks,
        rank_data=rank_data,
        certified=certified,
    )


# General decomposition

class TensorDecomposer:
    """Finds and certifies the summands V(p + k - 2i) of V(p) (x) L(k)."""

    def __init__(self):
        system_logger.info("Initializing TensorDecomposer")

    @staticmethod
    def default_degree(p: Polynomial, k: int) -> int:
        return k + p.total_degree() + TENSOR_DEGREE_MARGIN

    @staticmethod
    def _normalize(element: TensorElement) -> TensorElement:
        # Highest nonzero slot gets lowest-degree coefficient 1
        for component in reversed(element.components):
            if not component.is_zero():
                lowest = min(component.terms, key=sum)
                return element.scale(1 / component.coefficient(lowest))
        return element

    def find_generator(self, action: TensorAction, shift: int, search_degree: int) -> List[TensorElement]:
        """
        Basis of solutions g with h.g = (p + shift) * g and y.g = q(p + shift) * g.

        Components are searched up to search_degree.
        """
        shifted = action.p + shift
        shifted_q = representation_builder.build_q_sl2(shifted)
        unknowns = [
            TensorElement.basis_vector(action.k, slot, exponent)
            for slot in range(action.k + 1)
            for exponent in range(search_degree + 1)
        ]
        columns = []
        for e in unknowns:
            h_part = action.act(SL2_H, e) - action.polynomial_action(shifted, e)
            y_part = action.act(SL2_Y, e) - action.polynomial_action(shifted_q, e)
            column = {("h",) + key: value for key, value in h_part.coordinates().items()}
            column.update({("y",) + key: value for key, value in y_part.coordinates().items()})
            columns.append(column)

        solutions = []
        for vector in linalg.nullspace(columns):
            g = TensorElement.zero(action.k)
            for coeff, e in zip(vector, unknowns):
                if coeff:
                    g = g + e.scale(coeff)
            solutions.append(self._normalize(g))
        return solutions

    @time_operation
    def decompose(self, p: Polynomial, k: int, degree: Optional[int] = None) -> DecompositionReport:
        """
        Decompose V(p) (x) L(k).

        Args:
            p: One-variable parameter polynomial
            k: Highest weight of the finite factor
            degree: Truncation degree D for the certificates

        Returns:
            DecompositionReport; certified is False with the failing degree
            when a generator is missing or a rank check drops
        """
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        if k < 0:
            raise ValueError(f"k must be nonnegative, got {k}")
        minimum = k + p.total_degree() + 2
        degree = degree if degree is not None else self.default_degree(p, k)
        if degree < minimum:
            raise ValueError(f"truncation degree {degree} below k + deg(p) + 2 = {minimum}")
        search_degree = max(degree, k * max(p.total_degree(), 1))
        action = TensorAction(p, k)
        system_logger.info(f"Decomposing V({p}) x L({k}) to degree {degree}")

        def failed(reason: str, at: Optional[int], summands: Sequence[Summand] = ()) -> DecompositionReport:
            system_logger.warning(f"Decomposition of V({p}) x L({k}) failed: {reason}")
            return DecompositionReport(p=str(p), k=k, certified_up_to_degree=degree, certified=False,
                                       summands=list(summands), failure=reason, failure_degree=at)

        shifts = [k - 2 * i for i in range(k + 1)]
        generators: List[TensorElement] = []
        summands: List[Summand] = []
        for shift in shifts:
            found = self.find_generator(action, shift, search_degree)
            if len(found) != 1:
                return failed(f"shift {shift}: {len(found)} independent generators up to degree {search_degree}",
                              search_degree, summands)
            g = found[0]
            generators.append(g)
            summands.append(Summand(shift=shift, parameter=str(p + shift), generator=g.to_strings()))

        x = Polynomial.variable(1, 1)

        # (a) f -> f * g_i injective up to degree D
        for shift, g in zip(shifts, generators):
            images = [action.polynomial_action(x ** j, g).coordinates() for j in range(degree + 1)]
            if linalg.rank(images) != degree + 1:
                return failed(f"shift {shift}: f * g is not injective", degree, summands)

        # (b) per grade, the leading parts form an invertible square matrix
        for t in range(degree + 1):
            grade = 2 * t - k
            sources = [(j, i) for i, s in enumerate(shifts) for j in [(grade - s) // 2] if j >= 0 and (grade - s) % 2 == 0]
            targets = [(slot, (grade - k + 2 * slot) // 2) for slot in range(k + 1) if grade - k + 2 * slot >= 0]
            rows = []
            for j, i in sources:
                leading = action.polynomial_action(x ** j, generators[i]).grade_part(grade)
                rows.append([leading.get(target, Fraction(0)) for target in targets])
            if len(rows) != len(targets):
                return failed(f"grade {grade}: {len(rows)} sources for {len(targets)} coordinates", t, summands)
            invertible, measured = linalg.is_invertible(rows)
            if not invertible:
                return failed(f"grade {grade}: rank {measured} of {len(rows)}", t, summands)

        # (c) y.g_i = q(p + s) * g_i
        for shift, g in zip(shifts, generators):
            expected = action.polynomial_action(representation_builder.build_q_sl2(p + shift), g)
            if action.act(SL2_Y, g) != expected:
                return failed(f"shift {shift}: y.g is not in the generated copy", degree, summands)

        return DecompositionReport(p=str(p), k=k, certified_up_to_degree=degree, certified=True, summands=summands)

    def shifts(self, p: Polynomial, k: int, degree: Optional[int] = None) -> List[int]:
        report = self.decompose(p, k, degree)
        if not report.certified:
            raise DegenerateSplit(f"decomposition of V({p}) x L({k}) not certified: {report.failure}")
        return sorted(s.shift for s in report.summands)

    def cancellation_check(self, p: Polynomial, k: int) -> bool:
        """
        Tensoring with L(1) once more: shifts(k+1) + shifts(k-1) equal every shift of k split by +-1.
        """
        if k < 1:
            raise ValueError("cancellation needs k >= 1")
        left = sorted(self.shifts(p, k + 1) + self.shifts(p, k - 1))
        right = sorted(s + e for s in self.shifts(p, k) for e in (1, -1))
        return left == right


# Create a singleton instance
tensor_decomposer = TensorDecomposer()


def decompose_tensor(p: Polynomial, k: int, degree: Optional[int] = None) -> DecompositionReport:
    return tensor_decomposer.decompose(p, k, degree)
