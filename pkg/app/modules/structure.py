"""
Submodules of M(p) and V(p).

Every submodule of M(p) is a degree filtration piece
W_m = span{x^a : |a| >= m}. Only E(n+1,i) can lower degree, and on a
monomial f of degree m its degree-lowering part is

    (((n+1)/n) p(0) + m - 1) * f^i

so W_m is invariant exactly when ((n+1)/n) p(0) + m - 1 = 0. The analyzer
decides invariance by applying every generator to every degree-m monomial
and reports the closed-form prediction next to it.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb
from typing import List, Optional

from app.algebra import linalg
from app.algebra.polynomial import Polynomial, monomials_of_degree
from app.algebra.weyl import WeylElement
from app.config import STRUCTURE_MIN_BOUND
from app.errors import AlgebraError, DimensionMismatch, NotInvariant
from app.lie.sl import H, SL2_H, SL2_X, SL2_Y
from app.modules.representation import Representation, representation_builder
from app.reports import ExactSequenceWitness, QuotientData, SubmoduleReport
from app.utils import format_rational, system_logger, time_operation


@dataclass(frozen=True)
class ReducibilityPrediction:
    """Closed-form simplicity predictions for M(p)."""

    n: int
    k: Fraction
    simple: bool
    sl2_constant: Optional[Fraction] = None
    sl2_simple: Optional[bool] = None

    def describe(self) -> str:
        return "Simple" if self.simple else f"ReducibleAt({format_rational(self.k)})"

    def describe_sl2(self) -> Optional[str]:
        if self.sl2_simple is None:
            return None
        if self.sl2_simple:
            return "Simple"
        return f"ReducibleAt({format_rational(1 - self.sl2_constant)})"


def _is_nonpositive_integer(value: Fraction) -> bool:
    return value.denominator == 1 and value <= 0


class StructureAnalyzer:
    """Predictions, invariance oracle and quotient data for M(p)."""

    def __init__(self):
        system_logger.info("Initializing StructureAnalyzer")
        self.builder = representation_builder

    def predicted_reducibility(self, n: int, p: Polynomial) -> ReducibilityPrediction:
        """
        Closed-form predictions.

        M(p) is predicted simple unless k = -((n+1)/n) p(0) is a positive
        integer. For n = 1 the sl_2 criterion on the bridge parameter P is
        also given: V(P) is simple iff P(0) is not a non-positive integer.
        """
        if p.n != n:
            raise DimensionMismatch(n, p.n)
        k = -Fraction(n + 1, n) * p.evaluate_at_zero()
        simple = not (k.denominator == 1 and k >= 1)
        if n != 1:
            return ReducibilityPrediction(n=n, k=k, simple=simple)
        constant = self.builder.sl2_bridge_parameter(p).evaluate_at_zero()
        return ReducibilityPrediction(
            n=n, k=k, simple=simple,
            sl2_constant=constant, sl2_simple=not _is_nonpositive_integer(constant),
        )

    @staticmethod
    def lowering_scalar(n: int, p: Polynomial, m: int) -> Fraction:
        """Coefficient of f^i in the degree-lowering part of E(n+1,i) on a degree-m f."""
        return Fraction(n + 1, n) * p.evaluate_at_zero() + m - 1

    @staticmethod
    def is_invariant(rep: Representation, m: int) -> bool:
        """Exact check that W_m is stable under every generator."""
        if m <= 0:
            return True
        for element in rep.algebra.basis():
            operator = rep.rho[element]
            for monomial in monomials_of_degree(rep.n, m):
                image = operator.apply(Polynomial.monomial(monomial))
                if image.low_part(m):
                    return False
        return True

    def default_bound(self, n: int, p: Polynomial) -> int:
        predicted = ceil(1 - Fraction(n + 1, n) * p.evaluate_at_zero()) + 2
        return max(STRUCTURE_MIN_BOUND, predicted)

    @time_operation
    def minimal_invariant_degree(self, rep: Representation, bound: int) -> Optional[int]:
        """Smallest m in [1, bound] with W_m invariant, or None."""
        if bound < 1:
            raise ValueError(f"search bound must be at least 1, got {bound}")
        for m in range(1, bound + 1):
            if self.is_invariant(rep, m):
                system_logger.debug(f"W_{m} is invariant for p = {rep.p}")
                return m
        return None

    def quotient_data(self, rep: Representation, m: int) -> QuotientData:
        """
        Dimension and weight of the quotient by W_m.

        Args:
            rep: Representation whose W_m is invariant
            m: Filtration degree

        Returns:
            QuotientData with the direct monomial count, the rank of the
            quotient map, and the h-weights on the image of x_1^(m-1)
        """
        if m < 1 or not self.is_invariant(rep, m):
            raise NotInvariant(m)
        n = rep.n
        dim = comb(m - 1 + n, n)

        # Quotient map on monomials of degree <= m, as coordinate vectors
        images = []
        for degree in range(m + 1):
            for monomial in monomials_of_degree(n, degree):
                reduced = Polynomial.monomial(monomial).low_part(m)
                images.append(dict(reduced.terms))
        rank = linalg.rank(images)

        top = tuple([m - 1] + [0] * (n - 1))
        generator = Polynomial.monomial(top)
        elements = [SL2_H] if rep.is_sl2 else [H(i) for i in range(1, n + 1)]
        weight = []
        for element in elements:
            reduced = rep.act(element, generator).low_part(m)
            value = reduced.coefficient(top)
            if reduced != generator.scale(value):
                raise AlgebraError(f"x1^{m - 1} is not a weight vector for {element} modulo W_{m}")
            weight.append(format_rational(value))
        return QuotientData(m=m, dim=dim, rank=rank, weight=weight)

    @time_operation
    def analyze(self, rep: Representation, bound: Optional[int] = None) -> SubmoduleReport:
        """Prediction, oracle and quotient data for M(p) in one report."""
        if rep.is_sl2:
            raise ValueError("analyze expects an sl(n+1) representation; use sl2_exact_sequence_witness for V(p)")
        n, p = rep.n, rep.p
        prediction = self.predicted_reducibility(n, p)
        bound = bound if bound is not None else self.default_bound(n, p)
        oracle = self.minimal_invariant_degree(rep, bound)
        agreement = (not prediction.simple) == (oracle is not None)

        notes: List[str] = []
        quotient = None
        if oracle is not None:
            quotient = self.quotient_data(rep, oracle)
            if prediction.simple:
                notes.append(f"W_{oracle} is invariant although the closed form predicts a simple module (k = {format_rational(prediction.k)})")
            elif oracle != prediction.k:
                notes.append(f"submodule found at W_{oracle}; the closed form names W_{format_rational(prediction.k)}")
            k = prediction.k
            if n >= 2 and k.denominator == 1 and k >= 1:
                closed = comb(int(k) + n - 2, int(k) - 1)
                if closed != quotient.dim:
                    notes.append(f"quotient dimension by direct count is {quotient.dim}; the closed form C(k+n-2, k-1) gives {closed}")
        elif not prediction.simple:
            notes.append(f"no invariant W_m with m <= {bound}")

        if prediction.sl2_simple is not None and prediction.sl2_simple != prediction.simple:
            notes.append(f"sl_2 criterion on the bridge parameter predicts {prediction.describe_sl2()}")
        if not agreement:
            system_logger.warning(f"Prediction {prediction.describe()} disagrees with oracle {oracle} for p = {p}")

        return SubmoduleReport(
            n=n,
            p=str(p),
            predicted=prediction.describe(),
            predicted_k=format_rational(prediction.k),
            sl2_predicted=prediction.describe_sl2(),
            oracle_min_degree=oracle,
            search_bound=bound,
            agreement=agreement,
            quotient=quotient,
            notes=notes,
        )

    @staticmethod
    def sl2_submodule_degree(p: Polynomial) -> Optional[int]:
        """Degree k = 1 - p(0) of the proper submodule x^k K[x] of V(p), if any."""
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        constant = p.evaluate_at_zero()
        if not _is_nonpositive_integer(constant):
            return None
        return int(1 - constant)

    @time_operation
    def sl2_exact_sequence_witness(self, p: Polynomial) -> ExactSequenceWitness:
        """
        Certify 0 -> V(p - 2p(0) + 2) -> V(p) -> L(-p(0)) -> 0 when p(0) is a non-positive integer.

        The embedding is f -> x^k f with k = 1 - p(0); it is checked as an
        identity of Weyl operators for each of x, h, y.
        """
        k = self.sl2_submodule_degree(p)
        if k is None:
            return ExactSequenceWitness(p=str(p), applicable=False)

        constant = p.evaluate_at_zero()
        sub_parameter = p - 2 * constant + 2
        rep = self.builder.build_rep_sl2(p)
        sub = self.builder.build_rep_sl2(sub_parameter)
        theta = WeylElement.multiplication(Polynomial.monomial((k,)))

        intertwiner = {
            str(element): rep.rho[element] * theta == theta * sub.rho[element]
            for element in (SL2_X, SL2_H, SL2_Y)
        }
        intertwiner["image_invariant"] = self.is_invariant(rep, k)
        quotient = self.quotient_data(rep, k)
        if not all(intertwiner.values()):
            system_logger.warning(f"Intertwiner check failed for p = {p}: {intertwiner}")

        return ExactSequenceWitness(
            p=str(p),
            applicable=True,
            k=k,
            sub_parameter=str(sub_parameter),
            quotient_hw=quotient.weight[0],
            quotient_dim=quotient.dim,
            intertwiner=intertwiner,
        )

    @staticmethod
    def isomorphism_test(p: Polynomial, other: Polynomial) -> bool:
        """M(p) and M(other) are isomorphic iff the parameters are equal."""
        if p.n != other.n:
            raise DimensionMismatch(p.n, other.n)
        return p == other


# Create a singleton instance
structure_analyzer = StructureAnalyzer()
