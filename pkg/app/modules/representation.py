"""
Construction of the free rank-one modules M(p) over sl(n+1) and V(p) over sl_2.

Everything is determined by the action of the generators on 1:

    p_ij = x_i dp/dx_j + delta_ij p(0)/n
    q_i  = -(1/x_i) int_0^{x_i} sum_r (p_ii^r p_ri + x_r p_ii^{ir} + p_ii^i p_rr) dx_i

and the Weyl realization

    E(i,n+1) -> x_i
    H(i)     -> p_ii + x_i D_i
    E(i,j)   -> p_ij + x_i D_j
    E(n+1,i) -> q_i - sum_r (p_ri D_r + p_rr D_i + x_r D_i D_r)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple, Union

from app.algebra.polynomial import Polynomial, check_index
from app.algebra.weyl import WeylElement
from app.errors import DimensionMismatch, IndexOutOfRange
from app.lie.sl import (
    E,
    H,
    SL2_H,
    SL2_X,
    SL2_Y,
    BasisElement,
    LieCombination,
    Sl2Algebra,
    SlAlgebra,
)
from app.utils import system_logger, time_operation

PijTable = Dict[Tuple[int, int], Polynomial]
QiTable = Dict[int, Polynomial]


@dataclass
class Representation:
    """A Lie algebra acting on K[x_1..x_n] through Weyl operators."""

    n: int
    p: Polynomial
    algebra: Union[SlAlgebra, Sl2Algebra]
    pij: PijTable
    qi: QiTable
    rho: Dict[BasisElement, WeylElement] = field(default_factory=dict)

    @property
    def is_sl2(self) -> bool:
        return isinstance(self.algebra, Sl2Algebra)

    def act(self, element: BasisElement, f: Polynomial) -> Polynomial:
        """Apply rho(element) to f."""
        self.algebra.validate(element)
        if f.n != self.n:
            raise DimensionMismatch(self.n, f.n)
        return self.rho[element].apply(f)

    def image(self, combination: LieCombination) -> WeylElement:
        """rho extended linearly."""
        total = WeylElement.zero(self.n)
        for element, coeff in combination.items():
            total = total + self.rho[element].scale(coeff)
        return total

    def generators_on_one(self) -> Tuple[PijTable, QiTable]:
        """Recompute the p_ij and q_i tables from the operators."""
        one = Polynomial.constant(self.n, 1)
        if self.is_sl2:
            return {(1, 1): self.rho[SL2_H].apply(one)}, {1: self.rho[SL2_Y].apply(one)}
        pij = {}
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                element = H(i) if i == j else E(i, j)
                pij[(i, j)] = self.rho[element].apply(one)
        qi = {i: self.rho[E(self.n + 1, i)].apply(one) for i in range(1, self.n + 1)}
        return pij, qi


class RepresentationBuilder:
    """Builds representations from a parameter polynomial or from generator tables."""

    def __init__(self):
        system_logger.info("Initializing RepresentationBuilder")

    @staticmethod
    def _check_rank(p: Polynomial, n: Optional[int]) -> int:
        if n is None:
            return p.n
        if n < 1:
            raise IndexOutOfRange(n, 1, 10**9, what="rank parameter")
        if p.n != n:
            raise DimensionMismatch(n, p.n)
        return n

    def build_pij(self, p: Polynomial, i: int, j: int, n: Optional[int] = None) -> Polynomial:
        n = self._check_rank(p, n)
        check_index(n, i)
        check_index(n, j)
        value = Polynomial.variable(n, i) * p.differentiate(j)
        if i == j:
            value = value + p.evaluate_at_zero() / n
        return value

    def build_pij_table(self, p: Polynomial, n: Optional[int] = None) -> PijTable:
        n = self._check_rank(p, n)
        return {
            (i, j): self.build_pij(p, i, j, n)
            for i in range(1, n + 1)
            for j in range(1, n + 1)
        }

    @staticmethod
    def q_from_table(pij: Mapping[Tuple[int, int], Polynomial], i: int, n: int) -> Polynomial:
        """q_i from a p_ij table: build the integrand, integrate from 0, divide by x_i, negate."""
        check_index(n, i)
        pii = pij[(i, i)]
        integrand = Polynomial.zero(n)
        for r in range(1, n + 1):
            x_r = Polynomial.variable(n, r)
            integrand = (
                integrand
                + pii.differentiate(r) * pij[(r, i)]
                + x_r * pii.differentiate(i).differentiate(r)
                + pii.differentiate(i) * pij[(r, r)]
            )
        return -integrand.integrate_from_zero(i).exact_divide_by_var(i)

    def build_qi(self, p: Polynomial, i: int, n: Optional[int] = None) -> Polynomial:
        n = self._check_rank(p, n)
        return self.q_from_table(self.build_pij_table(p, n), i, n)

    def build_q_sl2(self, p: Polynomial) -> Polynomial:
        """q = -(1/2x) int_0^x (p p' + t p'') dt."""
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        derivative = p.differentiate(1)
        integrand = p * derivative + Polynomial.variable(1, 1) * derivative.differentiate(1)
        return -integrand.integrate_from_zero(1).exact_divide_by_var(1).scale(Fraction(1, 2))

    def from_tables(self, n: int, pij: Mapping[Tuple[int, int], Polynomial],
                    qi: Mapping[int, Polynomial], p: Optional[Polynomial] = None) -> Representation:
        """Realize generator tables as Weyl operators."""
        algebra = SlAlgebra(n)
        x = [None] + [WeylElement.x(n, r) for r in range(1, n + 1)]
        d = [None] + [WeylElement.partial(n, r) for r in range(1, n + 1)]
        rho: Dict[BasisElement, WeylElement] = {}
        for i in range(1, n + 1):
            rho[E(i, n + 1)] = x[i]
            rho[H(i)] = pij[(i, i)] + x[i] * d[i]
            for j in range(1, n + 1):
                if i != j:
                    rho[E(i, j)] = pij[(i, j)] + x[i] * d[j]
            lowering = WeylElement.multiplication(qi[i])
            for r in range(1, n + 1):
                lowering = lowering - (pij[(r, i)] * d[r] + pij[(r, r)] * d[i] + x[r] * d[i] * d[r])
            rho[E(n + 1, i)] = lowering
        parameter = p if p is not None else Polynomial.zero(n)
        return Representation(n=n, p=parameter, algebra=algebra, pij=dict(pij), qi=dict(qi), rho=rho)

    @time_operation
    def build_rep(self, n: int, p: Polynomial) -> Representation:
        n = self._check_rank(p, n)
        system_logger.debug(f"Building M({p}) over sl({n + 1})")
        pij = self.build_pij_table(p, n)
        qi = {i: self.q_from_table(pij, i, n) for i in range(1, n + 1)}
        return self.from_tables(n, pij, qi, p)

    @time_operation
    def build_rep_sl2(self, p: Polynomial) -> Representation:
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        q = self.build_q_sl2(p)
        x = WeylElement.x(1, 1)
        d = WeylElement.partial(1, 1)
        rho = {
            SL2_X: x,
            SL2_H: p + x * d * 2,
            SL2_Y: q - p * d - x * d * d,
        }
        return Representation(n=1, p=p, algebra=Sl2Algebra(), pij={(1, 1): p}, qi={1: q}, rho=rho)

    def sl2_bridge_parameter(self, p: Polynomial) -> Polynomial:
        """
        The sl_2 parameter matching M(p) over sl(1+1).

        Under x = E(1,2), y = E(2,1), h = 2 H(1), build_rep(1, p) equals
        build_rep_sl2(2 p_11) = build_rep_sl2(2(x p' + p(0))). This is 2p
        exactly when p is affine.
        """
        if p.n != 1:
            raise DimensionMismatch(1, p.n)
        return self.build_pij(p, 1, 1, 1).scale(2)

    def bridge_images(self, rep: Representation) -> Dict[BasisElement, WeylElement]:
        """The sl_2 generators inside an sl(1+1) representation."""
        if rep.n != 1 or rep.is_sl2:
            raise ValueError("bridge needs an sl(1+1) representation")
        return {SL2_X: rep.rho[E(1, 2)], SL2_Y: rep.rho[E(2, 1)], SL2_H: rep.rho[H(1)].scale(2)}

    def perturb(self, rep: Representation, element: BasisElement, delta: Polynomial) -> Representation:
        """Copy of rep whose generator acts with delta added to its value on 1."""
        rep.algebra.validate(element)
        rho = dict(rep.rho)
        rho[element] = rho[element] + delta
        pij = dict(rep.pij)
        qi = dict(rep.qi)
        if rep.is_sl2:
            if element == SL2_H:
                pij[(1, 1)] = pij[(1, 1)] + delta
            elif element == SL2_Y:
                qi[1] = qi[1] + delta
        elif element.kind == "h":
            pij[(element.i, element.i)] = pij[(element.i, element.i)] + delta
        elif element.i == rep.n + 1:
            qi[element.j] = qi[element.j] + delta
        elif element.j != rep.n + 1:
            pij[(element.i, element.j)] = pij[(element.i, element.j)] + delta
        system_logger.debug(f"Perturbed {element} by {delta}")
        return Representation(n=rep.n, p=rep.p, algebra=rep.algebra, pij=pij, qi=qi, rho=rho)

    def relhq_residuals(self, n: int, pij: Mapping[Tuple[int, int], Polynomial],
                        qi: Mapping[int, Polynomial]) -> Dict[Tuple[int, int], Polynomial]:
        """
        x_k q_i^k + delta_ki q_i + sum_r (p_kk^r p_ri + x_r p_kk^{ir} + p_kk^i p_rr) for all i, k.

        All residuals vanish exactly when the q_i are consistent with the p_ij.
        """
        residuals = {}
        for i in range(1, n + 1):
            for k in range(1, n + 1):
                pkk = pij[(k, k)]
                value = Polynomial.variable(n, k) * qi[i].differentiate(k)
                if k == i:
                    value = value + qi[i]
                for r in range(1, n + 1):
                    value = (
                        value
                        + pkk.differentiate(r) * pij[(r, i)]
                        + Polynomial.variable(n, r) * pkk.differentiate(i).differentiate(r)
                        + pkk.differentiate(i) * pij[(r, r)]
                    )
                residuals[(i, k)] = value
        return residuals


# Create a singleton instance
representation_builder = RepresentationBuilder()
