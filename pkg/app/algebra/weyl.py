"""
The Weyl algebra A_n of differential operators with polynomial coefficients.

Elements are kept in normal form: sums of c * x^a * D^b with every x to the
left of every D. Products use the closed-form Leibniz expansion

    D_i^b x_i^c = sum_k C(b, k) * c!/(c-k)! * x_i^(c-k) D_i^(b-k)

applied per variable, so no rewriting loop is needed.
"""

from fractions import Fraction
from itertools import product
from math import comb, perm
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Tuple, Union

from app.algebra.polynomial import (
    Monomial,
    Polynomial,
    format_monomial,
    format_terms,
    check_index,
)
from app.errors import DimensionMismatch

WeylKey = Tuple[Monomial, Monomial]
Scalar = Union[int, Fraction]


def _leibniz(d_exps: Monomial, x_exps: Monomial):
    """Yield (x-part, D-part, coefficient) of D^d_exps * x^x_exps in normal form."""
    ranges = [range(min(b, c) + 1) for b, c in zip(d_exps, x_exps)]
    for ks in product(*ranges):
        coeff = 1
        for b, c, k in zip(d_exps, x_exps, ks):
            coeff *= comb(b, k) * perm(c, k)
        yield (
            tuple(c - k for c, k in zip(x_exps, ks)),
            tuple(b - k for b, k in zip(d_exps, ks)),
            coeff,
        )


class WeylElement:
    """Immutable normal-ordered differential operator in n variables."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping[WeylKey, Scalar]] = None):
        self.n = n
        clean: Dict[WeylKey, Fraction] = {}
        for (a, b), coeff in (terms or {}).items():
            a, b = tuple(a), tuple(b)
            if len(a) != n or len(b) != n:
                raise DimensionMismatch(n, max(len(a), len(b)))
            value = clean.get((a, b), Fraction(0)) + Fraction(coeff)
            if value == 0:
                clean.pop((a, b), None)
            else:
                clean[(a, b)] = value
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, n: int, terms: Dict[WeylKey, Fraction]) -> "WeylElement":
        element = cls.__new__(cls)
        element.n = n
        element._terms = {k: c for k, c in terms.items() if c != 0}
        element._hash = None
        return element

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> "WeylElement":
        return cls(n, {((0,) * n, (0,) * n): value})

    @classmethod
    def multiplication(cls, f: Polynomial) -> "WeylElement":
        """The operator of multiplication by f."""
        zero = (0,) * f.n
        return cls._from_clean(f.n, {(mono, zero): coeff for mono, coeff in f.terms.items()})

    @classmethod
    def x(cls, n: int, i: int) -> "WeylElement":
        return cls.multiplication(Polynomial.variable(n, i))

    @classmethod
    def partial(cls, n: int, i: int) -> "WeylElement":
        check_index(n, i)
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {((0,) * n, tuple(exps)): 1})

    @classmethod
    def degree_operator(cls, n: int) -> "WeylElement":
        """d = sum_r x_r D_r."""
        total = cls.zero(n)
        for r in range(1, n + 1):
            total = total + cls.x(n, r) * cls.partial(n, r)
        return total

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[WeylKey, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def order(self) -> int:
        """Highest total D-order; 0 for the zero operator."""
        return max((sum(b) for _, b in self._terms), default=0)

    def x_degree(self) -> int:
        return max((sum(a) for a, _ in self._terms), default=0)

    # -- algebra --------------------------------------------------------

    def _coerce(self, other) -> Optional["WeylElement"]:
        if isinstance(other, WeylElement):
            if other.n != self.n:
                raise DimensionMismatch(self.n, other.n)
            return other
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionMismatch(self.n, other.n)
            return WeylElement.multiplication(other)
        if isinstance(other, (int, Fraction)):
            return WeylElement.scalar(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for key, coeff in other._terms.items():
            out[key] = out.get(key, Fraction(0)) + coeff
        return WeylElement._from_clean(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "WeylElement":
        return WeylElement._from_clean(self.n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, factor: Scalar) -> "WeylElement":
        factor = Fraction(factor)
        return WeylElement._from_clean(self.n, {k: c * factor for k, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return weyl_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return weyl_multiply(other, self)

    def apply(self, f: Polynomial) -> Polynomial:
        return weyl_apply(self, f)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        ordered = sorted(
            self._terms.items(),
            key=lambda item: (sum(item[0][0]) + sum(item[0][1]), item[0][0] + item[0][1]),
            reverse=True,
        )
        rendered = []
        for (a, b), coeff in ordered:
            parts = [part for part in (format_monomial(a), format_monomial(b, prefix="D")) if part]
            rendered.append((coeff, "*".join(parts)))
        return format_terms(rendered)

    def __repr__(self) -> str:
        return f"WeylElement({self.n}, {str(self)!r})"


def weyl_multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    """Normal-ordered product a * b."""
    if a.n != b.n:
        raise DimensionMismatch(a.n, b.n)
    out: Dict[WeylKey, Fraction] = {}
    for (xa, da), ca in a.terms.items():
        for (xb, db), cb in b.terms.items():
            for x_part, d_part, coeff in _leibniz(da, xb):
                key = (
                    tuple(u + v for u, v in zip(xa, x_part)),
                    tuple(u + v for u, v in zip(d_part, db)),
                )
                out[key] = out.get(key, Fraction(0)) + ca * cb * coeff
    return WeylElement._from_clean(a.n, out)


def weyl_commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return weyl_multiply(a, b) - weyl_multiply(b, a)


def weyl_apply(a: WeylElement, f: Polynomial) -> Polynomial:
    """Apply the operator a to the polynomial f."""
    if a.n != f.n:
        raise DimensionMismatch(a.n, f.n)
    out: Dict[Monomial, Fraction] = {}
    for (xa, da), ca in a.terms.items():
        for mono, cf in f.terms.items():
            if any(m < d for m, d in zip(mono, da)):
                continue
            factor = 1
            for m, d in zip(mono, da):
                factor *= perm(m, d)
            key = tuple(m - d + x for m, d, x in zip(mono, da, xa))
            out[key] = out.get(key, Fraction(0)) + ca * cf * factor
    return Polynomial(a.n, out)
