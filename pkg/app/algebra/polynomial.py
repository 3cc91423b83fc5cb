"""
Exact multivariate polynomials over the rationals.

A polynomial in K[x_1..x_n] is a sparse map from exponent tuples to
nonzero Fraction coefficients. Variables are indexed from 1.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Tuple, Union

from app.errors import DimensionMismatch, IndexOutOfRange, NotDivisible
from app.utils import format_rational

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]


def monomials_of_degree(n: int, m: int) -> Iterator[Monomial]:
    """Yield every exponent tuple in n variables of total degree m."""
    if m < 0:
        return
    if n == 0:
        if m == 0:
            yield ()
        return
    for chosen in combinations_with_replacement(range(n), m):
        exps = [0] * n
        for var in chosen:
            exps[var] += 1
        yield tuple(exps)


def grlex_key(monomial: Monomial) -> Tuple[int, Monomial]:
    """Sort key; reverse=True gives descending graded-lex order with x1 > x2 > ..."""
    return (sum(monomial), monomial)


def format_monomial(monomial: Monomial, prefix: str = "x") -> str:
    """Render x1^2*x3 style text; empty string for the unit monomial."""
    parts = []
    for index, exp in enumerate(monomial, start=1):
        if exp == 0:
            continue
        parts.append(f"{prefix}{index}" if exp == 1 else f"{prefix}{index}^{exp}")
    return "*".join(parts)


def format_terms(terms: List[Tuple[Fraction, str]]) -> str:
    """Join (coefficient, monomial text) pairs in the canonical signed style."""
    if not terms:
        return "0"
    out = []
    for position, (coeff, mono) in enumerate(terms):
        sign = "-" if coeff < 0 else "+"
        magnitude = abs(coeff)
        if mono == "":
            body = format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{format_rational(magnitude)}*{mono}"
        if position == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class Polynomial:
    """Immutable element of K[x_1..x_n] with exact rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Mapping[Monomial, Scalar]] = None):
        if n < 1:
            raise IndexOutOfRange(n, 1, 10**9, what="variable count")
        self.n = n
        clean: Dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != n:
                raise DimensionMismatch(n, len(monomial))
            if any(exp < 0 for exp in monomial):
                raise ValueError(f"negative exponent in {monomial}")
            value = Fraction(coeff)
            if value != 0:
                clean[monomial] = clean.get(monomial, Fraction(0)) + value
                if clean[monomial] == 0:
                    del clean[monomial]
        self._terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def _from_clean(cls, n: int, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        poly = cls.__new__(cls)
        poly.n = n
        poly._terms = {mono: coeff for mono, coeff in terms.items() if coeff != 0}
        poly._hash = None
        return poly

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, value: Scalar) -> "Polynomial":
        return cls(n, {(0,) * n: value})

    @classmethod
    def variable(cls, n: int, i: int) -> "Polynomial":
        check_index(n, i)
        exps = [0] * n
        exps[i - 1] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, monomial: Monomial, coeff: Scalar = 1) -> "Polynomial":
        return cls(len(monomial), {tuple(monomial): coeff})

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(tuple(monomial), Fraction(0))

    def evaluate_at_zero(self) -> Fraction:
        """The constant term p(0)."""
        return self._terms.get((0,) * self.n, Fraction(0))

    constant_term = evaluate_at_zero

    def total_degree(self) -> int:
        """Largest total degree of a term; 0 for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=0)

    def sorted_terms(self) -> List[Tuple[Monomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    # -- ring operations ------------------------------------------------

    def _coerce(self, other) -> Optional["Polynomial"]:
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise DimensionMismatch(self.n, other.n)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for mono, coeff in other._terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coeff
        return Polynomial._from_clean(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._from_clean(self.n, {m: -c for m, c in self._terms.items()})

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

    def scale(self, factor: Scalar) -> "Polynomial":
        factor = Fraction(factor)
        if factor == 0:
            return Polynomial.zero(self.n)
        return Polynomial._from_clean(self.n, {m: c * factor for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(self.n, other.n)
        out: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return Polynomial._from_clean(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.constant(self.n, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- calculus -------------------------------------------------------

    def differentiate(self, i: int) -> "Polynomial":
        """Partial derivative with respect to x_i."""
        check_index(self.n, i)
        k = i - 1
        out: Dict[Monomial, Fraction] = {}
        for mono, coeff in self._terms.items():
            if mono[k] == 0:
                continue
            lowered = mono[:k] + (mono[k] - 1,) + mono[k + 1:]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * mono[k]
        return Polynomial._from_clean(self.n, out)

    def degree_operator(self, i: Optional[int] = None) -> "Polynomial":
        """
        Apply d_i = x_i * d/dx_i, or the total degree operator when i is None.

        On a monomial this multiplies by its i-degree (or total degree).
        """
        if i is not None:
            check_index(self.n, i)
        out = {}
        for mono, coeff in self._terms.items():
            weight = sum(mono) if i is None else mono[i - 1]
            out[mono] = coeff * weight
        return Polynomial._from_clean(self.n, out)

    def degree_section(self, i: Optional[int] = None) -> "Polynomial":
        """
        Section d' of the degree operator.

        Divides each monomial by its i-degree (or total degree); monomials of
        weight zero are kept unchanged, so d'(d(f)) = f - f(0) and
        d'(d(f) + f(0)) = f.
        """
        if i is not None:
            check_index(self.n, i)
        out = {}
        for mono, coeff in self._terms.items():
            weight = sum(mono) if i is None else mono[i - 1]
            out[mono] = coeff / weight if weight else coeff
        return Polynomial._from_clean(self.n, out)

    def integrate_from_zero(self, i: int) -> "Polynomial":
        """Antiderivative in x_i vanishing at x_i = 0."""
        check_index(self.n, i)
        k = i - 1
        out = {}
        for mono, coeff in self._terms.items():
            raised = mono[:k] + (mono[k] + 1,) + mono[k + 1:]
            out[raised] = coeff / (mono[k] + 1)
        return Polynomial._from_clean(self.n, out)

    def exact_divide_by_var(self, i: int) -> "Polynomial":
        """Divide by x_i; every monomial must contain x_i."""
        check_index(self.n, i)
        k = i - 1
        out = {}
        for mono, coeff in self._terms.items():
            if mono[k] == 0:
                raise NotDivisible(i, mono)
            out[mono[:k] + (mono[k] - 1,) + mono[k + 1:]] = coeff
        return Polynomial._from_clean(self.n, out)

    def multiply_by_var(self, i: int) -> "Polynomial":
        check_index(self.n, i)
        k = i - 1
        return Polynomial._from_clean(
            self.n, {m[:k] + (m[k] + 1,) + m[k + 1:]: c for m, c in self._terms.items()}
        )

    def zero_variable(self, i: int) -> "Polynomial":
        """Substitute x_i = 0."""
        check_index(self.n, i)
        return Polynomial._from_clean(
            self.n, {m: c for m, c in self._terms.items() if m[i - 1] == 0}
        )

    # -- gradings -------------------------------------------------------

    def low_part(self, m: int) -> "Polynomial":
        """Keep the terms of total degree < m."""
        return Polynomial._from_clean(self.n, {k: c for k, c in self._terms.items() if sum(k) < m})

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        return format_terms([(c, format_monomial(m)) for m, c in self.sorted_terms()])

    def __repr__(self) -> str:
        return f"Polynomial({self.n}, {str(self)!r})"


def check_index(n: int, i: int) -> None:
    if not isinstance(i, int) or i < 1 or i > n:
        raise IndexOutOfRange(i, 1, n, what="variable index")
