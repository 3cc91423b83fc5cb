"""
Symbolic sl(n+1) and sl_2 with exact structure constants.

sl(n+1) uses the basis {E(i,j) : i != j} together with H(1..n), where
H(i) = e_ii - I/(n+1). Brackets are computed through gl(n+1) matrix units

    [e_ij, e_kl] = delta_jk e_il - delta_li e_kj

and any diagonal result diag(d) is rewritten as sum_l (d_l - d_{n+1}) H(l).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from sympy import Matrix, Rational, eye, zeros

from app.errors import IndexOutOfRange
from app.utils import format_rational, system_logger

Scalar = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class LieBasisElement:
    """E(i, j) with kind 'e', or H(i) with kind 'h' and j = 0."""

    kind: str
    i: int
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "e":
            return f"e({self.i},{self.j})"
        return f"h({self.i})"


def E(i: int, j: int) -> LieBasisElement:
    return LieBasisElement("e", i, j)


def H(i: int) -> LieBasisElement:
    return LieBasisElement("h", i)


@dataclass(frozen=True, order=True)
class Sl2BasisElement:
    """One of the sl_2 generators h, x, y."""

    name: str

    def __str__(self) -> str:
        return self.name


SL2_H = Sl2BasisElement("h")
SL2_X = Sl2BasisElement("x")
SL2_Y = Sl2BasisElement("y")

BasisElement = Union[LieBasisElement, Sl2BasisElement]


class LieCombination:
    """Finite rational combination of basis elements."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[BasisElement, Scalar]] = None):
        self._terms: Dict[BasisElement, Fraction] = {}
        for element, coeff in (terms or {}).items():
            value = self._terms.get(element, Fraction(0)) + Fraction(coeff)
            if value == 0:
                self._terms.pop(element, None)
            else:
                self._terms[element] = value

    @classmethod
    def of(cls, element: BasisElement, coeff: Scalar = 1) -> "LieCombination":
        return cls({element: coeff})

    def items(self) -> List[Tuple[BasisElement, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, element: BasisElement) -> Fraction:
        return self._terms.get(element, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __contains__(self, element: BasisElement) -> bool:
        return element in self._terms

    def __add__(self, other: "LieCombination") -> "LieCombination":
        merged = dict(self._terms)
        for element, coeff in other._terms.items():
            merged[element] = merged.get(element, Fraction(0)) + coeff
        return LieCombination(merged)

    def __neg__(self) -> "LieCombination":
        return LieCombination({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LieCombination") -> "LieCombination":
        return self + (-other)

    def scale(self, factor: Scalar) -> "LieCombination":
        return LieCombination({e: c * Fraction(factor) for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieCombination):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for element, coeff in self.items():
            parts.append(str(element) if coeff == 1 else f"{format_rational(coeff)}*{element}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LieCombination({str(self)!r})"


class SlAlgebra:
    """sl(n+1) in the fixed basis E(i,j), H(i)."""

    def __init__(self, n: int):
        if n < 1:
            raise IndexOutOfRange(n, 1, 10**9, what="rank parameter")
        system_logger.debug(f"Initializing sl({n + 1})")
        self.n = n
        self.name = f"sl({n + 1})"

    def basis(self) -> List[LieBasisElement]:
        size = self.n + 1
        elements = [E(i, j) for i in range(1, size + 1) for j in range(1, size + 1) if i != j]
        elements.extend(H(i) for i in range(1, self.n + 1))
        return sorted(elements)

    def validate(self, a: LieBasisElement) -> LieBasisElement:
        size = self.n + 1
        if not isinstance(a, LieBasisElement):
            raise TypeError(f"{a!r} is not an sl(n+1) basis element")
        if a.kind == "e":
            for index in (a.i, a.j):
                if index < 1 or index > size:
                    raise IndexOutOfRange(index, 1, size, what=f"index of {a}")
            if a.i == a.j:
                raise IndexOutOfRange(a.j, 1, size, what=f"off-diagonal index of {a}")
        elif a.kind == "h":
            if a.i < 1 or a.i > self.n:
                raise IndexOutOfRange(a.i, 1, self.n, what="index of h")
        else:
            raise ValueError(f"unknown basis kind {a.kind!r}")
        return a

    def _units(self, a: LieBasisElement) -> Dict[Tuple[int, int], Fraction]:
        # H(i) acts as e_ii; the identity part is central
        if a.kind == "e":
            return {(a.i, a.j): Fraction(1)}
        return {(a.i, a.i): Fraction(1)}

    def _from_units(self, units: Dict[Tuple[int, int], Fraction]) -> LieCombination:
        size = self.n + 1
        terms: Dict[LieBasisElement, Fraction] = {}
        diagonal = [Fraction(0)] * (size + 1)
        for (i, j), coeff in units.items():
            if coeff == 0:
                continue
            if i == j:
                diagonal[i] += coeff
            else:
                terms[E(i, j)] = terms.get(E(i, j), Fraction(0)) + coeff
        for l in range(1, self.n + 1):
            weight = diagonal[l] - diagonal[size]
            if weight:
                terms[H(l)] = weight
        return LieCombination(terms)

    def bracket(self, a: LieBasisElement, b: LieBasisElement) -> LieCombination:
        """[a, b] expanded in the fixed basis."""
        self.validate(a)
        self.validate(b)
        units: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), ca in self._units(a).items():
            for (k, l), cb in self._units(b).items():
                if j == k:
                    units[(i, l)] = units.get((i, l), Fraction(0)) + ca * cb
                if l == i:
                    units[(k, j)] = units.get((k, j), Fraction(0)) - ca * cb
        return self._from_units(units)

    def bracket_combinations(self, a: LieCombination, b: LieCombination) -> LieCombination:
        total = LieCombination()
        for ea, ca in a.items():
            for eb, cb in b.items():
                total = total + self.bracket(ea, eb).scale(ca * cb)
        return total

    def h_bar(self) -> LieCombination:
        return LieCombination({H(i): 1 for i in range(1, self.n + 1)})

    def x(self, i: int) -> LieBasisElement:
        """The abelian generator x_i = E(i, n+1)."""
        return self.validate(E(i, self.n + 1))

    def defining_matrix(self, a: Union[LieBasisElement, LieCombination]) -> Matrix:
        """The (n+1)x(n+1) matrix of a in the defining representation."""
        size = self.n + 1
        if isinstance(a, LieCombination):
            total = zeros(size, size)
            for element, coeff in a.items():
                total += self.defining_matrix(element) * Rational(coeff.numerator, coeff.denominator)
            return total
        self.validate(a)
        matrix = zeros(size, size)
        if a.kind == "e":
            matrix[a.i - 1, a.j - 1] = 1
            return matrix
        matrix[a.i - 1, a.i - 1] = 1
        return matrix - eye(size) * Rational(1, size)

    def parse_element(self, text: str) -> LieBasisElement:
        return self.validate(parse_basis_element(text))


class Sl2Algebra:
    """sl_2 with [h, x] = 2x, [h, y] = -2y, [x, y] = h."""

    _TABLE = {
        (SL2_H, SL2_X): {SL2_X: 2},
        (SL2_H, SL2_Y): {SL2_Y: -2},
        (SL2_X, SL2_Y): {SL2_H: 1},
    }

    def __init__(self):
        self.name = "sl(2)"

    def basis(self) -> List[Sl2BasisElement]:
        return sorted([SL2_H, SL2_X, SL2_Y])

    def validate(self, a: Sl2BasisElement) -> Sl2BasisElement:
        if a not in (SL2_H, SL2_X, SL2_Y):
            raise ValueError(f"{a!r} is not an sl_2 generator")
        return a

    def bracket(self, a: Sl2BasisElement, b: Sl2BasisElement) -> LieCombination:
        self.validate(a)
        self.validate(b)
        if (a, b) in self._TABLE:
            return LieCombination(self._TABLE[(a, b)])
        if (b, a) in self._TABLE:
            return LieCombination(self._TABLE[(b, a)]).scale(-1)
        return LieCombination()

    def parse_element(self, text: str) -> Sl2BasisElement:
        return self.validate(Sl2BasisElement(text.strip()))


_ELEMENT_RE = re.compile(r"^\s*(?:e\(\s*(\d+)\s*,\s*(\d+)\s*\)|h\(\s*(\d+)\s*\))\s*$")


def parse_basis_element(text: str) -> LieBasisElement:
    """Read "e(i,j)" or "h(i)"."""
    match = _ELEMENT_RE.match(text)
    if match is None:
        raise ValueError(f"expected e(i,j) or h(i), got {text!r}")
    if match.group(3) is not None:
        return H(int(match.group(3)))
    return E(int(match.group(1)), int(match.group(2)))


def basis_pairs(elements: Iterable[BasisElement]) -> List[Tuple[BasisElement, BasisElement]]:
    """Unordered pairs of distinct basis elements in sorted order."""
    ordered = sorted(elements)
    return [(a, b) for index, a in enumerate(ordered) for b in ordered[index + 1:]]
