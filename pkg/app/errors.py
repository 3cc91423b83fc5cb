"""
Exception hierarchy for the algebra engine.

Failures that are part of a computed answer (failing bracket pairs,
inconsistent generator tables, a decomposition that cannot be certified)
are reported as data; only misuse and impossible requests raise.
"""

from typing import Any, Dict, Optional, Tuple


class AlgebraError(Exception):
    """Base class for engine errors."""


class DimensionMismatch(AlgebraError):
    """Operands live in polynomial rings with different variable counts."""

    def __init__(self, left: int, right: int):
        super().__init__(f"variable count mismatch: {left} vs {right}")
        self.left = left
        self.right = right


class IndexOutOfRange(AlgebraError, IndexError):
    """A variable or Lie index lies outside its admissible range."""

    def __init__(self, index: Any, low: int, high: int, what: str = "index"):
        super().__init__(f"{what} {index} outside [{low}, {high}]")
        self.index = index
        self.low = low
        self.high = high


class NotDivisible(AlgebraError):
    """Exact division by x_i hit a monomial of i-degree zero."""

    def __init__(self, variable: int, monomial: Tuple[int, ...]):
        super().__init__(f"monomial {monomial} is not divisible by x{variable}")
        self.variable = variable
        self.monomial = monomial


class PolynomialSyntaxError(AlgebraError, ValueError):
    """The polynomial text does not match the grammar."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class UnknownVariable(PolynomialSyntaxError):
    """A variable index is zero or larger than the ring's variable count."""


class NotInvariant(AlgebraError):
    """The requested degree filtration piece is not a submodule."""

    def __init__(self, m: int):
        super().__init__(f"W_{m} is not invariant")
        self.m = m


class DegenerateSplit(AlgebraError):
    """
    The L(1) splitting cannot be certified because p(0) = 1.

    Carries the rank data measured on the attempted splitting.
    """

    def __init__(self, message: str, rank_data: Optional[Dict[str, int]] = None):
        super().__init__(message)
        self.rank_data = rank_data or {}
