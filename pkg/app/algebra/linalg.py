"""
Exact linear algebra over Q backed by sympy matrices.

Vectors are sparse dicts keyed by arbitrary hashable coordinates; they are
laid out over a shared, sorted coordinate index before reaching sympy.
"""

from fractions import Fraction
from typing import Dict, Hashable, List, Sequence, Tuple

from sympy import Matrix, Rational

SparseVector = Dict[Hashable, Fraction]


def to_rational(value) -> Rational:
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def coordinate_index(vectors: Sequence[SparseVector]) -> List[Hashable]:
    keys = set()
    for vector in vectors:
        keys.update(key for key, coeff in vector.items() if coeff != 0)
    return sorted(keys, key=repr)


def columns_matrix(vectors: Sequence[SparseVector], keys: Sequence[Hashable] = None) -> Matrix:
    """Matrix whose columns are the given vectors."""
    keys = list(keys) if keys is not None else coordinate_index(vectors)
    position = {key: row for row, key in enumerate(keys)}
    matrix = Matrix.zeros(len(keys), len(vectors))
    for column, vector in enumerate(vectors):
        for key, coeff in vector.items():
            if coeff != 0:
                matrix[position[key], column] = to_rational(coeff)
    return matrix


def rank(vectors: Sequence[SparseVector]) -> int:
    vectors = list(vectors)
    if not vectors or not coordinate_index(vectors):
        return 0
    return columns_matrix(vectors).rank()


def in_span(vectors: Sequence[SparseVector], target: SparseVector) -> bool:
    """True when target is a rational combination of vectors."""
    if not any(coeff != 0 for coeff in target.values()):
        return True
    if not vectors:
        return False
    return rank(list(vectors) + [target]) == rank(vectors)


def nullspace(vectors: Sequence[SparseVector]) -> List[List[Fraction]]:
    """
    Basis of the rational solutions c of sum_j c_j * vectors[j] = 0.

    Each basis element is a list of Fractions with one entry per vector.
    """
    if not vectors:
        return []
    keys = coordinate_index(vectors)
    if not keys:
        return [[Fraction(int(i == j)) for i in range(len(vectors))] for j in range(len(vectors))]
    basis = columns_matrix(vectors, keys).nullspace()
    return [[to_fraction(entry) for entry in column] for column in basis]


def is_invertible(rows: Sequence[Sequence[Fraction]]) -> Tuple[bool, int]:
    """Invertibility of a square matrix, together with its rank."""
    size = len(rows)
    if size == 0:
        return True, 0
    matrix = Matrix([[to_rational(entry) for entry in row] for row in rows])
    if matrix.shape != (size, size):
        raise ValueError(f"matrix is not square: {matrix.shape}")
    measured = matrix.rank()
    return measured == size, measured
