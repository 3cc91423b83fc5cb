import itertools

import pytest
from sympy import Rational

from app.errors import IndexOutOfRange
from app.lie.sl import (
    E,
    H,
    SL2_H,
    SL2_X,
    SL2_Y,
    LieCombination,
    Sl2Algebra,
    SlAlgebra,
    basis_pairs,
    parse_basis_element,
)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_h_acts_diagonally_on_x(n):
    algebra = SlAlgebra(n)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            expected = LieCombination.of(E(j, n + 1)) if i == j else LieCombination()
            assert algebra.bracket(H(i), E(j, n + 1)) == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_x_against_lowering(n):
    algebra = SlAlgebra(n)
    for i in range(1, n + 1):
        expected = algebra.h_bar() + LieCombination.of(H(i))
        assert algebra.bracket(E(i, n + 1), E(n + 1, i)) == expected


def test_disjoint_indices_commute():
    assert SlAlgebra(4).bracket(E(1, 2), E(3, 4)).is_zero()


def test_basis_size_and_order():
    basis = SlAlgebra(2).basis()
    assert len(basis) == 8
    assert basis[0] == E(1, 2)
    assert basis[-2:] == [H(1), H(2)]
    assert len(basis_pairs(basis)) == 28


def test_index_validation():
    algebra = SlAlgebra(2)
    with pytest.raises(IndexOutOfRange):
        algebra.bracket(E(1, 4), H(1))
    with pytest.raises(IndexOutOfRange):
        algebra.bracket(H(3), H(1))
    with pytest.raises(IndexOutOfRange):
        algebra.validate(E(2, 2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_antisymmetry_and_jacobi(n):
    algebra = SlAlgebra(n)
    basis = algebra.basis()
    for a, b in itertools.product(basis, repeat=2):
        assert algebra.bracket(a, b) == -algebra.bracket(b, a)
    for a, b, c in itertools.combinations(basis, 3):
        total = (
            algebra.bracket_combinations(LieCombination.of(a), algebra.bracket(b, c))
            + algebra.bracket_combinations(LieCombination.of(b), algebra.bracket(c, a))
            + algebra.bracket_combinations(LieCombination.of(c), algebra.bracket(a, b))
        )
        assert total.is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_bracket_matches_matrix_commutator(n):
    algebra = SlAlgebra(n)
    for a, b in itertools.product(algebra.basis(), repeat=2):
        A, B = algebra.defining_matrix(a), algebra.defining_matrix(b)
        assert A * B - B * A == algebra.defining_matrix(algebra.bracket(a, b))


def test_h_is_traceless():
    algebra = SlAlgebra(3)
    matrix = algebra.defining_matrix(H(2))
    assert matrix.trace() == 0
    assert matrix[1, 1] == Rational(3, 4)


def test_sl2_table():
    algebra = Sl2Algebra()
    assert algebra.bracket(SL2_H, SL2_X) == LieCombination.of(SL2_X, 2)
    assert algebra.bracket(SL2_H, SL2_Y) == LieCombination.of(SL2_Y, -2)
    assert algebra.bracket(SL2_X, SL2_Y) == LieCombination.of(SL2_H)
    assert algebra.bracket(SL2_Y, SL2_X) == LieCombination.of(SL2_H, -1)
    assert len(basis_pairs(algebra.basis())) == 3


def test_parse_basis_element():
    assert parse_basis_element("e(3,1)") == E(3, 1)
    assert parse_basis_element(" h( 2 ) ") == H(2)
    assert str(E(3, 1)) == "e(3,1)"
    with pytest.raises(ValueError):
        parse_basis_element("f(1,2)")
