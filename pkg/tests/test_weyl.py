from math import factorial

import pytest
from hypothesis import given

from app.algebra.parser import parse_polynomial
from app.algebra.polynomial import Polynomial
from app.algebra.weyl import WeylElement, weyl_apply, weyl_commutator, weyl_multiply
from app.errors import DimensionMismatch
from conftest import polynomials, weyl_elements

x1 = WeylElement.x(1, 1)
d1 = WeylElement.partial(1, 1)


def test_canonical_commutation():
    assert d1 * x1 == x1 * d1 + 1
    assert x1 * d1 == WeylElement(1, {((1,), (1,)): 1})


def test_second_order_reordering():
    assert d1 * d1 * x1 == x1 * d1 * d1 + d1.scale(2)


def test_degree_operator_commutator():
    for n in range(1, 5):
        d = WeylElement.degree_operator(n)
        for i in range(1, n + 1):
            partial = WeylElement.partial(n, i)
            assert weyl_commutator(partial, d) == partial


def test_euler_raises_degree():
    assert weyl_commutator(x1 * d1, x1) == x1


@given(weyl_elements(2))
def test_self_commutator_vanishes(a):
    assert weyl_commutator(a, a).is_zero()


def test_apply_examples():
    assert weyl_apply(x1 * d1, parse_polynomial("x1^3", 1)) == parse_polynomial("3*x1^3", 1)
    x_1 = WeylElement.x(2, 1)
    d_2 = WeylElement.partial(2, 2)
    assert (x_1 * d_2).apply(parse_polynomial("x2^2", 2)) == parse_polynomial("2*x1*x2", 2)


def test_verma_highest_weight_action():
    lam = Polynomial.constant(1, 7)
    h = lam + x1 * d1 * 2
    for k in range(6):
        assert h.apply(Polynomial.monomial((k,))) == Polynomial.monomial((k,), 7 + 2 * k)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        weyl_multiply(x1, WeylElement.x(2, 1))
    with pytest.raises(DimensionMismatch):
        weyl_apply(x1, Polynomial.variable(2, 1))


def test_rendering():
    assert str(x1 * d1 * d1 - d1.scale(2) + 3) == "x1*D1^2 - 2*D1 + 3"
    assert str(WeylElement.zero(2)) == "0"


@given(weyl_elements(2), weyl_elements(2), polynomials(2, max_degree=6))
def test_product_composes_actions(a, b, f):
    assert (a * b).apply(f) == a.apply(b.apply(f))


@given(weyl_elements(2), weyl_elements(2), weyl_elements(2))
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(weyl_elements(1), weyl_elements(1), weyl_elements(1))
def test_jacobi(a, b, c):
    total = (
        weyl_commutator(a, weyl_commutator(b, c))
        + weyl_commutator(b, weyl_commutator(c, a))
        + weyl_commutator(c, weyl_commutator(a, b))
    )
    assert total.is_zero()


@given(weyl_elements(2, max_degree=2, max_order=2))
def test_operator_determined_by_low_degree_action(a):
    # Recover c * x^a * D^b from the action on x^b, lowest b first
    bound = a.order() + a.x_degree()
    rebuilt = WeylElement.zero(2)
    for total in range(bound + 1):
        for i in range(total + 1):
            b = (i, total - i)
            residual = (a - rebuilt).apply(Polynomial.monomial(b))
            scale = factorial(b[0]) * factorial(b[1])
            for mono, coeff in residual.terms.items():
                rebuilt = rebuilt + WeylElement(2, {(mono, b): coeff / scale})
    assert rebuilt == a
