import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.algebra.parser import parse_polynomial
from app.algebra.polynomial import Polynomial, monomials_of_degree
from app.algebra.weyl import WeylElement
from app.errors import DimensionMismatch, IndexOutOfRange
from app.lie.sl import E, H, SL2_H, SL2_X, SL2_Y
from app.modules.representation import representation_builder as builder
from app.modules.verification import RepresentationVerifier, verify_representation
from conftest import SEED, polynomials, random_polynomial


def P(text, n):
    return parse_polynomial(text, n)


def all_monomials(n, max_degree):
    for degree in range(max_degree + 1):
        for monomial in monomials_of_degree(n, degree):
            yield Polynomial.monomial(monomial)


class TestGeneratorTables:
    def test_pij_examples(self):
        assert builder.build_pij(P("x1^2*x2", 2), 1, 2, 2) == P("x1^3", 2)
        assert builder.build_pij(P("x1", 2), 2, 1, 2) == P("x2", 2)
        c = P("5", 3)
        assert builder.build_pij(c, 2, 2, 3) == P("5/3", 3)
        assert builder.build_pij(c, 1, 2, 3).is_zero()

    def test_pij_index_checks(self):
        with pytest.raises(IndexOutOfRange):
            builder.build_pij(P("x1", 2), 3, 1, 2)
        with pytest.raises(DimensionMismatch):
            builder.build_pij(P("x1", 2), 1, 1, 3)

    def test_qi_examples(self):
        p = P("x1", 2)
        assert builder.build_qi(p, 1, 2) == P("-x1", 2)
        assert builder.build_qi(p, 2, 2).is_zero()
        assert all(builder.build_qi(P("3/2", 3), i, 3).is_zero() for i in (1, 2, 3))

    def test_q_sl2_examples(self):
        assert builder.build_q_sl2(P("4", 1)).is_zero()
        assert builder.build_q_sl2(P("x1", 1)) == P("-1/4*x1", 1)
        assert builder.build_q_sl2(P("x1^2", 1)) == P("-1/4*x1^3 - 1/2*x1", 1)


class TestBuildRep:
    def test_zero_parameter_rank_one(self):
        rep = builder.build_rep(1, P("0", 1))
        x, d = WeylElement.x(1, 1), WeylElement.partial(1, 1)
        assert rep.rho[E(2, 1)] == -(x * d * d)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_constant_parameter_lowering(self, n):
        c = Fraction(7, 5)
        rep = builder.build_rep(n, Polynomial.constant(n, c))
        for i in range(1, n + 1):
            expected = WeylElement.partial(n, i).scale(-Fraction(n + 1, n) * c)
            for r in range(1, n + 1):
                expected = expected - WeylElement.x(n, r) * WeylElement.partial(n, i) * WeylElement.partial(n, r)
            assert rep.rho[E(n + 1, i)] == expected

    def test_h_for_linear_parameter(self):
        rep = builder.build_rep(2, P("x1", 2))
        assert rep.rho[H(1)] == P("x1", 2) + WeylElement.x(2, 1) * WeylElement.partial(2, 1)

    def test_generators_on_one_match_tables(self):
        p = P("x1^2*x2 - 3*x2 + 1/2", 2)
        rep = builder.build_rep(2, p)
        pij, qi = rep.generators_on_one()
        assert pij == rep.pij
        assert qi == rep.qi
        for i in (1, 2):
            assert rep.act(E(i, 3), P("1", 2)) == Polynomial.variable(2, i)


class TestVerification:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_monomial_parameters(self, n):
        for p in all_monomials(n, 3):
            report = verify_representation(builder.build_rep(n, p))
            assert report.failures == [], str(p)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_random_parameters(self, n):
        rng = random.Random(SEED + n)
        for _ in range(20):
            p = random_polynomial(rng, n, 4)
            assert verify_representation(builder.build_rep(n, p)).passed, str(p)

    def test_pair_count(self):
        report = verify_representation(builder.build_rep(2, P("x1^2*x2", 2)))
        assert report.pairs_checked == 28
        assert report.algebra == "sl(3)"

    def test_parallel_report_is_identical(self):
        rep = builder.perturb(builder.build_rep(2, P("x1*x2 + 1", 2)), E(3, 1), P("1", 2))
        serial = RepresentationVerifier(jobs=1).verify(rep)
        parallel = RepresentationVerifier(jobs=4).verify(rep)
        assert serial.to_json() == parallel.to_json()
        assert serial.failures

    def test_perturbed_lowering_fails_at_h(self):
        rep = builder.build_rep(1, P("0", 1))
        broken = builder.perturb(rep, E(2, 1), P("1", 1))
        assert broken.qi[1] == P("1", 1)
        failing = {(f.a, f.b) for f in verify_representation(broken).failures}
        assert ("h(1)", "e(2,1)") in {(b, a) for a, b in failing} | failing

    def test_mutations_are_detected(self):
        rng = random.Random(SEED)
        samples = [(1, 3), (1, 2), (2, 2), (2, 3), (3, 1), (1, 4), (2, 1), (3, 2), (2, 2), (1, 1)]
        for n, degree in samples:
            rep = builder.build_rep(n, random_polynomial(rng, n, degree))
            targets = [H(i) for i in range(1, n + 1)]
            targets += [E(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
            targets += [E(n + 1, i) for i in range(1, n + 1)]
            for element in targets:
                broken = builder.perturb(rep, element, Polynomial.constant(n, 1))
                failures = verify_representation(broken).failures
                assert failures, f"{element} in M({rep.p})"
                named = str(element)
                involved = [
                    f for f in failures
                    if named in (f.a, f.b) or element in rep.algebra.bracket(
                        rep.algebra.parse_element(f.a), rep.algebra.parse_element(f.b))
                ]
                assert involved, f"{element} in M({rep.p})"

    @given(polynomials(1, max_degree=4))
    @settings(max_examples=20)
    def test_sl2_parameters(self, p):
        assert verify_representation(builder.build_rep_sl2(p)).passed


class TestSl2:
    @pytest.mark.parametrize("lam", [Fraction(0), Fraction(3), Fraction(-2), Fraction(5, 3), Fraction(-7, 2)])
    def test_verma_formulas(self, lam):
        rep = builder.build_rep_sl2(Polynomial.constant(1, lam))
        for k in range(11):
            xk = Polynomial.monomial((k,))
            assert rep.act(SL2_H, xk) == xk.scale(lam + 2 * k)
            lowered = Polynomial.monomial((k - 1,)).scale(-k * (lam + k - 1)) if k else Polynomial.zero(1)
            assert rep.act(SL2_Y, xk) == lowered
            assert rep.act(SL2_X, xk) == Polynomial.monomial((k + 1,))

    def test_bridge_for_affine_parameter_is_doubling(self):
        p = P("3*x1 - 1/2", 1)
        assert builder.sl2_bridge_parameter(p) == p.scale(2)

    def test_bridge_parameter_for_quadratic(self):
        assert builder.sl2_bridge_parameter(P("x1^2 + 1", 1)) == P("4*x1^2 + 2", 1)

    def test_bridge_identity(self):
        rng = random.Random(SEED)
        for _ in range(20):
            p = random_polynomial(rng, 1, 4)
            sl2 = builder.build_rep_sl2(builder.sl2_bridge_parameter(p))
            images = builder.bridge_images(builder.build_rep(1, p))
            for element in (SL2_X, SL2_Y, SL2_H):
                assert sl2.rho[element] == images[element], f"{element} for p = {p}"


class TestRelations:
    @given(polynomials(2))
    def test_relhq_vanishes(self, p):
        rep = builder.build_rep(2, p)
        residuals = builder.relhq_residuals(2, rep.pij, rep.qi)
        assert all(r.is_zero() for r in residuals.values())

    @given(polynomials(2, max_degree=2), polynomials(2, max_degree=5), polynomials(2, max_degree=3), st.integers(1, 2))
    def test_commutation_through_products(self, p, f, g, i):
        n = 2
        rep = builder.build_rep(n, p)
        lowering = rep.rho[E(n + 1, i)]
        expected = f * lowering.apply(g)
        for k in range(1, n + 1):
            if k != i:
                expected = expected - f.differentiate(k) * rep.rho[E(k, i)].apply(g)
        h_term = rep.image(rep.algebra.h_bar()) + rep.rho[H(i)]
        expected = expected - f.differentiate(i) * h_term.apply(g)
        expected = expected - f.differentiate(i).degree_operator() * g
        assert lowering.apply(f * g) == expected

    @given(polynomials(2, max_degree=2), polynomials(2, max_degree=4), polynomials(2, max_degree=3))
    def test_multiplication_rules_for_raising_generators(self, p, f, g):
        n = 2
        rep = builder.build_rep(n, p)
        for i, j in itertools.product(range(1, n + 1), repeat=2):
            element = H(i) if i == j else E(i, j)
            x_i = Polynomial.variable(n, i)
            assert rep.act(element, f * g) == f * rep.act(element, g) + x_i * f.differentiate(j) * g
