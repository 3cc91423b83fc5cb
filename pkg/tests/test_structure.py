from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.algebra.parser import parse_polynomial
from app.errors import DimensionMismatch, NotInvariant
from app.modules.representation import representation_builder as builder
from app.modules.structure import structure_analyzer as analyzer


def P(text, n):
    return parse_polynomial(text, n)


def with_constant(n, constant, text="x1"):
    return P(text, n) + Fraction(constant)


class TestPrediction:
    def test_reducible_rank_two(self):
        prediction = analyzer.predicted_reducibility(2, with_constant(2, Fraction(-2, 3)))
        assert not prediction.simple
        assert prediction.k == 1
        assert prediction.describe() == "ReducibleAt(1)"

    def test_negative_k_is_simple(self):
        prediction = analyzer.predicted_reducibility(2, P("1", 2))
        assert prediction.simple
        assert prediction.k == Fraction(-3, 2)

    def test_rank_one_reports_both_forms(self):
        prediction = analyzer.predicted_reducibility(1, P("0", 1))
        assert prediction.simple
        assert prediction.sl2_simple is False
        assert prediction.describe_sl2() == "ReducibleAt(1)"


class TestOracle:
    def test_zero_parameter(self):
        assert analyzer.minimal_invariant_degree(builder.build_rep(1, P("0", 1)), 10) == 1

    def test_negative_constant(self):
        assert analyzer.minimal_invariant_degree(builder.build_rep(1, P("-1", 1)), 10) == 3

    def test_no_submodule(self):
        rep = builder.build_rep(2, with_constant(2, Fraction(2, 3), "x1*x2"))
        assert analyzer.minimal_invariant_degree(rep, 8) is None

    def test_bound_validation(self):
        with pytest.raises(ValueError):
            analyzer.minimal_invariant_degree(builder.build_rep(1, P("0", 1)), 0)

    @pytest.mark.parametrize("twice_constant", [0, -1, -2, -3])
    def test_rank_one_matches_sl2_formula(self, twice_constant):
        p = with_constant(1, Fraction(twice_constant, 2), "x1^2")
        assert analyzer.minimal_invariant_degree(builder.build_rep(1, p), 10) == 1 - twice_constant

    @pytest.mark.parametrize("n", [2, 3])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_reducible_cases_report_discrepancies(self, n, k):
        constant = -Fraction(n, n + 1) * k
        p = with_constant(n, constant, "x1*x2 + x2")
        report = analyzer.analyze(builder.build_rep(n, p))
        assert report.predicted == f"ReducibleAt({k})"
        assert report.oracle_min_degree == k + 1
        assert report.agreement
        assert report.quotient.dim == report.quotient.rank
        assert any(f"W_{k + 1}" in note for note in report.notes)
        assert any("quotient dimension" in note for note in report.notes)

    def test_k_zero_boundary_disagrees(self):
        report = analyzer.analyze(builder.build_rep(2, P("x1", 2)))
        assert report.predicted == "Simple"
        assert report.oracle_min_degree == 1
        assert not report.agreement
        assert report.quotient.dim == 1

    @given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 5))
    def test_symbolic_check_matches_lowering_scalar(self, n, numerator, m):
        p = with_constant(n, Fraction(-numerator, n + 1), "x1^2")
        rep = builder.build_rep(n, p)
        assert analyzer.is_invariant(rep, m) == (analyzer.lowering_scalar(n, p, m) == 0)

    def test_single_filtration_piece_is_invariant(self):
        rep = builder.build_rep(2, with_constant(2, Fraction(-4, 3), "x2^2"))
        m = analyzer.minimal_invariant_degree(rep, 8)
        assert m == 3
        assert analyzer.is_invariant(rep, m)
        assert not analyzer.is_invariant(rep, m + 1)

    def test_default_bound(self):
        assert analyzer.default_bound(2, P("1", 2)) == 8
        assert analyzer.default_bound(1, P("-5", 1)) == 13


class TestQuotient:
    def test_rank_one_quotient(self):
        data = analyzer.quotient_data(builder.build_rep(1, P("-1", 1)), 3)
        assert data.dim == 3
        assert data.rank == 3
        assert data.weight == ["1"]

    def test_rank_two_quotients(self):
        trivial = analyzer.quotient_data(builder.build_rep(2, P("x1", 2)), 1)
        assert trivial.dim == 1
        assert trivial.weight == ["0", "0"]
        data = analyzer.quotient_data(builder.build_rep(2, with_constant(2, Fraction(-2, 3))), 2)
        assert data.dim == 3
        assert data.weight == ["2/3", "-1/3"]

    def test_not_invariant(self):
        with pytest.raises(NotInvariant):
            analyzer.quotient_data(builder.build_rep(1, P("5", 1)), 2)


class TestExactSequence:
    @pytest.mark.parametrize("text, k, sub", [
        ("0", 1, "2"),
        ("-1", 2, "3"),
        ("x1 - 2", 3, "x1 + 4"),
        ("x1^2 - 3", 4, "x1^2 + 5"),
    ])
    def test_witness(self, text, k, sub):
        p = P(text, 1)
        witness = analyzer.sl2_exact_sequence_witness(p)
        assert witness.applicable
        assert witness.k == k
        assert witness.sub_parameter == sub
        assert witness.quotient_dim == k
        assert witness.quotient_hw == str(-p.evaluate_at_zero())
        assert all(witness.intertwiner.values())

    def test_submodule_degree_matches_oracle(self):
        for constant in range(0, -5, -1):
            p = P("x1^2", 1) + constant
            k = analyzer.sl2_submodule_degree(p)
            assert k == 1 - constant
            assert analyzer.minimal_invariant_degree(builder.build_rep_sl2(p), 10) == k
        assert analyzer.sl2_submodule_degree(P("3", 1)) is None

    def test_not_applicable(self):
        witness = analyzer.sl2_exact_sequence_witness(P("5", 1))
        assert not witness.applicable
        assert witness.k is None
        assert not analyzer.sl2_exact_sequence_witness(P("1/2 + x1", 1)).applicable


class TestIsomorphism:
    def test_examples(self):
        assert analyzer.isomorphism_test(P("x1 + 1", 1), P("x1 + 1", 1))
        assert not analyzer.isomorphism_test(P("x1", 1), P("x1 + 1", 1))
        assert analyzer.isomorphism_test(P("x1*x2", 2), P("x2*x1", 2))
        with pytest.raises(DimensionMismatch):
            analyzer.isomorphism_test(P("x1", 1), P("x1", 2))
