import json
import random
from fractions import Fraction

import pytest

from app.algebra.parser import parse_polynomial
from app.algebra.polynomial import Polynomial, monomials_of_degree
from app.modules.classification import (
    Inconsistent,
    action_classifier,
    classify_from_action,
    load_tables,
    tables_from_payload,
)
from app.modules.representation import representation_builder as builder
from conftest import SEED, random_polynomial


def tables(n, p):
    rep = builder.build_rep(n, p)
    return rep.pij, rep.qi


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_round_trip_on_monomials(n):
    for degree in range(4):
        for monomial in monomials_of_degree(n, degree):
            p = Polynomial.monomial(monomial, Fraction(3, 2))
            assert classify_from_action(n, *tables(n, p)) == p


@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip_on_random_parameters(n):
    rng = random.Random(SEED * n)
    for _ in range(20):
        p = random_polynomial(rng, n, 4)
        assert classify_from_action(n, *tables(n, p)) == p


def test_constant_tables():
    n, c = 3, Fraction(5, 7)
    pij = {(i, j): Polynomial.constant(n, c / n if i == j else 0) for i in range(1, 4) for j in range(1, 4)}
    qi = {i: Polynomial.zero(n) for i in range(1, 4)}
    assert classify_from_action(n, pij, qi) == Polynomial.constant(n, c)


def test_perturbed_off_diagonal_violates_pij3():
    pij, qi = tables(2, parse_polynomial("x1^2*x2 + x2", 2))
    pij[(1, 2)] = pij[(1, 2)] + parse_polynomial("x2", 2)
    outcome = classify_from_action(2, pij, qi)
    assert isinstance(outcome, Inconsistent)
    assert outcome.equation == "pij3"


def test_perturbed_diagonal_violates_pii():
    pij, qi = tables(2, parse_polynomial("x1*x2", 2))
    pij[(1, 1)] = pij[(1, 1)] + parse_polynomial("x2", 2)
    assert classify_from_action(2, pij, qi).equation == "pii"


def test_perturbed_lowering_violates_relhq():
    pij, qi = tables(2, parse_polynomial("x1 + x2^2", 2))
    qi[2] = qi[2] + 1
    outcome = classify_from_action(2, pij, qi)
    assert outcome.equation == "relhq"


def test_missing_entries():
    pij, qi = tables(2, parse_polynomial("x1", 2))
    del qi[2]
    assert classify_from_action(2, pij, qi).equation == "tables"


def test_out_of_range_entries():
    pij, qi = tables(1, parse_polynomial("x1 + 2", 1))
    pij = dict(pij)
    pij[(2, 1)] = Polynomial.zero(1)
    outcome = classify_from_action(1, pij, qi)
    assert outcome.equation == "tables"
    assert "(2, 1)" in outcome.detail

    pij, qi = tables(1, parse_polynomial("x1 + 2", 1))
    qi = dict(qi)
    qi[3] = Polynomial.zero(1)
    assert classify_from_action(1, pij, qi).equation == "tables"


def test_report_and_file_loading(tmp_path):
    payload = {"n": 2, "pij": {"1,1": "x1 + 1/2", "1,2": "0", "2,1": "x2", "2,2": "1/2"}, "qi": {"1": "-x1 - 3/2", "2": "0"}}
    path = tmp_path / "tables.json"
    path.write_text(json.dumps(payload))
    n, pij, qi = load_tables(path)
    assert (n, pij) == (2, tables_from_payload(payload)[1])
    report = action_classifier.classify_report(n, pij, qi)
    assert report.consistent
    assert report.p == "x1 + 1"
