import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from app.algebra.polynomial import Polynomial
from app.algebra.weyl import WeylElement

SEED = 20240611

settings.register_profile(
    "exact",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def exponents(n, max_degree):
    return st.lists(st.integers(0, max_degree), min_size=n, max_size=n).filter(
        lambda exps: sum(exps) <= max_degree
    ).map(tuple)


def polynomials(n, max_degree=3, max_terms=4):
    return st.dictionaries(exponents(n, max_degree), coefficients, max_size=max_terms).map(
        lambda terms: Polynomial(n, terms)
    )


def weyl_elements(n, max_degree=2, max_order=2, max_terms=3):
    keys = st.tuples(exponents(n, max_degree), exponents(n, max_order))
    return st.dictionaries(keys, coefficients, max_size=max_terms).map(lambda terms: WeylElement(n, terms))


def random_polynomial(rng: random.Random, n: int, max_degree: int, terms: int = 4) -> Polynomial:
    """Seeded sample used by the fixed-size acceptance grids."""
    out = {}
    for _ in range(terms):
        exps = [0] * n
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(n)] += 1
        out[tuple(exps)] = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
    return Polynomial(n, out)


@pytest.fixture
def rng():
    return random.Random(SEED)
