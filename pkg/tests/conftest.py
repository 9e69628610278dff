import os
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from lcsalg.catalog import load_catalog
from lcsalg.liealg import KForm

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def rational_matrices(rows, cols):
    return st.lists(st.lists(small_rationals, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


SMALL_ENTRIES = [e for e in load_catalog() if e.dim <= 6]


@st.composite
def kforms(draw, dim, degree):
    from itertools import combinations
    coeffs = {}
    for idx in combinations(range(dim), degree):
        if draw(st.booleans()):
            coeffs[idx] = draw(st.integers(-3, 3))
    return KForm(dim, degree, coeffs)


@st.composite
def vectors(draw, dim):
    return tuple(Fraction(draw(st.integers(-3, 3))) for _ in range(dim))
