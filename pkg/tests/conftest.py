import random

import pytest
from hypothesis import strategies as st

from harmonics.groups import ordered_group, parse_group
from harmonics.ring import RingElement


GROUP_SPECS = [
    "z(1)",
    "z(2)",
    "z(5)",
    "heisenberg(1)",
    "heisenberg(2)",
    "ut(2)",
    "free(2)",
    "bs(1,2)",
    "wreath(z)",
    "wreath(zmod:3)",
    "freeprod(3)",
    "freesemi(3)",
]


@pytest.fixture(scope="session")
def groups():
    return {spec: parse_group(spec) for spec in GROUP_SPECS}


def ball_elements(spec: str, radius: int = 3):
    og = ordered_group(spec)
    return og.sorted_ball(radius)


def elements_strategy(spec: str, radius: int = 3):
    """Random group elements drawn from a ball."""
    return st.sampled_from(ball_elements(spec, radius))


def ring_strategy(spec: str, radius: int = 2, max_terms: int = 5, max_coef: int = 9):
    """Random integer ring elements with small support."""
    group = parse_group(spec)
    elems = ball_elements(spec, radius)

    def build(pairs):
        coeffs = {}
        for idx, c in pairs:
            g = elems[idx % len(elems)]
            coeffs[g] = coeffs.get(g, 0) + c
        return RingElement(group, coeffs)

    pair = st.tuples(
        st.integers(min_value=0, max_value=len(elems) - 1),
        st.integers(min_value=-max_coef, max_value=max_coef),
    )
    return st.lists(pair, min_size=0, max_size=max_terms).map(build)


@pytest.fixture
def rng():
    return random.Random(1234)
