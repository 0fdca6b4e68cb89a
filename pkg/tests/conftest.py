import math

import pytest
from hypothesis import settings, strategies as st

from kohncoerce import ExponentSet

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

GAMMA_FIG = ExponentSet([(16, 0), (12, 3), (8, 6), (4, 9), (0, 12)])
# homogeneous, non-decoupled weights used for grid sweeps
TEST_GAMMAS = [
    GAMMA_FIG,
    ExponentSet([(2, 0), (0, 2), (1, 1)]),
    ExponentSet([(4, 0), (0, 4), (2, 2), (1, 3)]),
    ExponentSet([(6, 0), (0, 3), (2, 2)]),
    ExponentSet([(3, 0), (0, 6), (1, 4)]),
]

points = st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda p: p != (0, 0))
gammas = st.frozensets(points, min_size=1, max_size=5).map(ExponentSet)


@st.composite
def homogeneous_gammas(draw, mixed_required=True):
    m = draw(st.integers(2, 12))
    n = draw(st.integers(2, 12))
    g = math.gcd(m, n)
    step_a, step_b = m // g, n // g
    inner = [(m - k * step_a, k * step_b) for k in range(1, g)]
    if mixed_required and not inner:
        # the segment has no interior lattice point; scale it up
        m, n = 2 * m, 2 * n
        inner = [(m - step_a, step_b)]
    chosen = draw(st.lists(st.sampled_from(inner), min_size=1, unique=True)) if inner else []
    return ExponentSet([(m, 0), (0, n), *chosen])


@st.composite
def eligible_gammas(draw):
    """Axis points ``(m,0), (0,n)`` with ``m, n >= 2`` plus at least one mixed point."""
    m = draw(st.integers(2, 8))
    n = draw(st.integers(2, 8))
    mixed = draw(st.lists(st.tuples(st.integers(1, 8), st.integers(1, 8)), min_size=1, max_size=3))
    return ExponentSet([(m, 0), (0, n), *mixed])


@pytest.fixture
def gamma_fig():
    return GAMMA_FIG
