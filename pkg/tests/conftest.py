from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pact.topology import FiniteSpace, make_space

settings.register_profile(
    "pact", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("pact")


def opens_set(space: FiniteSpace) -> set[frozenset]:
    return {frozenset(o) for o in space.canonical_opens()}


def raw(cls, **fields):
    """Build a frozen dataclass instance without running its validation."""
    obj = object.__new__(cls)
    for k, v in fields.items():
        object.__setattr__(obj, k, v)
    return obj


@st.composite
def spaces(draw, min_points: int = 1, max_points: int = 4) -> FiniteSpace:
    n = draw(st.integers(min_points, max_points))
    pts = [str(i) for i in range(n)]
    gens = draw(st.lists(st.sets(st.sampled_from(pts)), max_size=n + 1)) if n else []
    return make_space(pts, gens)


@pytest.fixture
def opens_of():
    return opens_set
