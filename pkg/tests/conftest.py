from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from chanroute.netlist import ChannelSpec


@st.composite
def channel_specs(draw, max_columns: int = 12, max_id: int = 6) -> ChannelSpec:
    """Arbitrary valid instances: random rows with singleton ids cleared."""
    columns = draw(st.integers(1, max_columns))
    top = list(draw(st.lists(st.integers(0, max_id), min_size=columns, max_size=columns)))
    bottom = list(draw(st.lists(st.integers(0, max_id), min_size=columns, max_size=columns)))
    counts: dict[int, int] = {}
    for v in top + bottom:
        if v:
            counts[v] = counts.get(v, 0) + 1
    singles = {nid for nid, n in counts.items() if n < 2}
    top = [0 if v in singles else v for v in top]
    bottom = [0 if v in singles else v for v in bottom]
    return ChannelSpec(columns=columns, top=tuple(top), bottom=tuple(bottom))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
