"""Seeded random channel-instance generators for tests, training, benchmarks."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from .netlist import BOTTOM, ChannelSpec, TOP


def random_spec(
    rng: random.Random,
    n_nets: int,
    columns: int,
    max_net_terminals: int = 4,
    left_bias: Optional[float] = None,
    empty_vcg: bool = False,
    acyclic: bool = False,
) -> ChannelSpec:
    """Generate an instance with up to n_nets nets.

    Each net gets 2..max_net_terminals terminals in distinct columns, so no
    net degenerates to a single column (keeps the density lower bound tight).
    left_bias skews terminal columns toward the left half, spreading the
    balance feature across instances.  empty_vcg uses every column on at most
    one side; acyclic swaps terminal pairs so vertical constraints always
    point from smaller to larger net ids.
    """
    if left_bias is None:
        left_bias = rng.random()
    top = [0] * columns
    bottom = [0] * columns
    free = {TOP: set(range(columns)), BOTTOM: set(range(columns))}
    mid = columns // 2

    def pick_column(taken: set[int]) -> Optional[int]:
        if empty_vcg:
            candidates = [c for c in free[TOP] & free[BOTTOM] if c not in taken]
        else:
            candidates = [c for c in free[TOP] | free[BOTTOM] if c not in taken]
        if not candidates:
            return None
        left = [c for c in candidates if c < mid]
        right = [c for c in candidates if c >= mid]
        pool = left if (left and (not right or rng.random() < left_bias)) else right
        return rng.choice(sorted(pool))

    for nid in range(1, n_nets + 1):
        if max_net_terminals <= 2 or rng.random() < 0.7:
            k = 2
        else:
            k = rng.randint(3, max_net_terminals)
        chosen: list[tuple[str, int]] = []
        taken: set[int] = set()
        for _ in range(k):
            column = pick_column(taken)
            if column is None:
                break
            sides = [s for s in (TOP, BOTTOM) if column in free[s]]
            side = rng.choice(sides)
            chosen.append((side, column))
            taken.add(column)
        if len(chosen) < 2:
            break
        for side, column in chosen:
            row = top if side == TOP else bottom
            row[column] = nid
            free[side].discard(column)
            if empty_vcg:
                free[TOP].discard(column)
                free[BOTTOM].discard(column)

    if acyclic:
        for c in range(columns):
            if top[c] and bottom[c] and top[c] > bottom[c]:
                top[c], bottom[c] = bottom[c], top[c]

    return ChannelSpec(columns=columns, top=tuple(top), bottom=tuple(bottom))


def random_suite(
    count: int,
    seed: int,
    min_nets: int = 5,
    max_nets: int = 50,
    min_columns: int = 10,
    max_columns: int = 100,
    max_net_terminals: int = 4,
    empty_vcg: bool = False,
    acyclic: bool = False,
) -> Iterator[ChannelSpec]:
    """Deterministic stream of random instances."""
    rng = random.Random(seed)
    for _ in range(count):
        columns = rng.randint(min_columns, max_columns)
        upper = max(min_nets, min(max_nets, columns - 1))
        n_nets = rng.randint(min_nets, upper)
        yield random_spec(
            rng,
            n_nets,
            columns,
            max_net_terminals=max_net_terminals,
            empty_vcg=empty_vcg,
            acyclic=acyclic,
        )
