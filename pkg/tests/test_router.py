import random

import pytest

from chanroute.constraints import build_vcg, channel_density
from chanroute.instances import random_spec
from chanroute.layout import Segment, metrics, validate
from chanroute.netlist import (
    BOTTOM,
    ChannelSpec,
    Net,
    TOP,
    Terminal,
    extract_features,
    nets_of,
    parse_netlist,
)
from chanroute.router import (
    BOTTOM_UP,
    CyclicVcg,
    DENSITY_WEIGHTED,
    Failure,
    FAILURE_ROWS_EXHAUSTED,
    MIDDLE_OUT,
    RouterConfig,
    RowSelectionPolicy,
    RowsExhausted,
    StrategyBank,
    TOP_DOWN,
    candidate_rows,
    decompose_multiterminal,
    route_adaptive,
    route_dogleg,
    route_left_edge,
    select_row,
)

from oracles import min_track_count

MIDDLE_BANK = StrategyBank.uniform(RowSelectionPolicy(MIDDLE_OUT))


def net(nid, *terms, subnet=None):
    return Net(nid, tuple(sorted(Terminal(c, s) for s, c in terms)), subnet=subnet)


class TestDecompose:
    def test_two_terminal_identity(self):
        n = net(1, (TOP, 0), (BOTTOM, 5))
        assert decompose_multiterminal([n]) == (n,)

    def test_three_terminal_chain(self):
        n = net(1, (TOP, 1), (BOTTOM, 4), (TOP, 7))
        subnets = decompose_multiterminal([n])
        assert [(s.leftmost, s.rightmost, s.subnet) for s in subnets] == [
            (1, 4, 0),
            (4, 7, 1),
        ]

    def test_random_nets_preserve_terminals_and_tile_interval(self, rng):
        for _ in range(50):
            k = rng.randint(2, 6)
            columns = rng.sample(range(30), k)
            n = net(1, *((rng.choice((TOP, BOTTOM)), c) for c in columns))
            subnets = [s for s in decompose_multiterminal([n])]
            assert {t for s in subnets for t in s.terminals} == set(n.terminals)
            intervals = sorted((s.leftmost, s.rightmost) for s in subnets)
            assert intervals[0][0] == n.leftmost
            assert intervals[-1][1] == n.rightmost
            for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
                assert hi == lo  # chained at shared terminal columns


class TestLeftEdge:
    def test_same_column_net_single_vertical(self):
        spec = ChannelSpec(1, top=(1,), bottom=(1,))
        routed = route_left_edge(spec, RouterConfig(max_rows=3))
        assert routed.tracks[1] == (Segment(0, (0, 0), (0, 4)),)
        assert routed.rows_used == frozenset()
        assert metrics(routed).tracks_used == 0

    def test_empty_vcg_track_count_equals_density(self, rng):
        for _ in range(30):
            spec = random_spec(rng, 6, 16, empty_vcg=True)
            density, _ = channel_density(spec)
            routed = route_left_edge(spec, RouterConfig(max_rows=density + 3))
            assert validate(spec, routed) == []
            assert metrics(routed).tracks_used == density

    def test_empty_vcg_matches_brute_force_minimum(self, rng):
        for _ in range(20):
            spec = random_spec(rng, rng.randint(2, 8), 16, empty_vcg=True)
            assert build_vcg(nets_of(spec)) == {n.id: () for n in nets_of(spec)}
            density, _ = channel_density(spec)
            routed = route_left_edge(spec, RouterConfig(max_rows=density + 4))
            intervals = [
                (n.leftmost, n.rightmost) for n in nets_of(spec) if n.needs_trunk
            ]
            assert metrics(routed).tracks_used == min_track_count(intervals)

    def test_cyclic_vcg_rejected(self):
        spec = ChannelSpec(2, top=(1, 2), bottom=(2, 1))
        with pytest.raises(CyclicVcg) as e:
            route_left_edge(spec, RouterConfig(max_rows=4, dogleg_enabled=False))
        assert e.value.witness == [1, 2]

    def test_rows_exhausted(self):
        spec = ChannelSpec(3, top=(1, 2, 0), bottom=(0, 1, 2))
        with pytest.raises(RowsExhausted):
            route_left_edge(spec, RouterConfig(max_rows=1))

    def test_respects_vertical_constraints(self, rng):
        placed = 0
        for _ in range(40):
            spec = random_spec(rng, 8, 24, acyclic=True)
            density, _ = channel_density(spec)
            try:
                routed = route_left_edge(spec, RouterConfig(max_rows=density + 2))
            except RowsExhausted:
                continue
            placed += 1
            assert validate(spec, routed) == []
        assert placed > 0


class TestDogleg:
    def test_two_terminal_instance_identical_to_left_edge(self, rng):
        cfg = RouterConfig(max_rows=8)
        for _ in range(20):
            spec = random_spec(rng, 6, 20, max_net_terminals=2, acyclic=True)
            try:
                a = route_left_edge(spec, cfg)
            except RowsExhausted:
                continue
            assert route_dogleg(spec, cfg) == a

    def test_three_terminal_net_split_across_two_tracks(self):
        spec = parse_netlist("TOP: 1 0 1 2\nBOT: 2 0 0 1\n")
        density, _ = channel_density(spec)
        routed = route_dogleg(spec, RouterConfig(max_rows=density + 2))
        assert validate(spec, routed) == []
        # 3-terminal net 1 splits into 2 chained subnets on 2 trunk rows
        trunk_rows = {seg.p0[1] for seg in routed.tracks[1] if seg.layer == 1}
        assert len(trunk_rows) == 2
        # dogleg columns joining consecutive trunks: subnet count - 1
        n1 = next(n for n in nets_of(spec) if n.id == 1)
        subnet_count = len(n1.terminals) - 1
        trunk_cols = [
            {seg.p0[0], seg.p1[0]} for seg in routed.tracks[1] if seg.layer == 1
        ]
        shared_cols = set.intersection(*trunk_cols)
        assert len(shared_cols) == subnet_count - 1 == 1

    def test_irreducible_two_net_cycle_still_fails(self):
        spec = ChannelSpec(2, top=(1, 2), bottom=(2, 1))
        with pytest.raises(CyclicVcg):
            route_dogleg(spec, RouterConfig(max_rows=4))


class TestAdaptive:
    def test_same_column_net(self):
        spec = ChannelSpec(1, top=(1,), bottom=(1,))
        routed = route_adaptive(spec, RouterConfig(max_rows=3), MIDDLE_BANK)
        assert routed.tracks[1] == (Segment(0, (0, 0), (0, 4)),)

    def test_two_disjoint_nets_trace(self):
        # hand-replayed trace: first trunk on floor(4 / 2) = 2, second net's
        # row picked by the middle_out policy (row 2 again, no overlap)
        spec = ChannelSpec(4, top=(1, 1, 2, 2), bottom=(0, 0, 0, 0))
        routed = route_adaptive(spec, RouterConfig(max_rows=4), MIDDLE_BANK)
        assert routed.tracks[1] == (
            Segment(0, (0, 5), (0, 2)),
            Segment(1, (0, 2), (1, 2)),
            Segment(0, (1, 2), (1, 5)),
        )
        assert routed.tracks[2] == (
            Segment(0, (2, 5), (2, 2)),
            Segment(1, (2, 2), (3, 2)),
            Segment(0, (3, 2), (3, 5)),
        )
        assert routed.rows_used == frozenset({2})

    def test_density_two_with_one_row_fails(self):
        spec = ChannelSpec(3, top=(1, 2, 0), bottom=(0, 1, 2))
        result = route_adaptive(spec, RouterConfig(max_rows=1), MIDDLE_BANK)
        assert isinstance(result, Failure)
        assert result.reason == FAILURE_ROWS_EXHAUSTED
        # partial tracklist retained for diagnostics
        assert result.routed_so_far.tracks

    def test_deterministic(self):
        spec = parse_netlist("TOP: 1 2 1 3 0 2\nBOT: 0 0 3 0 2 0\n")
        cfg = RouterConfig(max_rows=5)
        assert route_adaptive(spec, cfg, MIDDLE_BANK) == route_adaptive(
            spec, cfg, MIDDLE_BANK
        )

    def test_successes_validate(self, rng):
        ok = 0
        for _ in range(40):
            spec = random_spec(rng, 8, 30)
            density, _ = channel_density(spec)
            result = route_adaptive(spec, RouterConfig(max_rows=density + 2), MIDDLE_BANK)
            if isinstance(result, Failure):
                continue
            ok += 1
            assert validate(spec, result) == []
            assert metrics(result).tracks_used >= density
        assert ok > 0


class TestSelectRow:
    def test_empty_tracklist_gives_policy_first_row(self):
        nets = [net(1, (TOP, 0), (TOP, 3))]
        cfg = RouterConfig(max_rows=5)
        feats = extract_features(ChannelSpec(4, (1, 0, 0, 1), (0, 0, 0, 0)))
        for kind, first in [(MIDDLE_OUT, 2), (TOP_DOWN, 5), (BOTTOM_UP, 1)]:
            bank = StrategyBank.uniform(RowSelectionPolicy(kind))
            row = select_row({}, {}, feats, {}, cfg, bank, nets[0])
            assert row == first

    def test_middle_out_skips_occupied_overlapping_row(self):
        pending = net(2, (TOP, 1), (TOP, 3))
        placed = net(1, (TOP, 0), (TOP, 4))
        hcg = {1: (2,), 2: (1,)}
        cfg = RouterConfig(max_rows=5)
        feats = extract_features(ChannelSpec(5, (1, 2, 0, 2, 1), (0, 0, 0, 0, 0)))
        tracklist = {1: (0, 4, 2)}
        row = select_row({}, hcg, feats, tracklist, cfg, MIDDLE_BANK, pending)
        assert row == 3  # first alternate outward from the occupied middle

    def test_all_rows_blocked_returns_none(self):
        pending = net(2, (TOP, 1), (TOP, 3))
        cfg = RouterConfig(max_rows=2)
        feats = extract_features(ChannelSpec(5, (1, 2, 0, 2, 1), (0, 0, 0, 0, 0)))
        tracklist = {1: (0, 4, 1), 3: (0, 4, 2)}
        hcg = {1: (2, 3), 3: (2, 1), 2: (1, 3)}
        assert select_row({}, hcg, feats, tracklist, cfg, MIDDLE_BANK, pending) is None

    def test_vertical_constraints_respected(self):
        pending = net(2, (BOTTOM, 1), (BOTTOM, 3))
        vcg = {1: (2,), 2: ()}  # net 1 must stay above net 2
        cfg = RouterConfig(max_rows=4)
        feats = extract_features(ChannelSpec(5, (1, 2, 0, 2, 1), (0, 0, 0, 0, 0)))
        tracklist = {1: (0, 4, 3)}
        bank = StrategyBank.uniform(RowSelectionPolicy(TOP_DOWN))
        assert select_row(vcg, {}, feats, tracklist, cfg, bank, pending) == 2


class TestCandidateRows:
    def test_middle_out_order(self):
        assert candidate_rows(RowSelectionPolicy(MIDDLE_OUT), 5, frozenset()) == [2, 3, 1, 4, 5]
        assert candidate_rows(RowSelectionPolicy(MIDDLE_OUT), 4, frozenset()) == [2, 3, 1, 4]
        assert candidate_rows(RowSelectionPolicy(MIDDLE_OUT), 1, frozenset()) == [1]

    def test_top_down_and_bottom_up(self):
        assert candidate_rows(RowSelectionPolicy(TOP_DOWN), 3, frozenset()) == [3, 2, 1]
        assert candidate_rows(RowSelectionPolicy(BOTTOM_UP), 3, frozenset()) == [1, 2, 3]

    def test_density_weighted_prefers_rows_without_occupied_neighbors(self):
        order = candidate_rows(RowSelectionPolicy(DENSITY_WEIGHTED), 5, frozenset({2}))
        # rows 1 and 3 touch the occupied row 2 and sort last
        assert order == [2, 4, 5, 1, 3]

    def test_every_policy_enumerates_all_rows(self):
        for kind in (MIDDLE_OUT, TOP_DOWN, BOTTOM_UP, DENSITY_WEIGHTED):
            rows = candidate_rows(RowSelectionPolicy(kind), 7, frozenset({1, 7}))
            assert sorted(rows) == list(range(1, 8))
