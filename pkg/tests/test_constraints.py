import random

import networkx as nx
from hypothesis import given
from hypothesis import strategies as st

from chanroute.constraints import (
    analyze,
    build_hcg,
    build_vcg,
    channel_density,
    find_vcg_cycle,
)
from chanroute.instances import random_spec
from chanroute.netlist import BOTTOM, ChannelSpec, Net, TOP, Terminal, nets_of

from conftest import channel_specs
from oracles import brute_density, brute_hcg_edges, brute_vcg_edges, max_clique_size, topological_order


def net(nid, *terms, subnet=None):
    return Net(nid, tuple(sorted(Terminal(c, s) for s, c in terms)), subnet=subnet)


class TestHcg:
    def test_disjoint_intervals_no_edge(self):
        nets = [net(1, (TOP, 0), (TOP, 2)), net(2, (TOP, 3), (TOP, 5))]
        assert build_hcg(nets) == {1: (), 2: ()}

    def test_overlapping_intervals_edge(self):
        nets = [net(1, (TOP, 0), (TOP, 3)), net(2, (BOTTOM, 2), (BOTTOM, 5))]
        assert build_hcg(nets) == {1: (2,), 2: (1,)}

    def test_touching_endpoints_conflict(self):
        nets = [net(1, (TOP, 0), (TOP, 2)), net(2, (BOTTOM, 2), (BOTTOM, 4))]
        assert build_hcg(nets)[1] == (2,)

    def test_random_instances_match_pairwise_oracle(self):
        rng = random.Random(5)
        for _ in range(30):
            spec = random_spec(rng, 30, 80)
            hcg = build_hcg(nets_of(spec))
            got = {(a, b) for a in hcg for b in hcg[a] if a < b}
            assert got == brute_hcg_edges(spec)

    @given(channel_specs())
    def test_symmetric_irreflexive(self, spec):
        hcg = build_hcg(nets_of(spec))
        for a in hcg:
            assert a not in hcg[a]
            for b in hcg[a]:
                assert a in hcg[b]


class TestVcg:
    def test_top_net_constrains_bottom_net(self):
        # one column whose top terminal is net 0 and bottom terminal is net 2
        nets = [net(0, (TOP, 1), (TOP, 3)), net(2, (BOTTOM, 1), (BOTTOM, 4))]
        assert build_vcg(nets) == {0: (2,), 2: ()}

    def test_no_shared_column_empty(self):
        nets = [net(1, (TOP, 0), (TOP, 1)), net(2, (BOTTOM, 2), (BOTTOM, 3))]
        assert build_vcg(nets) == {1: (), 2: ()}

    def test_two_cycle(self):
        spec = ChannelSpec(2, top=(1, 2), bottom=(2, 1))
        assert build_vcg(nets_of(spec)) == {1: (2,), 2: (1,)}

    def test_random_instances_match_column_oracle(self):
        rng = random.Random(6)
        for _ in range(30):
            spec = random_spec(rng, 20, 60)
            vcg = build_vcg(nets_of(spec))
            got = {(a, b) for a in vcg for b in vcg[a]}
            assert got == brute_vcg_edges(spec)

    @given(channel_specs())
    def test_every_edge_has_a_witness_column(self, spec):
        vcg = build_vcg(nets_of(spec))
        for a in vcg:
            for b in vcg[a]:
                assert any(
                    spec.top[c] == a and spec.bottom[c] == b for c in range(spec.columns)
                )


class TestCycleFinder:
    def test_acyclic_chain(self):
        assert find_vcg_cycle({0: (2,), 2: (5,), 5: ()}) is None

    def test_two_cycle(self):
        assert find_vcg_cycle({1: (2,), 2: (1,)}) == [1, 2]

    def test_witness_starts_at_smallest_id(self):
        cycle = find_vcg_cycle({3: (7,), 7: (2,), 2: (3,)})
        assert cycle[0] == 2
        assert sorted(cycle) == [2, 3, 7]

    @given(st.integers(0, 10_000))
    def test_random_digraphs_agree_with_networkx(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 12)
        graph = {
            i: tuple(sorted({rng.randrange(n) for _ in range(rng.randint(0, 3))} - {i}))
            for i in range(n)
        }
        g = nx.DiGraph({k: list(v) for k, v in graph.items()})
        cycle = find_vcg_cycle(graph)
        assert (cycle is None) == nx.is_directed_acyclic_graph(g)
        if cycle is not None:
            # the witness must be a real directed cycle
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                assert b in graph[a]

    @given(st.integers(0, 10_000))
    def test_none_iff_topological_order_exists(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 10)
        graph = {
            i: tuple(sorted({rng.randrange(n) for _ in range(rng.randint(0, 2))} - {i}))
            for i in range(n)
        }
        assert (find_vcg_cycle(graph) is None) == (topological_order(graph) is not None)


class TestDensity:
    def test_single_net(self):
        spec = ChannelSpec(3, top=(1, 0, 1), bottom=(0, 0, 0))
        assert channel_density(spec) == (1, 0)

    def test_two_overlapping_nets(self):
        spec = ChannelSpec(4, top=(1, 2, 0, 2), bottom=(0, 1, 0, 0))
        assert channel_density(spec) == (2, 1)

    def test_all_vacant(self):
        spec = ChannelSpec(2, top=(0, 0), bottom=(0, 0))
        assert channel_density(spec) == (0, 0)

    @given(channel_specs())
    def test_matches_brute_force_sweep(self, spec):
        assert channel_density(spec) == brute_density(spec)

    @given(channel_specs(max_id=5))
    def test_density_bounds_and_clique_equality(self, spec):
        nets = nets_of(spec)
        density, _ = channel_density(spec)
        assert density <= len(nets)
        if len(nets) <= 10:
            hcg = build_hcg(nets)
            edges = {(a, b) for a in hcg for b in hcg[a] if a < b}
            # interval graphs are perfect: clique number equals density
            assert density == max_clique_size([n.id for n in nets], edges)

    @given(channel_specs())
    def test_analyze_bundles_consistently(self, spec):
        graphs = analyze(spec)
        assert graphs.density == channel_density(spec)[0]
        assert graphs.hcg == build_hcg(nets_of(spec))
        assert graphs.vcg == build_vcg(nets_of(spec))
