"""Horizontal/vertical constraint graphs and the channel density lower bound."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .netlist import ChannelSpec, Net, nets_of

# Graph nodes are net keys: plain ints for whole nets, (id, subnet) tuples
# for decomposed subnets.  Adjacency maps node -> sorted tuple of nodes.
Graph = dict


def node_order(key):
    """Total order over mixed int/tuple node keys."""
    return (key,) if isinstance(key, int) else key


def build_hcg(nets: Sequence[Net]) -> Graph:
    """Undirected interval-overlap graph.

    Intervals are inclusive on both ends: nets touching at a column conflict.
    Pieces of the same parent net never get an edge (they may share a track).
    """
    adj: dict = {n.key: set() for n in nets}
    for a, b in combinations(nets, 2):
        if a.id == b.id:
            continue
        if a.leftmost <= b.rightmost and b.leftmost <= a.rightmost:
            adj[a.key].add(b.key)
            adj[b.key].add(a.key)
    return {k: tuple(sorted(v, key=node_order)) for k, v in sorted(adj.items(), key=lambda kv: node_order(kv[0]))}


def build_vcg(nets: Sequence[Net]) -> Graph:
    """Directed above/below graph: edge a -> b when some column holds a top
    terminal of a and a bottom terminal of b (distinct parent nets).

    For decomposed instances every subnet touching the shared column gets the
    edge, so dogleg verticals inherit the separation constraint too.
    """
    top_at: dict[int, list[Net]] = {}
    bottom_at: dict[int, list[Net]] = {}
    for net in nets:
        for t in net.terminals:
            slot = top_at if t.side == "top" else bottom_at
            slot.setdefault(t.column, []).append(net)
    adj: dict = {n.key: set() for n in nets}
    for column, uppers in top_at.items():
        for upper in uppers:
            for lower in bottom_at.get(column, ()):
                if upper.id != lower.id:
                    adj[upper.key].add(lower.key)
    return {k: tuple(sorted(v, key=node_order)) for k, v in sorted(adj.items(), key=lambda kv: node_order(kv[0]))}


def reverse_graph(graph: Mapping) -> Graph:
    rev: dict = {k: set() for k in graph}
    for src, dsts in graph.items():
        for dst in dsts:
            rev.setdefault(dst, set()).add(src)
    return {k: tuple(sorted(v, key=node_order)) for k, v in sorted(rev.items(), key=lambda kv: node_order(kv[0]))}


def find_vcg_cycle(graph: Mapping) -> Optional[list]:
    """Return some directed cycle as a node list, or None if acyclic.

    The witness is rotated so it starts at its smallest node; detection order
    is deterministic (nodes and successors visited in sorted order).
    """
    WHITE, GREY, BLACK = 0, 1, 2
    color = {k: WHITE for k in graph}
    parent: dict = {}

    def neighbors(k) -> Iterable:
        return sorted(graph.get(k, ()), key=node_order)

    for root in sorted(graph, key=node_order):
        if color[root] != WHITE:
            continue
        stack = [(root, iter(neighbors(root)))]
        color[root] = GREY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if nxt not in color:
                    color[nxt] = WHITE
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    parent[nxt] = node
                    stack.append((nxt, iter(neighbors(nxt))))
                    advanced = True
                    break
                if color[nxt] == GREY:
                    cycle = [node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    pivot = min(range(len(cycle)), key=lambda i: node_order(cycle[i]))
                    return cycle[pivot:] + cycle[:pivot]
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None


def channel_density(spec: ChannelSpec) -> tuple[int, int]:
    """Max column congestion and the smallest column attaining it.

    Congestion at column c counts nets whose [leftmost, rightmost] interval
    covers c; this is the classical lower bound on track count.
    """
    nets = nets_of(spec)
    if not nets:
        return (0, 0)
    cover = [0] * spec.columns
    for net in nets:
        for c in range(net.leftmost, net.rightmost + 1):
            cover[c] += 1
    density = max(cover)
    return density, cover.index(density)


@dataclass(frozen=True)
class ConstraintGraphs:
    """Bundle of both constraint graphs plus the density lower bound."""

    hcg: Graph
    vcg: Graph
    density: int
    density_column: int


def analyze(spec: ChannelSpec) -> ConstraintGraphs:
    nets = nets_of(spec)
    density, column = channel_density(spec)
    return ConstraintGraphs(
        hcg=build_hcg(nets),
        vcg=build_vcg(nets),
        density=density,
        density_column=column,
    )
