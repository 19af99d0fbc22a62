"""Routed-channel geometry: segments, vias, the validity checker, metrics."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Mapping, Union

from .netlist import ChannelSpec, Terminal, TOP, nets_of

if TYPE_CHECKING:  # pragma: no cover
    from .router import RouterConfig

VERTICAL_LAYER = 0
HORIZONTAL_LAYER = 1

Point = tuple[int, int]  # (column, row)


def terminal_row(side: str, max_rows: int) -> int:
    """Row 0 is the bottom terminal row, max_rows + 1 the top terminal row;
    rows 1..max_rows carry tracks."""
    return max_rows + 1 if side == TOP else 0


@dataclass(frozen=True)
class Segment:
    """One axis-aligned wire piece.  Layer 0 is vertical, layer 1 horizontal."""

    layer: int
    p0: Point
    p1: Point

    @property
    def is_vertical(self) -> bool:
        return self.p0[0] == self.p1[0]

    @property
    def is_horizontal(self) -> bool:
        return self.p0[1] == self.p1[1]

    @property
    def length(self) -> int:
        return abs(self.p0[0] - self.p1[0]) + abs(self.p0[1] - self.p1[1])

    def points(self) -> Iterator[Point]:
        """All grid points covered, endpoints included."""
        (c0, r0), (c1, r1) = self.p0, self.p1
        if c0 == c1:
            lo, hi = sorted((r0, r1))
            for r in range(lo, hi + 1):
                yield (c0, r)
        else:
            lo, hi = sorted((c0, c1))
            for c in range(lo, hi + 1):
                yield (c, r0)


@dataclass(frozen=True)
class Via:
    """Inter-layer connection; occupies its grid point on both layers."""

    at: Point


@dataclass(frozen=True)
class RoutedChannel:
    """Per-net ordered segment lists plus vias and the set of track rows used.

    Within a net's segment sequence, consecutive segments share an endpoint
    (the order traces a possible current path).
    """

    tracks: Mapping[int, tuple[Segment, ...]]
    vias: Mapping[int, tuple[Via, ...]]
    rows_used: frozenset[int]
    config: "RouterConfig"


@dataclass(frozen=True)
class Metrics:
    layers_used: int
    tracks_used: int
    total_length: int
    via_count: int


@dataclass(frozen=True)
class ShortCircuit:
    net_a: int
    net_b: int
    point: Point
    layer: int


@dataclass(frozen=True)
class Disconnected:
    net: int
    terminal: Terminal | None  # None: floating geometry not tied to any terminal


@dataclass(frozen=True)
class OutOfBounds:
    net: int
    segment: Segment


@dataclass(frozen=True)
class WrongOrientation:
    net: int
    segment: Segment


Violation = Union[ShortCircuit, Disconnected, OutOfBounds, WrongOrientation]


class UnknownNet(KeyError):
    """The routing references a net id absent from the instance."""


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        self.add(a)
        self.add(b)
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def validate(spec: ChannelSpec, routed: RoutedChannel) -> list[Violation]:
    """Check a routing for shorts, disconnections, bounds, and orientation.

    Returns an empty list iff the routing is clean.  Coverage is inclusive of
    endpoints: two distinct nets may not even touch at a point on a layer,
    and vias block their point on both layers.
    """
    nets = {n.id: n for n in nets_of(spec)}
    referenced = set(routed.tracks) | set(routed.vias)
    unknown = referenced - set(nets)
    if unknown:
        raise UnknownNet(f"routing references unknown net ids {sorted(unknown)}")

    max_rows = routed.config.max_rows
    top_row = max_rows + 1
    violations: list[Violation] = []

    # Bounds and orientation per segment.
    for nid in sorted(routed.tracks):
        for seg in routed.tracks[nid]:
            vertical = seg.is_vertical
            horizontal = seg.is_horizontal
            if (seg.layer == VERTICAL_LAYER and not vertical) or (
                seg.layer == HORIZONTAL_LAYER and not horizontal
            ) or seg.layer not in (VERTICAL_LAYER, HORIZONTAL_LAYER):
                violations.append(WrongOrientation(nid, seg))
            for (c, r) in (seg.p0, seg.p1):
                if not (0 <= c < spec.columns and 0 <= r <= top_row):
                    violations.append(OutOfBounds(nid, seg))
                    break

    # Short circuits: rasterize everything and look for cross-net ownership.
    owner: dict[tuple[int, int, int], int] = {}
    reported: set[tuple[int, int, int]] = set()
    for nid in sorted(referenced):
        for seg in routed.tracks.get(nid, ()):
            layer = seg.layer
            for point in seg.points():
                node = (layer, point[0], point[1])
                prev = owner.setdefault(node, nid)
                if prev != nid:
                    pair = (min(prev, nid), max(prev, nid), layer)
                    if pair not in reported:
                        reported.add(pair)
                        violations.append(ShortCircuit(prev, nid, point, layer))
        for via in routed.vias.get(nid, ()):
            for layer in (VERTICAL_LAYER, HORIZONTAL_LAYER):
                node = (layer, via.at[0], via.at[1])
                prev = owner.setdefault(node, nid)
                if prev != nid:
                    pair = (min(prev, nid), max(prev, nid), layer)
                    if pair not in reported:
                        reported.add(pair)
                        violations.append(ShortCircuit(prev, nid, via.at, layer))

    # Connectivity: per net, points are connected along segments and across
    # vias; every terminal must land in one component with all geometry.
    for nid in sorted(referenced):
        net = nets[nid]
        uf = _UnionFind()
        terminal_nodes = []
        for t in net.terminals:
            node = (VERTICAL_LAYER, t.column, terminal_row(t.side, max_rows))
            uf.add(node)
            terminal_nodes.append((t, node))
        for seg in routed.tracks.get(nid, ()):
            prev = None
            for point in seg.points():
                node = (seg.layer, point[0], point[1])
                uf.add(node)
                if prev is not None:
                    uf.union(prev, node)
                prev = node
        for via in routed.vias.get(nid, ()):
            uf.union(
                (VERTICAL_LAYER, via.at[0], via.at[1]),
                (HORIZONTAL_LAYER, via.at[0], via.at[1]),
            )
        home = uf.find(terminal_nodes[0][1])
        for t, node in terminal_nodes[1:]:
            if uf.find(node) != home:
                violations.append(Disconnected(nid, t))
        if any(uf.find(node) != home for node in uf.parent):
            violations.append(Disconnected(nid, None))

    return violations


def metrics(routed: RoutedChannel) -> Metrics:
    """Aggregate size figures for a routing (assumed to validate cleanly)."""
    layers = set()
    total = 0
    for segs in routed.tracks.values():
        for seg in segs:
            layers.add(seg.layer)
            total += seg.length
    return Metrics(
        layers_used=len(layers),
        tracks_used=len(routed.rows_used),
        total_length=total,
        via_count=sum(len(v) for v in routed.vias.values()),
    )
