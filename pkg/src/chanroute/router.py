"""Channel routers: constrained left-edge, dogleg, and the adaptive router
driven by a feature-keyed strategy bank, plus the bank's offline trainer."""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable, Optional, Sequence, Union

from .constraints import build_hcg, build_vcg, channel_density, find_vcg_cycle, reverse_graph
from .layout import (
    HORIZONTAL_LAYER,
    RoutedChannel,
    Segment,
    VERTICAL_LAYER,
    Via,
    terminal_row,
)
from .netlist import ChannelSpec, FeatureVector, Net, extract_features, nets_of

MIDDLE_OUT = "middle_out"
TOP_DOWN = "top_down"
BOTTOM_UP = "bottom_up"
DENSITY_WEIGHTED = "density_weighted"
POLICY_KINDS = (MIDDLE_OUT, TOP_DOWN, BOTTOM_UP, DENSITY_WEIGHTED)

FAILURE_ROWS_EXHAUSTED = "RowsExhausted"


class RoutingError(Exception):
    pass


class CyclicVcg(RoutingError):
    """The vertical constraint graph contains a directed cycle."""

    def __init__(self, witness: Sequence[int]):
        self.witness = list(witness)
        super().__init__(f"cyclic vertical constraints among nets {self.witness}")


class RowsExhausted(RoutingError):
    pass


class BankFormatError(ValueError):
    pass


@dataclass(frozen=True)
class RouterConfig:
    """Grid limits and knobs shared by all routers.

    min_row and min_column are recorded for completeness; track rows run
    1..max_rows and columns 0..columns-1.
    """

    max_rows: int
    min_row: int = 1
    min_column: int = 0
    seed: int = 0
    dogleg_enabled: bool = False

    def __post_init__(self):
        if self.max_rows < 1:
            raise ValueError("max_rows must be >= 1")


@dataclass(frozen=True)
class RowSelectionPolicy:
    """Named row-enumeration order used when picking the next track."""

    kind: str
    parameters: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")


def candidate_rows(policy: RowSelectionPolicy, max_rows: int, occupied: frozenset[int]) -> list[int]:
    """Row enumeration order for a policy, restricted to 1..max_rows."""
    if policy.kind == TOP_DOWN:
        return list(range(max_rows, 0, -1))
    if policy.kind == BOTTOM_UP:
        return list(range(1, max_rows + 1))
    if policy.kind == DENSITY_WEIGHTED:
        return sorted(
            range(1, max_rows + 1),
            key=lambda r: ((r - 1 in occupied) + (r + 1 in occupied), r),
        )
    # middle_out: start at floor(max_rows / 2), alternate outward
    start = max_rows // 2
    order = []
    for offset in range(0, max_rows + 1):
        for r in ((start + offset, start - offset) if offset else (start,)):
            if 1 <= r <= max_rows and r not in order:
                order.append(r)
    return order


@dataclass(frozen=True)
class StrategyBank:
    """Mapping from (balance bucket, density band) to a row policy with its
    empirically recorded success weight."""

    bucket_count: int
    cells: dict[tuple[int, int], tuple[RowSelectionPolicy, float]]

    def __post_init__(self):
        expected = {(b, band) for b in range(self.bucket_count) for band in range(3)}
        if set(self.cells) != expected:
            raise BankFormatError("bank must map every (bucket, band) cell")

    def policy_for(self, features: FeatureVector) -> RowSelectionPolicy:
        key = (
            balance_bucket(features.balance, self.bucket_count),
            density_band(features.density),
        )
        return self.cells[key][0]

    @classmethod
    def uniform(cls, policy: RowSelectionPolicy, bucket_count: int = 5) -> "StrategyBank":
        cells = {
            (b, band): (policy, 1.0)
            for b in range(bucket_count)
            for band in range(3)
        }
        return cls(bucket_count=bucket_count, cells=cells)

    def serialize(self) -> str:
        lines = [f"CANALBANK v1 buckets={self.bucket_count}"]
        for key in sorted(self.cells):
            policy, weight = self.cells[key]
            lines.append(f"{key[0]} {key[1]} {policy.kind} {weight:.6f}")
        return "\n".join(lines) + "\n"


def parse_bank(text: str) -> StrategyBank:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("CANALBANK v1 buckets="):
        raise BankFormatError("missing CANALBANK v1 header")
    try:
        bucket_count = int(lines[0].split("buckets=", 1)[1])
    except ValueError:
        raise BankFormatError("bad bucket count in header") from None
    cells: dict[tuple[int, int], tuple[RowSelectionPolicy, float]] = {}
    for line in lines[1:]:
        parts = line.split()
        if len(parts) != 4:
            raise BankFormatError(f"bad bank line {line!r}")
        try:
            bucket, band = int(parts[0]), int(parts[1])
            weight = float(parts[3])
        except ValueError:
            raise BankFormatError(f"bad bank line {line!r}") from None
        cells[(bucket, band)] = (RowSelectionPolicy(parts[2]), weight)
    return StrategyBank(bucket_count=bucket_count, cells=cells)


def balance_bucket(balance: float, bucket_count: int) -> int:
    return min(int(balance * bucket_count), bucket_count - 1)


def density_band(density: int) -> int:
    if density <= 2:
        return 0
    if density <= 5:
        return 1
    return 2


@dataclass(frozen=True)
class Failure:
    """Adaptive routing gave up; the partial tracklist is kept for diagnostics."""

    reason: str
    routed_so_far: RoutedChannel


RouteResult = Union[RoutedChannel, Failure]


def decompose_multiterminal(nets: Sequence[Net]) -> tuple[Net, ...]:
    """Split each k-terminal net (k >= 3) into k-1 chained 2-terminal subnets
    linking consecutive terminals in column order."""
    out: list[Net] = []
    for net in nets:
        if len(net.terminals) <= 2:
            out.append(net)
        else:
            for i in range(len(net.terminals) - 1):
                out.append(Net(net.id, net.terminals[i : i + 2], subnet=i))
    return tuple(out)


def _route_order(nets: Sequence[Net]) -> list[Net]:
    return sorted(nets, key=lambda n: (n.leftmost, n.id, n.subnet or 0))


def _witness_ids(cycle: Sequence) -> list[int]:
    ids = []
    for key in cycle:
        nid = key if isinstance(key, int) else key[0]
        if nid not in ids:
            ids.append(nid)
    return ids


def _net_geometry(net: Net, row: Optional[int], max_rows: int) -> tuple[list[Segment], list[Via]]:
    """Segments and vias for one (sub)net given its trunk row.

    Same-column nets become a single vertical; otherwise the path is the drop
    at the left terminal, trunk pieces between consecutive terminal columns,
    and a vertical at each terminal.
    """
    ts = net.terminals
    if net.leftmost == net.rightmost:
        c = net.leftmost
        r0 = terminal_row(ts[0].side, max_rows)
        r1 = terminal_row(ts[-1].side, max_rows)
        return [Segment(VERTICAL_LAYER, (c, r0), (c, r1))], []
    assert row is not None
    segments = [
        Segment(VERTICAL_LAYER, (ts[0].column, terminal_row(ts[0].side, max_rows)), (ts[0].column, row))
    ]
    vias = [Via((ts[0].column, row))]
    prev_col = ts[0].column
    for t in ts[1:]:
        if t.column != prev_col:
            segments.append(Segment(HORIZONTAL_LAYER, (prev_col, row), (t.column, row)))
            vias.append(Via((t.column, row)))
        segments.append(
            Segment(VERTICAL_LAYER, (t.column, row), (t.column, terminal_row(t.side, max_rows)))
        )
        prev_col = t.column
    return segments, vias


def _assemble(nets: Sequence[Net], rows: dict, cfg: RouterConfig) -> RoutedChannel:
    """Build the RoutedChannel from per-key trunk rows.

    Subnets of one parent are concatenated in chain order so the per-net
    segment sequence stays endpoint-connected.
    """
    tracks: dict[int, list[Segment]] = {}
    vias: dict[int, list[Via]] = {}
    rows_used: set[int] = set()
    for net in sorted(nets, key=lambda n: (n.id, n.subnet or 0)):
        row = rows.get(net.key)
        if net.needs_trunk:
            rows_used.add(row)
        segs, vv = _net_geometry(net, row, cfg.max_rows)
        tracks.setdefault(net.id, []).extend(segs)
        seen = vias.setdefault(net.id, [])
        for via in vv:
            if via not in seen:
                seen.append(via)
    return RoutedChannel(
        tracks={nid: tuple(segs) for nid, segs in tracks.items()},
        vias={nid: tuple(vv) for nid, vv in vias.items()},
        rows_used=frozenset(rows_used),
        config=cfg,
    )


def _left_edge(nets: Sequence[Net], cfg: RouterConfig) -> RoutedChannel:
    vcg = build_vcg(nets)
    cycle = find_vcg_cycle(vcg)
    if cycle is not None:
        raise CyclicVcg(_witness_ids(cycle))
    preds = reverse_graph(vcg)
    unplaced = [n for n in _route_order(nets) if n.needs_trunk]
    rows: dict = {}
    for row in range(cfg.max_rows, 0, -1):
        if not unplaced:
            break
        placed_above = set(rows)
        intervals: list[tuple[int, int, int]] = []
        deferred = []
        for net in unplaced:
            if any(p not in placed_above for p in preds.get(net.key, ())):
                deferred.append(net)
                continue
            if any(
                net.leftmost <= hi and lo <= net.rightmost and nid != net.id
                for (lo, hi, nid) in intervals
            ):
                deferred.append(net)
                continue
            rows[net.key] = row
            intervals.append((net.leftmost, net.rightmost, net.id))
        unplaced = deferred
    if unplaced:
        raise RowsExhausted(
            f"{len(unplaced)} trunks left unplaced with max_rows={cfg.max_rows}"
        )
    return _assemble(nets, rows, cfg)


def route_left_edge(spec: ChannelSpec, cfg: RouterConfig) -> RoutedChannel:
    """Constrained left-edge routing: pack tracks top-down, each row greedily
    filled left-to-right, never placing a net before its VCG ancestors."""
    nets: Sequence[Net] = nets_of(spec)
    if cfg.dogleg_enabled:
        nets = decompose_multiterminal(nets)
    return _left_edge(nets, cfg)


def route_dogleg(spec: ChannelSpec, cfg: RouterConfig) -> RoutedChannel:
    """Left-edge discipline after splitting multi-terminal nets into chained
    2-terminal subnets; cycles irreducible by splitting still fail."""
    nets = decompose_multiterminal(nets_of(spec))
    return _left_edge(nets, cfg)


def select_row(
    vcg,
    hcg,
    features: FeatureVector,
    tracklist: dict,
    cfg: RouterConfig,
    bank: StrategyBank,
    pending: Net,
) -> Optional[int]:
    """First row in the bank policy's order where the pending trunk overlaps
    no placed trunk and violates no vertical constraint against placed trunks.

    tracklist maps placed net key -> (leftmost, rightmost, row).
    """
    policy = bank.policy_for(features)
    occupied = frozenset(row for (_, _, row) in tracklist.values())
    conflicts = set(hcg.get(pending.key, ()))
    below = set(vcg.get(pending.key, ()))  # must end up strictly below pending
    above = {src for src, dsts in vcg.items() if pending.key in dsts}
    for row in candidate_rows(policy, cfg.max_rows, occupied):
        ok = True
        for key, (_, _, placed_row) in tracklist.items():
            if placed_row == row and key in conflicts:
                ok = False
                break
            if key in above and placed_row <= row:
                ok = False
                break
            if key in below and placed_row >= row:
                ok = False
                break
        if ok:
            return row
    return None


def route_adaptive(spec: ChannelSpec, cfg: RouterConfig, bank: StrategyBank) -> RouteResult:
    """The adaptive router: nets in leftmost order, same-column nets as one
    vertical, otherwise drop/trunk/rise with the next trunk row picked by the
    bank's policy; the first trunk lands on floor(max_rows / 2)."""
    order = _route_order(decompose_multiterminal(nets_of(spec)))
    vcg = build_vcg(order)
    hcg = build_hcg(order)
    density, _ = channel_density(spec)
    features = replace(extract_features(spec), density=density)

    trunk_positions = [i for i, n in enumerate(order) if n.needs_trunk]
    rows: dict = {}
    tracklist: dict = {}
    row = max(cfg.min_row, cfg.max_rows // 2)
    for pos, i in enumerate(trunk_positions):
        net = order[i]
        rows[net.key] = row
        tracklist[net.key] = (net.leftmost, net.rightmost, row)
        if pos + 1 < len(trunk_positions):
            nxt = order[trunk_positions[pos + 1]]
            chosen = select_row(vcg, hcg, features, tracklist, cfg, bank, nxt)
            if chosen is None:
                processed = order[: trunk_positions[pos + 1]]
                return Failure(FAILURE_ROWS_EXHAUSTED, _assemble(processed, rows, cfg))
            row = chosen
    return _assemble(order, rows, cfg)


@dataclass(frozen=True)
class InstanceFamily:
    """Parameters for the random instance generator used in training."""

    min_nets: int = 5
    max_nets: int = 20
    min_columns: int = 10
    max_columns: int = 60
    max_net_terminals: int = 4

    def sample(self, rng: random.Random) -> ChannelSpec:
        from .instances import random_spec

        columns = rng.randint(self.min_columns, self.max_columns)
        upper = max(self.min_nets, min(self.max_nets, columns - 1))
        n_nets = rng.randint(self.min_nets, upper)
        return random_spec(rng, n_nets, columns, max_net_terminals=self.max_net_terminals)


def train_bank(
    family,
    policies: Sequence[RowSelectionPolicy],
    trials: int,
    seed: int = 0,
    bucket_count: int = 5,
    max_rows: Optional[int] = None,
    attempts_per_instance: int = 200,
) -> StrategyBank:
    """Monte Carlo trainer: per (bucket, band) cell, sample instances whose
    features fall in the cell, score every candidate policy on them, and keep
    the one maximizing success rate (ties: fewest mean tracks, then policy
    order).  Cells that never see an instance default to middle_out.
    Deterministic given the seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not policies:
        raise ValueError("need at least one candidate policy")
    sampler: Callable[[random.Random], ChannelSpec]
    sampler = family.sample if hasattr(family, "sample") else family
    rng = random.Random(seed)
    cells: dict[tuple[int, int], tuple[RowSelectionPolicy, float]] = {}
    for bucket in range(bucket_count):
        for band in range(3):
            instances = []
            budget = trials * attempts_per_instance
            while len(instances) < trials and budget > 0:
                budget -= 1
                spec = sampler(rng)
                density, _ = channel_density(spec)
                features = extract_features(spec)
                if (
                    balance_bucket(features.balance, bucket_count) == bucket
                    and density_band(density) == band
                ):
                    instances.append((spec, density))
            if not instances:
                cells[(bucket, band)] = (RowSelectionPolicy(MIDDLE_OUT), 0.0)
                continue
            best = None
            for policy in policies:
                probe = StrategyBank.uniform(policy, bucket_count)
                successes = 0
                track_sum = 0
                for spec, density in instances:
                    cfg = RouterConfig(max_rows=max_rows if max_rows else density + 2)
                    result = route_adaptive(spec, cfg, probe)
                    if isinstance(result, RoutedChannel):
                        successes += 1
                        track_sum += len(result.rows_used)
                rate = successes / len(instances)
                mean_tracks = track_sum / successes if successes else float("inf")
                score = (-rate, mean_tracks)
                if best is None or score < best[0]:
                    best = (score, policy, rate)
            cells[(bucket, band)] = (best[1], best[2])
    return StrategyBank(bucket_count=bucket_count, cells=cells)
