"""Comparative benchmark: the three routers plus fixed-policy variants of the
adaptive router over a seeded random suite."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .constraints import channel_density
from .instances import random_suite
from .layout import RoutedChannel, metrics
from .netlist import ChannelSpec
from .router import (
    InstanceFamily,
    POLICY_KINDS,
    RouterConfig,
    RowSelectionPolicy,
    RoutingError,
    StrategyBank,
    route_adaptive,
    route_dogleg,
    route_left_edge,
    train_bank,
)


@dataclass(frozen=True)
class BenchRow:
    name: str
    attempts: int
    successes: int
    mean_tracks: float
    mean_length: float
    mean_vias: float

    @property
    def success_rate(self) -> float:
        return self.successes / self.attempts if self.attempts else 0.0


def default_bank(seed: int = 0, trials: int = 6) -> StrategyBank:
    """Small deterministic training run over the full policy portfolio."""
    policies = [RowSelectionPolicy(kind) for kind in POLICY_KINDS]
    return train_bank(InstanceFamily(), policies, trials=trials, seed=seed)


def _tally(name: str, outcomes: list[Optional[RoutedChannel]]) -> BenchRow:
    routed = [r for r in outcomes if r is not None]
    ms = [metrics(r) for r in routed]
    n = len(ms)
    return BenchRow(
        name=name,
        attempts=len(outcomes),
        successes=n,
        mean_tracks=sum(m.tracks_used for m in ms) / n if n else 0.0,
        mean_length=sum(m.total_length for m in ms) / n if n else 0.0,
        mean_vias=sum(m.via_count for m in ms) / n if n else 0.0,
    )


def run_bench(
    count: int = 200,
    seed: int = 0,
    bank: Optional[StrategyBank] = None,
    specs: Optional[Sequence[ChannelSpec]] = None,
) -> list[BenchRow]:
    """Run every router over the suite and tally per-router statistics.

    Routing errors (cycles, exhausted rows) count as failures for that
    router; successes feed the metric means.
    """
    if bank is None:
        bank = default_bank(seed=seed + 1)
    if specs is None:
        specs = list(random_suite(count, seed))
    fixed_banks = {kind: StrategyBank.uniform(RowSelectionPolicy(kind)) for kind in POLICY_KINDS}

    outcomes: dict[str, list[Optional[RoutedChannel]]] = {
        name: [] for name in ["left-edge", "dogleg", "adaptive"]
        + [f"adaptive[{kind}]" for kind in POLICY_KINDS]
    }
    for spec in specs:
        density, _ = channel_density(spec)
        cfg = RouterConfig(max_rows=max(1, density + 2))
        try:
            outcomes["left-edge"].append(route_left_edge(spec, cfg))
        except RoutingError:
            outcomes["left-edge"].append(None)
        try:
            outcomes["dogleg"].append(route_dogleg(spec, cfg))
        except RoutingError:
            outcomes["dogleg"].append(None)
        for name, b in [("adaptive", bank)] + [
            (f"adaptive[{kind}]", fixed_banks[kind]) for kind in POLICY_KINDS
        ]:
            result = route_adaptive(spec, cfg, b)
            outcomes[name].append(result if isinstance(result, RoutedChannel) else None)

    return [_tally(name, runs) for name, runs in outcomes.items()]


def format_table(rows: Sequence[BenchRow]) -> str:
    header = (
        f"{'router':28s} {'runs':>6s} {'success':>8s} "
        f"{'mean_tracks':>12s} {'mean_length':>12s} {'mean_vias':>10s}"
    )
    lines = [header, "-" * len(header)]
    for row in rows:
        lines.append(
            f"{row.name:28s} {row.attempts:6d} {row.success_rate:8.4f} "
            f"{row.mean_tracks:12.3f} {row.mean_length:12.3f} {row.mean_vias:10.3f}"
        )
    adaptive = next((r for r in rows if r.name == "adaptive"), None)
    fixed = [r for r in rows if r.name.startswith("adaptive[")]
    if adaptive and fixed:
        worst = min(r.success_rate for r in fixed)
        ok = "yes" if adaptive.success_rate >= worst else "NO"
        lines.append(
            f"portfolio_dominance: adaptive={adaptive.success_rate:.4f} "
            f"worst_fixed={worst:.4f} ok={ok}"
        )
    return "\n".join(lines) + "\n"
