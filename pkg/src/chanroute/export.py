"""Dot, SVG, and report emission for channel instances and routings."""

from __future__ import annotations

from dataclasses import dataclass

from .layout import (
    HORIZONTAL_LAYER,
    Metrics,
    RoutedChannel,
    Segment,
    Violation,
    ShortCircuit,
    Disconnected,
    OutOfBounds,
    WrongOrientation,
    terminal_row,
)
from .netlist import ChannelSpec, TOP, nets_of

PALETTE = (
    "#e41a1c",
    "#377eb8",
    "#4daf4a",
    "#984ea3",
    "#ff7f00",
    "#a65628",
    "#f781bf",
    "#17becf",
)


@dataclass(frozen=True)
class RenderStyle:
    cell_size: int = 24
    palette: tuple[str, ...] = PALETTE
    margin: int = 16

    def __post_init__(self):
        if self.cell_size < 4:
            raise ValueError("cell_size must be >= 4")
        if len(self.palette) < 8:
            raise ValueError("palette needs at least 8 colors")


def _node_name(side: str, column: int) -> str:
    return f"UP{column}" if side == TOP else f"DOWN{column}"


def netlist_to_dot(spec: ChannelSpec) -> str:
    """Undirected terminal-connectivity graph: UP<c>/DOWN<c> nodes, one edge
    between consecutive terminals of each net in column order."""
    lines = ["graph netlist {"]
    for column in range(spec.columns):
        if spec.top[column]:
            lines.append(f"  UP{column};")
        if spec.bottom[column]:
            lines.append(f"  DOWN{column};")
    for net in sorted(nets_of(spec), key=lambda n: n.id):
        # column order, top before bottom at a shared column (matches nodes)
        ts = sorted(net.terminals, key=lambda t: (t.column, 0 if t.side == TOP else 1))
        for a, b in zip(ts, ts[1:]):
            lines.append(f"  {_node_name(a.side, a.column)} -- {_node_name(b.side, b.column)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _key_label(key) -> str:
    if isinstance(key, int):
        return str(key)
    nid, subnet = key
    return str(nid) if subnet == 0 else f"{nid}_{subnet}"


def vcg_to_dot(vcg) -> str:
    """Directed vertical-constraint graph; isolated nodes listed, edges in
    ascending (source, target) order."""
    from .constraints import node_order

    lines = ["digraph vcg {"]
    for key in sorted(vcg, key=node_order):
        lines.append(f"  {_key_label(key)};")
    edges = []
    for src in vcg:
        for dst in vcg[src]:
            edges.append((src, dst))
    edges.sort(key=lambda e: (node_order(e[0]), node_order(e[1])))
    for src, dst in edges:
        lines.append(f"  {_key_label(src)} -> {_key_label(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_svg(spec: ChannelSpec, routed: RoutedChannel, style: RenderStyle = RenderStyle()) -> str:
    """Deterministic SVG rendering: grid group, then one group per net with
    its segments, terminal squares, and via circles."""
    cell = style.cell_size
    margin = style.margin
    max_rows = routed.config.max_rows
    top_row = max_rows + 1
    width = 2 * margin + (spec.columns - 1) * cell
    height = 2 * margin + top_row * cell

    def x(column: int) -> int:
        return margin + column * cell

    def y(row: int) -> int:
        return margin + (top_row - row) * cell

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '  <g id="grid" stroke="#dddddd" stroke-width="1">',
    ]
    for column in range(spec.columns):
        parts.append(
            f'    <line x1="{x(column)}" y1="{y(top_row)}" x2="{x(column)}" y2="{y(0)}" />'
        )
    for row in range(top_row + 1):
        parts.append(
            f'    <line x1="{x(0)}" y1="{y(row)}" x2="{x(spec.columns - 1)}" y2="{y(row)}" />'
        )
    parts.append("  </g>")

    nets = {n.id: n for n in nets_of(spec)}
    for nid in sorted(routed.tracks):
        color = style.palette[nid % len(style.palette)]
        parts.append(f'  <g id="net-{nid}" stroke="{color}" fill="{color}">')
        for seg in routed.tracks[nid]:
            w = 4 if seg.layer == HORIZONTAL_LAYER else 2
            parts.append(
                f'    <line x1="{x(seg.p0[0])}" y1="{y(seg.p0[1])}" '
                f'x2="{x(seg.p1[0])}" y2="{y(seg.p1[1])}" stroke-width="{w}" />'
            )
        half = cell // 4
        for t in nets[nid].terminals:
            row = terminal_row(t.side, max_rows)
            parts.append(
                f'    <rect x="{x(t.column) - half}" y="{y(row) - half}" '
                f'width="{2 * half}" height="{2 * half}" stroke="none" />'
            )
        for via in routed.vias.get(nid, ()):
            parts.append(
                f'    <circle cx="{x(via.at[0])}" cy="{y(via.at[1])}" r="{cell // 6}" '
                f'stroke="none" />'
            )
        parts.append("  </g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def violation_line(v: Violation) -> str:
    if isinstance(v, ShortCircuit):
        return (
            f"ShortCircuit net_a={v.net_a} net_b={v.net_b} "
            f"point=({v.point[0]},{v.point[1]}) layer={v.layer}"
        )
    if isinstance(v, Disconnected):
        where = "floating" if v.terminal is None else f"{v.terminal.side}:{v.terminal.column}"
        return f"Disconnected net={v.net} terminal={where}"
    if isinstance(v, OutOfBounds):
        return f"OutOfBounds net={v.net} segment={_segment_label(v.segment)}"
    if isinstance(v, WrongOrientation):
        return f"WrongOrientation net={v.net} segment={_segment_label(v.segment)}"
    raise TypeError(f"unknown violation {v!r}")


def _segment_label(seg: Segment) -> str:
    return f"[{seg.layer},({seg.p0[0]},{seg.p0[1]}),({seg.p1[0]},{seg.p1[1]})]"


def report(
    spec: ChannelSpec,
    routed: RoutedChannel | None,
    m: Metrics | None,
    violations: list[Violation],
    router_name: str = "",
    density: int | None = None,
    status: str = "success",
    failure_reason: str = "",
) -> str:
    """Machine-readable key-value report with a fixed key order."""
    lines = [
        "report: chanroute v1",
        f"instance.columns: {spec.columns}",
        f"instance.net_count: {len(spec.net_ids)}",
        f"instance.terminal_count: {spec.terminal_count}",
    ]
    if density is not None:
        lines.append(f"instance.density: {density}")
    lines.append(f"router.name: {router_name}")
    if routed is not None:
        lines.append(f"router.max_rows: {routed.config.max_rows}")
        lines.append(f"router.seed: {routed.config.seed}")
    lines.append(f"status: {status}")
    if failure_reason:
        lines.append(f"failure.reason: {failure_reason}")
    if m is not None:
        lines.append(f"metrics.layers_used: {m.layers_used}")
        lines.append(f"metrics.tracks_used: {m.tracks_used}")
        lines.append(f"metrics.total_length: {m.total_length}")
        lines.append(f"metrics.via_count: {m.via_count}")
    lines.append(f"violations.count: {len(violations)}")
    for i, v in enumerate(violations):
        lines.append(f"violation.{i}: {violation_line(v)}")
    return "\n".join(lines) + "\n"
