"""Command-line driver: route, analyze, train, and bench subcommands."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from .bench import default_bank, format_table, run_bench
from .constraints import analyze as analyze_constraints
from .constraints import find_vcg_cycle
from .export import RenderStyle, netlist_to_dot, render_svg, report, vcg_to_dot
from .layout import RoutedChannel, metrics, validate
from .netlist import NetlistError, extract_features, parse_netlist
from .router import (
    BankFormatError,
    Failure,
    InstanceFamily,
    MIDDLE_OUT,
    POLICY_KINDS,
    RouterConfig,
    RowSelectionPolicy,
    RoutingError,
    StrategyBank,
    parse_bank,
    route_adaptive,
    route_dogleg,
    route_left_edge,
    train_bank,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ROUTING_FAILED = 2
EXIT_INVALID_ROUTING = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chanroute", description="Channel routing toolkit"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_route = sub.add_parser("route", help="route a .netlist instance")
    p_route.add_argument("input_path")
    p_route.add_argument(
        "--algorithm", choices=["left-edge", "dogleg", "adaptive"], default="adaptive"
    )
    p_route.add_argument("--bank-path", default=None)
    p_route.add_argument("--max-rows", type=int, default=None)
    p_route.add_argument("--svg-out", default=None)
    p_route.add_argument("--dot-out", default=None)
    p_route.add_argument("--report-out", default=None)
    p_route.add_argument("--seed", type=int, default=0)

    p_analyze = sub.add_parser("analyze", help="constraint-graph analysis")
    p_analyze.add_argument("input_path")
    p_analyze.add_argument("--dot-out", default=None, help="write the VCG in dot format")
    p_analyze.add_argument("--report-out", default=None)

    p_train = sub.add_parser("train", help="train a strategy bank")
    p_train.add_argument("--bank-path", required=True)
    p_train.add_argument("--trials", type=int, default=20)
    p_train.add_argument("--seed", type=int, default=0)
    p_train.add_argument("--min-nets", type=int, default=5)
    p_train.add_argument("--max-nets", type=int, default=20)
    p_train.add_argument("--min-columns", type=int, default=10)
    p_train.add_argument("--max-columns", type=int, default=60)

    p_bench = sub.add_parser("bench", help="compare routers on a random suite")
    p_bench.add_argument("--count", type=int, default=200)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--bank-path", default=None)
    return parser


def _fail(message: str) -> int:
    print(f"chanroute: {message}", file=sys.stderr)
    return EXIT_USAGE


def _read_spec(path: str):
    text = Path(path).read_text(encoding="ascii")
    return parse_netlist(text)


def _cmd_route(args) -> int:
    try:
        spec = _read_spec(args.input_path)
    except OSError as e:
        return _fail(str(e))
    except NetlistError as e:
        return _fail(f"bad netlist: {e}")

    graphs = analyze_constraints(spec)
    max_rows = args.max_rows if args.max_rows is not None else max(1, graphs.density + 2)
    cfg = RouterConfig(
        max_rows=max_rows, seed=args.seed, dogleg_enabled=args.algorithm == "dogleg"
    )

    routed: Optional[RoutedChannel] = None
    status = "success"
    failure_reason = ""
    if args.algorithm == "adaptive":
        if args.bank_path:
            try:
                bank = parse_bank(Path(args.bank_path).read_text(encoding="ascii"))
            except (OSError, BankFormatError) as e:
                return _fail(f"bad bank: {e}")
        else:
            bank = StrategyBank.uniform(RowSelectionPolicy(MIDDLE_OUT))
        result = route_adaptive(spec, cfg, bank)
        if isinstance(result, Failure):
            status = "failure"
            failure_reason = result.reason
            routed = result.routed_so_far
        else:
            routed = result
    else:
        router = route_left_edge if args.algorithm == "left-edge" else route_dogleg
        try:
            routed = router(spec, cfg)
        except RoutingError as e:
            status = "failure"
            failure_reason = f"{type(e).__name__}: {e}"

    violations = validate(spec, routed) if routed is not None else []
    m = metrics(routed) if routed is not None else None

    try:
        if args.dot_out:
            Path(args.dot_out).write_text(netlist_to_dot(spec), encoding="ascii")
        if args.svg_out and routed is not None:
            Path(args.svg_out).write_text(render_svg(spec, routed, RenderStyle()), encoding="ascii")
        if args.report_out:
            Path(args.report_out).write_text(
                report(
                    spec,
                    routed,
                    m,
                    violations,
                    router_name=args.algorithm,
                    density=graphs.density,
                    status=status if not violations else "invalid",
                    failure_reason=failure_reason,
                ),
                encoding="ascii",
            )
    except OSError as e:
        return _fail(str(e))

    if status == "failure":
        print(f"chanroute: routing failed: {failure_reason}", file=sys.stderr)
        return EXIT_ROUTING_FAILED
    if violations:
        print(f"chanroute: routing has {len(violations)} violations", file=sys.stderr)
        return EXIT_INVALID_ROUTING
    return EXIT_OK


def _cmd_analyze(args) -> int:
    try:
        spec = _read_spec(args.input_path)
    except OSError as e:
        return _fail(str(e))
    except NetlistError as e:
        return _fail(f"bad netlist: {e}")

    graphs = analyze_constraints(spec)
    cycle = find_vcg_cycle(graphs.vcg)
    features = extract_features(spec)
    hcg_edges = sum(len(v) for v in graphs.hcg.values()) // 2
    vcg_edges = sum(len(v) for v in graphs.vcg.values())
    lines = [
        f"columns: {spec.columns}",
        f"nets: {len(spec.net_ids)}",
        f"terminals: {spec.terminal_count}",
        f"density: {graphs.density}",
        f"density_column: {graphs.density_column}",
        f"hcg_edges: {hcg_edges}",
        f"vcg_edges: {vcg_edges}",
        f"vcg_cycle: {cycle if cycle is not None else 'none'}",
        f"features.left_count: {features.left_count}",
        f"features.right_count: {features.right_count}",
        f"features.balance: {features.balance:.6f}",
    ]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    try:
        if args.dot_out:
            Path(args.dot_out).write_text(vcg_to_dot(graphs.vcg), encoding="ascii")
        if args.report_out:
            Path(args.report_out).write_text(text, encoding="ascii")
    except OSError as e:
        return _fail(str(e))
    return EXIT_OK


def _cmd_train(args) -> int:
    family = InstanceFamily(
        min_nets=args.min_nets,
        max_nets=args.max_nets,
        min_columns=args.min_columns,
        max_columns=args.max_columns,
    )
    policies = [RowSelectionPolicy(kind) for kind in POLICY_KINDS]
    bank = train_bank(family, policies, trials=args.trials, seed=args.seed)
    try:
        Path(args.bank_path).write_text(bank.serialize(), encoding="ascii")
    except OSError as e:
        return _fail(str(e))
    print(f"wrote {args.bank_path}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.bank_path:
        try:
            bank = parse_bank(Path(args.bank_path).read_text(encoding="ascii"))
        except (OSError, BankFormatError) as e:
            return _fail(f"bad bank: {e}")
    else:
        bank = default_bank(seed=args.seed + 1)
    rows = run_bench(count=args.count, seed=args.seed, bank=bank)
    print(format_table(rows), end="")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "route": _cmd_route,
        "analyze": _cmd_analyze,
        "train": _cmd_train,
        "bench": _cmd_bench,
    }
    return handlers[args.subcommand](args)


if __name__ == "__main__":
    sys.exit(main())
