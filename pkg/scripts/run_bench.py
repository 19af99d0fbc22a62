#!/usr/bin/env python3
"""Benchmark the three routers over a seeded random suite and print the table.

Equivalent to `chanroute bench` but convenient to edit for one-off sweeps.
"""

import argparse

from chanroute.bench import default_bank, format_table, run_bench


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=6, help="bank training trials per cell")
    args = parser.parse_args()

    bank = default_bank(seed=args.seed + 1, trials=args.trials)
    rows = run_bench(count=args.count, seed=args.seed, bank=bank)
    print(format_table(rows), end="")


if __name__ == "__main__":
    main()
