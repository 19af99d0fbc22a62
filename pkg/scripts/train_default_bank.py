#!/usr/bin/env python3
"""Train a strategy bank over the default instance family and write it out.

The resulting file feeds `chanroute route --algorithm adaptive --bank-path`.
"""

import argparse
from pathlib import Path

from chanroute.router import (
    InstanceFamily,
    POLICY_KINDS,
    RowSelectionPolicy,
    train_bank,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("bank_path")
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-nets", type=int, default=20)
    parser.add_argument("--max-columns", type=int, default=60)
    args = parser.parse_args()

    family = InstanceFamily(max_nets=args.max_nets, max_columns=args.max_columns)
    policies = [RowSelectionPolicy(kind) for kind in POLICY_KINDS]
    bank = train_bank(family, policies, trials=args.trials, seed=args.seed)
    Path(args.bank_path).write_text(bank.serialize(), encoding="ascii")
    print(f"wrote {args.bank_path}")
    for cell in sorted(bank.cells):
        policy, weight = bank.cells[cell]
        print(f"  bucket={cell[0]} band={cell[1]} policy={policy.kind} weight={weight:.3f}")


if __name__ == "__main__":
    main()
