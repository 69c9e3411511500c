#!/usr/bin/env python3
"""Run the randomized structural audit and print the tally table."""

import argparse

from qmix import check_propositions


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=6)
    parser.add_argument("--trials", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    summary = check_propositions(args.nmax, args.trials, args.seed)
    print(f"{args.trials} trials, dimensions 2..{args.nmax}, seed {args.seed}\n")
    print(f"{'check':<26} {'attempts':>8} {'failures':>8} {'worst residual':>15}")
    for row in summary.rows:
        print(f"{row.name:<26} {row.attempts:>8} {row.failures:>8} {row.worst_residual:>15.3e}")
    print(f"\noverall: {'PASS' if summary.passed else 'FAIL'}")


if __name__ == "__main__":
    main()
