#!/usr/bin/env python3
"""Tabulate condensation-obstruction verdicts over a range of component groups.

Example:
    python3 scripts/obstruction_survey.py --max-order 8
"""

import argparse
import itertools

from surfcond.abelian import FinAbGroup
from surfcond.condense import obstruction_verdict


def small_groups(max_order: int):
    seen = set()
    for r in (1, 2):
        for factors in itertools.product(range(2, max_order + 1), repeat=r):
            G = FinAbGroup.from_factors(factors)
            if 1 < G.order <= max_order and G not in seen:
                seen.add(G)
                yield G


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-order", type=int, default=8)
    ap.add_argument("--statistic", default="fermionic", choices=["bosonic", "fermionic"])
    ap.add_argument("--level", default="braided", choices=["braided", "symmetric"])
    args = ap.parse_args()

    groups = sorted(small_groups(args.max_order), key=lambda G: (G.order, G.invariant_factors))
    width = max(len(str(G)) for G in groups)
    print(f"{args.level} / {args.statistic}")
    for G in groups:
        v = obstruction_verdict(G, args.statistic, args.level)
        print(f"  {str(G):<{width}}  [{v.branch}]  {v.verdict}")


if __name__ == "__main__":
    main()
