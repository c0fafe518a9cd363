#!/usr/bin/env python3
"""Render E2/E3 pages and total-degree verdicts for a family of base groups.

Example:
    python3 scripts/page_survey.py --spectrum SW --total-degree 5 \
        --groups Z/2 Z/4 Z/8 --twist-point
"""

import argparse

from surfcond.abelian import FinAbGroup, parse_group
from surfcond.ahss import apply_d2, assemble_e2, page_to_dict, render_page_text, run_ahss
from surfcond.coefficients import spectrum
from surfcond.em_cohomology import EmSpace


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spectrum", default="SW", choices=["SH", "SW", "Spin"])
    ap.add_argument("--space-degree", type=int, default=2)
    ap.add_argument("--total-degree", type=int, default=5)
    ap.add_argument("--groups", nargs="+", default=["Z/2", "Z/4", "Z/8"])
    ap.add_argument("--d5", choices=["zero"], default="zero")
    ap.add_argument(
        "--twist-point",
        action="store_true",
        help="also run the fermion-parity-twisted sequence over K(Z/2, 2)",
    )
    args = ap.parse_args()

    for literal in args.groups:
        E = parse_group(literal)
        e2 = assemble_e2(
            EmSpace.from_group(E, args.space_degree),
            spectrum(args.spectrum),
            args.total_degree,
        )
        e3 = apply_d2(e2)
        print(render_page_text(page_to_dict(e2)))
        print()
        print(render_page_text(page_to_dict(e3)))
        _page, report = run_ahss(
            E, args.space_degree, args.spectrum, args.total_degree,
            d5_zero=args.d5 == "zero",
        )
        print(f"total degree {args.total_degree} verdict for {E}: {report.verdict}")
        print("-" * 60)

    if args.twist_point:
        page3, report = run_ahss(
            FinAbGroup.cyclic(2), 2, "SW", args.total_degree,
            twist=True, d5_zero=args.d5 == "zero",
        )
        print(render_page_text(page_to_dict(page3)))
        print(f"twisted total degree {args.total_degree} verdict: {report.verdict}")


if __name__ == "__main__":
    main()
