"""Command-line front end.

Every subcommand builds a JSON-able payload {command, inputs, provenance,
result} first; the human-readable text is rendered from that payload alone,
so a --json dump re-rendered through the same functions reproduces the text
output byte for byte.

Exit codes: 0 success, 2 parse error, 3 unsupported range or missing table
data, 4 inconclusive (undetermined differential).
"""

from __future__ import annotations

import argparse
import json
import sys

from .abelian import BudgetError, FinAbGroup, UnsupportedRangeError, parse_group
from .ahss import (
    apply_d2,
    assemble_e2,
    page_to_dict,
    product_split,
    render_page_text,
    run_ahss,
)
from .coefficients import CoeffOverrides, UnspecifiedComparisonError, spectrum
from .condense import (
    SkeletalCategory,
    condense_group_algebra,
    condense_phi,
    obstruction_verdict,
    parse_descriptor,
)
from .em_cohomology import CapExceededError, EmSpace, algebra_for
from .steenrod import adem_normalize, excess, parse_word

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_UNSUPPORTED = 3
EXIT_INCONCLUSIVE = 4


def _payload(command: str, inputs: dict, provenance: list[str], result: dict) -> dict:
    return {"command": command, "inputs": inputs, "provenance": provenance, "result": result}


# ---------------------------------------------------------------------------
# Renderers (consume payload dicts only)


def render_emcoh(payload: dict) -> str:
    r = payload["result"]
    lines = [f"H*(K({payload['inputs']['group']},{payload['inputs']['space_degree']}); Z2)"]
    lines.append("generators:")
    if not r["generators"]:
        lines.append("  (none: unit algebra)")
    for g in r["generators"]:
        lines.append(f"  {g['name']}  (degree {g['degree']})")
    series = ",".join(str(d) for d in r["poincare_series"])
    lines.append(f"poincare series: {series}")
    return "\n".join(lines)


def render_steenrod(payload: dict) -> str:
    r = payload["result"]
    lines = [f"input:      {payload['inputs']['word']}"]
    lines.append(f"admissible: {r['admissible_form']}")
    lines.append(f"degree:     {r['degree']}")
    if r["excess"] is not None:
        lines.append(f"excess:     {r['excess']}")
    return "\n".join(lines)


def render_ahss(payload: dict) -> str:
    r = payload["result"]
    lines = []
    if "pages" in r:
        for dump in r["pages"]:
            lines.append(render_page_text(dump))
            lines.append("")
    if "entries" in r:
        lines.append(f"total degree {r['total_degree']} survivors:")
        for e in r["entries"]:
            lines.append(f"  ({e['i']},{e['j']}): {e['group']}")
    if "summands" in r:
        lines.append("product split:")
        for s in r["summands"]:
            note = f"  [{s['note']}]" if s.get("note") else ""
            grp = s["group"] if s["group"] is not None else "-"
            lines.append(f"  {s['summand']}: {s['status']} {grp}{note}")
    for b in r.get("blockers", []):
        lines.append(f"blocker: {b}")
    lines.append(f"verdict: {r['verdict']}")
    return "\n".join(lines)


def render_obstruction(payload: dict) -> str:
    r = payload["result"]
    lines = [f"branch:  {r['branch']}", f"verdict: {r['verdict']}"]
    if r["group"] is not None:
        lines.append(f"group:   {r['group']}")
    return "\n".join(lines)


def render_condense(payload: dict) -> str:
    r = payload["result"]
    return "\n".join(
        [
            f"before: {r['before']}",
            f"after:  {r['after']}",
            f"components: {r['components']}",
        ]
    )


def render_selftest(payload: dict) -> str:
    lines = []
    for c in payload["result"]["checks"]:
        status = "PASS" if c["ok"] else "FAIL"
        lines.append(f"{status} [{c['seconds']:.2f}s] {c['name']}: {c['detail']}")
    lines.append(f"result: {payload['result']['verdict']}")
    return "\n".join(lines)


RENDERERS = {
    "emcoh": render_emcoh,
    "steenrod": render_steenrod,
    "ahss": render_ahss,
    "obstruction": render_obstruction,
    "condense": render_condense,
    "selftest": render_selftest,
}


def render_payload(payload: dict) -> str:
    return RENDERERS[payload["command"]](payload)


# ---------------------------------------------------------------------------
# Subcommand implementations


def _cmd_emcoh(args) -> tuple[dict, int]:
    E = parse_group(args.group)
    space = EmSpace.from_group(E, args.space_degree)
    alg = algebra_for(space, max(args.max_degree, args.space_degree))
    gens = [
        {"name": alg.generator_name(gi), "degree": g.degree}
        for gi, g in enumerate(alg.generators)
        if g.degree <= args.max_degree
    ]
    series = [alg.dimension(d) for d in range(args.max_degree + 1)]
    result = {"generators": gens, "poincare_series": series}
    prov = ["generators from admissible words of excess below the space degree [computed]"]
    return _payload(
        "emcoh",
        {"group": str(E), "space_degree": args.space_degree, "max_degree": args.max_degree},
        prov,
        result,
    ), EXIT_OK


def _cmd_steenrod(args) -> tuple[dict, int]:
    word = parse_word(args.word)
    normal = adem_normalize(word)
    monos = normal.sorted_monomials()
    exc = excess(monos[0]) if len(monos) == 1 else None
    result = {
        "admissible_form": str(normal),
        "degree": normal.degree if not normal.is_zero else word.degree,
        "excess": exc,
    }
    return _payload(
        "steenrod", {"word": args.word}, ["Adem normalization [computed]"], result
    ), EXIT_OK


def _cmd_ahss(args) -> tuple[dict, int]:
    E = parse_group(args.group)
    overrides = CoeffOverrides.load(args.coeff_overrides) if args.coeff_overrides else None
    twist = args.twist == "fermion-parity"
    d5_zero = args.d5 == "zero"
    inputs = {
        "spectrum": args.spectrum,
        "group": str(E),
        "space_degree": args.space_degree,
        "total_degree": args.total_degree,
        "twist": args.twist,
        "d5": args.d5,
    }
    even = sum(1 for d in E.invariant_factors if d % 2 == 0)
    if even > 1:
        split = product_split(E, args.spectrum, args.space_degree, args.total_degree, overrides)
        prov = ["assembled from point, reduced-factor, and smash summands [computed]"]
        code = EXIT_OK if split["verdict"] not in ("inconclusive",) else EXIT_INCONCLUSIVE
        return _payload("ahss", inputs, prov, split), code
    page, report = run_ahss(
        E, args.space_degree, args.spectrum, args.total_degree,
        twist=twist, d5_zero=d5_zero, overrides=overrides,
    )
    result = report.to_dict()
    result["verdict"] = report.verdict
    if args.dump_pages:
        e2 = assemble_e2(
            EmSpace.from_group(E, args.space_degree), page.spectrum, args.total_degree, overrides
        )
        dumps = [page_to_dict(e2), page_to_dict(page)]
        with open(args.dump_pages, "w") as fh:
            json.dump(dumps, fh, indent=2)
        result["pages"] = dumps
    prov = list(report.provenance)
    code = EXIT_INCONCLUSIVE if report.inconclusive else EXIT_OK
    return _payload("ahss", inputs, prov, result), code


def _cmd_obstruction(args) -> tuple[dict, int]:
    E = parse_group(args.group)
    v = obstruction_verdict(E, args.statistic, args.level)
    inputs = {"group": str(E), "statistic": args.statistic, "level": args.level}
    return _payload("obstruction", inputs, list(v.provenance), v.to_dict()), EXIT_OK


def _cmd_condense(args) -> tuple[dict, int]:
    if args.descriptor:
        cat = parse_descriptor(args.descriptor)
    else:
        pi0 = parse_group(args.pi0) if args.pi0 else None
        cat = SkeletalCategory(
            args.level, "bosonic", args.id if args.phi else "2Vec", pi0=pi0
        )
    if args.phi:
        after = condense_phi(cat)
        prov = ["function algebra on the 2Rep identity component condensed [computed]"]
    elif args.algebra is not None:
        after = condense_group_algebra(cat, args.algebra)
        prov = ["group algebra condensed; components are translation orbits [computed]"]
    else:
        after = cat
        prov = ["no algebra given; category unchanged"]
    result = {
        "before": cat.describe(),
        "after": after.describe(),
        "components": after.n_components,
    }
    inputs = {
        "pi0": args.pi0,
        "algebra": args.algebra,
        "phi": args.phi,
        "descriptor": args.descriptor,
        "level": args.level,
        "id": args.id,
    }
    return _payload("condense", inputs, prov, result), EXIT_OK


def _cmd_selftest(args) -> tuple[dict, int]:
    from .acceptance import run_all

    results = run_all()
    checks = [
        {"name": r.name, "ok": r.ok, "detail": r.detail, "seconds": r.seconds}
        for r in results
    ]
    ok = all(r.ok for r in results)
    result = {"checks": checks, "verdict": "all checks passed" if ok else "FAILURES"}
    return _payload("selftest", {}, [], result), (EXIT_OK if ok else 1)


# ---------------------------------------------------------------------------
# Argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="surfcond",
        description="Obstruction computations for condensing surface-operator symmetries.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("emcoh", help="mod-2 cohomology of an Eilenberg-MacLane space")
    e.add_argument("--group", required=True)
    e.add_argument("--space-degree", type=int, required=True)
    e.add_argument("--max-degree", type=int, required=True)
    e.add_argument("--json", action="store_true")

    s = sub.add_parser("steenrod", help="Adem-normalize a Steenrod word")
    s.add_argument("--word", required=True)
    s.add_argument("--json", action="store_true")

    a = sub.add_parser("ahss", help="spectral sequence run in one total degree")
    a.add_argument("--spectrum", required=True, choices=["SH", "SW", "Spin"])
    a.add_argument("--group", required=True)
    a.add_argument("--space-degree", type=int, required=True)
    a.add_argument("--total-degree", type=int, required=True)
    a.add_argument("--twist", choices=["fermion-parity"])
    a.add_argument("--d5", choices=["zero"])
    a.add_argument("--dump-pages", metavar="PATH")
    a.add_argument("--coeff-overrides", metavar="PATH")
    a.add_argument("--json", action="store_true")

    o = sub.add_parser("obstruction", help="condensation obstruction verdict")
    o.add_argument("--group", required=True)
    o.add_argument("--statistic", required=True, choices=["bosonic", "fermionic"])
    o.add_argument("--level", required=True, choices=["braided", "symmetric"])
    o.add_argument("--json", action="store_true")

    c = sub.add_parser("condense", help="component-level condensation")
    c.add_argument("--pi0")
    c.add_argument("--algebra")
    c.add_argument("--phi", action="store_true")
    c.add_argument("--descriptor")
    c.add_argument("--level", default="fusion")
    c.add_argument("--id", default="2Rep(G)")
    c.add_argument("--json", action="store_true")

    t = sub.add_parser("selftest", help="run the acceptance suite")
    t.add_argument("--json", action="store_true")
    return p


COMMANDS = {
    "emcoh": _cmd_emcoh,
    "steenrod": _cmd_steenrod,
    "ahss": _cmd_ahss,
    "obstruction": _cmd_obstruction,
    "condense": _cmd_condense,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, code = COMMANDS[args.command](args)
    except (UnsupportedRangeError, UnspecifiedComparisonError, CapExceededError, BudgetError) as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(render_payload(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
