"""First-quadrant Atiyah-Hirzebruch spectral sequence engine.

Assembles E2 pages H^i(X; h^j(pt)) for Eilenberg-MacLane bases, applies the
d2 differentials (Sq2 between mod-2 rows, its exponential (-1)^(...) variant
into the circle row, and the fermion-parity twists Sq2 + iota*(-)), and
reports the associated graded group in a chosen total degree.

Model boundary: differentials of length r >= 3 between computed rows carry
no new information in the tabulated range and are treated as zero; outgoing
differentials from opaque entries (the Witt-group row) are genuinely unknown
and must be declared, otherwise the report is inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import (
    FinAbGroup,
    GroupExpr,
    UnsupportedRangeError,
    quotient_by_subgroup_image,
)
from .coefficients import CircleRow, CoeffOverrides, SpectrumTable, circle_row, spectrum
from .em_cohomology import EmSpace, _two_part, algebra_for, reduced_smash_basis
from .gf2 import Echelon, Gf2Matrix
from .steenrod import SqModule, margolis_homology


@dataclass(frozen=True)
class Entry:
    i: int
    j: int
    expr: GroupExpr | None  # None = not tabulated
    basis: tuple[str, ...] = ()

    @property
    def known(self) -> bool:
        return self.expr is not None

    def group_str(self) -> str:
        return "?" if self.expr is None else str(self.expr)


@dataclass
class Page:
    number: int
    space: EmSpace
    E: FinAbGroup
    n: int
    spectrum: SpectrumTable
    max_total: int
    entries: dict[tuple[int, int], Entry]
    circle: CircleRow
    algebra: object
    log: list[dict] = field(default_factory=list)
    declarations: list[dict] = field(default_factory=list)
    computed_totals: frozenset[int] = frozenset()

    def entry(self, i: int, j: int) -> Entry:
        e = self.entries.get((i, j))
        if e is None:
            if 0 <= i and 0 <= j and i + j <= self.max_total:
                raise UnsupportedRangeError(f"entry ({i},{j}) missing from page")
            return Entry(i, j, GroupExpr.zero())
        return e

    def row_kind(self, j: int) -> str:
        return _row_kind(self.spectrum, j)


def _row_kind(spec_table: SpectrumTable, j: int) -> str:
    coeff = spec_table.entry(j)
    if coeff.is_zero:
        return "zero"
    if coeff.is_opaque:
        if coeff.circle_rank or not coeff.finite.is_trivial:
            raise UnsupportedRangeError(f"mixed opaque coefficient row {coeff}")
        return "opaque"
    if coeff.circle_rank == 1 and coeff.finite.is_trivial:
        return "circle"
    if coeff.circle_rank == 0 and coeff.finite == FinAbGroup((2,)):
        return "z2"
    raise UnsupportedRangeError(f"coefficient row {coeff} has no differential rule")


def _space_group_degree(space: EmSpace) -> tuple[FinAbGroup, int]:
    degrees = {n for _m, n in space.factors}
    if len(degrees) > 1:
        raise UnsupportedRangeError("mixed space degrees; use product_split")
    n = degrees.pop() if degrees else 2
    E = FinAbGroup.from_factors([m for m, _n in space.factors])
    return E, n


def assemble_e2(
    space: EmSpace,
    spec_table: SpectrumTable,
    max_total_degree: int,
    overrides: CoeffOverrides | None = None,
) -> Page:
    """E2 page H^i(X; h^j(pt)) for i + j <= max_total_degree.

    Mod-2 rows carry computed monomial bases; the circle row comes from the
    known-value tables; opaque rows carry the symbol at i = 0 and its
    hom(-, Z2) companion at i = 2.  Bases with more than one 2-primary
    factor are out of scope here (product_split handles them).
    """
    E, n = _space_group_degree(space)
    if sum(1 for m, _n in space.factors if m % 2 == 0) > 1:
        raise UnsupportedRangeError(
            "more than one 2-primary factor; decompose via product_split"
        )
    if spec_table.max_degree < max_total_degree:
        raise UnsupportedRangeError(
            f"{spec_table.name} coefficients stop below degree {max_total_degree}"
        )
    algebra = algebra_for(space, max_total_degree + 2)
    circle = circle_row(E, n, overrides)
    entries: dict[tuple[int, int], Entry] = {}
    log: list[dict] = []
    for j in range(max_total_degree + 1):
        kind = _row_kind(spec_table, j)
        for i in range(max_total_degree - j + 1):
            if kind == "zero":
                entries[(i, j)] = Entry(i, j, GroupExpr.zero())
            elif kind == "z2":
                names = tuple(algebra.format_monomial(m) for m in algebra.basis(i))
                entries[(i, j)] = Entry(
                    i, j, GroupExpr.of(FinAbGroup((2,) * len(names))), names
                )
            elif kind == "circle":
                if not circle.has_entry(i):
                    raise UnsupportedRangeError(
                        f"missing circle-row data at ({i},{j}) within range"
                    )
                entries[(i, j)] = Entry(i, j, circle.entry(i))
            else:  # opaque
                entries[(i, j)] = _opaque_entry(i, j, spec_table, algebra)
    for j, note in enumerate(spec_table.provenance[: max_total_degree + 1]):
        log.append({"kind": "coefficient", "j": j, "note": note})
    for i in sorted(circle.provenance):
        if i <= max_total_degree:
            log.append({"kind": "circle_row", "i": i, "note": circle.provenance[i]})
    if overrides:
        for note in overrides.notes:
            log.append({"kind": "override", "note": note})
    return Page(2, space, E, n, spec_table, max_total_degree, entries, circle, algebra, log)


def _opaque_entry(i: int, j: int, spec_table: SpectrumTable, algebra) -> Entry:
    symbol = spec_table.entry(j)
    if i == 0:
        return Entry(i, j, symbol)
    dim = algebra.dimension(i)
    if dim == 0:
        return Entry(i, j, GroupExpr.zero())
    if i == 2 and dim == 1 and symbol.opaque == ("SW",):
        # hom(SW, Z2) companion entry
        return Entry(i, j, GroupExpr.symbol("SW2"))
    return Entry(i, j, None)


# ---------------------------------------------------------------------------
# d2 and the E3 page


def _order2_bits(group: FinAbGroup, elt: tuple[int, ...]) -> int:
    bits = 0
    for pos, (c, d) in enumerate(zip(elt, group.invariant_factors)):
        if c == 0:
            continue
        if d % 2 or c != d // 2:
            raise ValueError(f"comparison image {elt} is not 2-torsion in {group}")
        bits |= 1 << pos
    return bits


def apply_d2(page: Page, twisted: bool | None = None) -> Page:
    """Turn the page once: E3 entries in the target total degree.

    Differentials with source in total degrees max_total - 1 and max_total
    are evaluated; that is exactly what the report in degree max_total
    consumes, and it keeps the engine away from untabulated circle entries
    (a zero image never needs its target group).  d2 composed with itself is
    asserted zero on every evaluated chain.
    """
    if page.number != 2:
        raise ValueError("apply_d2 expects an E2 page")
    tw = page.spectrum.twisted if twisted is None else twisted
    alg = page.algebra
    N = page.max_total
    twist_cls = None
    if tw:
        if page.n != 2:
            raise UnsupportedRangeError("fermion-parity twist needs a degree-2 base")
        twist_cls = alg.fundamental_class()

    def dcls(x):
        y = alg.sq(2, x)
        if tw:
            y = y + (twist_cls * x)
        return y

    rule_to_z2 = "sq2_twisted" if tw else "sq2"
    rule_to_circle = "exp_sq2_twisted" if tw else "exp_sq2"
    log = list(page.log)
    entries = dict(page.entries)

    def z2_matrix(i: int) -> Gf2Matrix:
        rows = [alg.coordinates(dcls(alg.monomial_class(m))) for m in alg.basis(i)]
        return Gf2Matrix.from_rows(rows, alg.dimension(i + 2))

    def circle_images(i: int) -> list[tuple[int, ...] | None]:
        out = []
        for m in alg.basis(i):
            y = dcls(alg.monomial_class(m))
            if y.is_zero:
                out.append(None)
            else:
                out.append(page.circle.comparison_image(alg, i + 2, y))
        return out

    def rank_of_images(i_target: int, images) -> int:
        live = [e for e in images if e is not None]
        if not live:
            return 0
        group = page.circle.entry(i_target).finite
        mat = Gf2Matrix.from_rows(
            [0 if e is None else _order2_bits(group, e) for e in images],
            len(group.invariant_factors),
        )
        return mat.rank()

    def record(i, j, rank, rule):
        log.append(
            {
                "kind": "d2",
                "source": [i, j],
                "target": [i + 2, j - 1],
                "rank": rank,
                "rule": rule,
            }
        )

    checked_chains = 0
    for i in range(N + 1):
        j = N - i
        kind = page.row_kind(j)
        old = page.entry(i, j)
        if kind in ("zero", "opaque"):
            continue  # zero rows stay zero; opaque entries pass unchanged at d2
        if kind == "circle":
            if not old.known:
                raise UnsupportedRangeError(f"circle entry ({i},{j}) not tabulated")
            src_kind = page.row_kind(j + 1) if j + 1 <= page.spectrum.max_degree else "zero"
            if src_kind == "z2" and i >= 2:
                images = circle_images(i - 2)
                rank = rank_of_images(i, images)
                gens = [e for e in images if e is not None]
                new_expr = (
                    quotient_by_subgroup_image(old.expr, gens) if gens else old.expr
                )
                record(i - 2, j + 1, rank, rule_to_circle)
                entries[(i, j)] = Entry(i, j, new_expr)
            elif src_kind in ("zero",) or i < 2:
                entries[(i, j)] = old
            else:
                raise UnsupportedRangeError(
                    f"no differential rule from row {j + 1} into the circle row"
                )
            continue
        # kind == "z2"
        dim = len(old.basis)
        tgt_kind = page.row_kind(j - 1) if j >= 1 else "zero"
        if tgt_kind == "z2":
            mat = z2_matrix(i)
            out_rank = mat.rank()
            ker = dim - out_rank
            record(i, j, out_rank, rule_to_z2)
        elif tgt_kind == "circle":
            images = circle_images(i)
            out_rank = rank_of_images(i + 2, images)
            ker = dim - out_rank
            record(i, j, out_rank, rule_to_circle)
        elif tgt_kind == "zero":
            ker = dim
        else:
            raise UnsupportedRangeError(f"no differential rule from row {j} into row {j - 1}")
        src_kind = page.row_kind(j + 1) if j + 1 <= page.spectrum.max_degree else "zero"
        if src_kind == "z2" and i < 2:
            src_kind = "zero"  # no incoming column to the left of the quadrant
        in_rank = 0
        if src_kind == "z2":
            in_mat = z2_matrix(i - 2)
            in_rank = in_mat.rank()
            record(i - 2, j + 1, in_rank, rule_to_z2)
            if tgt_kind == "circle":
                # d2 o d2 = 0 on the evaluated chain (i-2,j+1) -> (i,j) -> circle
                for m in alg.basis(i - 2):
                    y = dcls(alg.monomial_class(m))
                    if y.is_zero:
                        continue
                    z = dcls(y)
                    if z.is_zero:
                        continue
                    img = page.circle.comparison_image(alg, i + 2, z)
                    if img is not None:
                        raise AssertionError(
                            f"d2 squared nonzero on chain ({i - 2},{j + 1}) -> ({i},{j})"
                        )
                checked_chains += 1
            elif tgt_kind == "z2":
                if not in_mat.then(z2_matrix(i)).is_zero:
                    raise AssertionError(
                        f"d2 squared nonzero on chain ({i - 2},{j + 1}) -> ({i},{j})"
                    )
                checked_chains += 1
        elif src_kind not in ("zero",):
            raise UnsupportedRangeError(
                f"no differential rule from row {j + 1} into row {j}"
            )
        new_dim = ker - in_rank
        if new_dim < 0:
            raise AssertionError(f"negative dimension at ({i},{j})")
        basis = old.basis if new_dim == dim else ()
        entries[(i, j)] = Entry(i, j, GroupExpr.of(FinAbGroup((2,) * new_dim)), basis)
    log.append({"kind": "d2_squared", "chains_checked": checked_chains})
    return Page(
        3,
        page.space,
        page.E,
        page.n,
        page.spectrum,
        N,
        entries,
        page.circle,
        alg,
        log,
        list(page.declarations),
        frozenset({N}),
    )


# ---------------------------------------------------------------------------
# Declared higher differentials


def declare_higher_differential(page: Page, r: int, source: tuple[int, int], rank_or_zero) -> Page:
    """Record a differential the engine cannot compute.

    rank_or_zero is 0 / "zero" for a declared-zero differential (the only
    option for opaque sources), or a positive rank applied to elementary
    2-group entries on both ends.
    """
    if r < 3:
        raise ValueError("declared differentials start at r = 3")
    i, j = source
    src = page.entry(i, j)
    rank = 0 if rank_or_zero in (0, "zero") else int(rank_or_zero)
    if src.expr is not None and src.expr.is_zero:
        page.log.append(
            {"kind": "declaration", "r": r, "source": [i, j], "rank": rank, "note": "no-op on zero entry"}
        )
        return page
    if src.expr is not None and src.expr.is_opaque and rank != 0:
        raise ValueError("opaque entries admit only declared-zero differentials")
    if rank:
        ti, tj = i + r, j - r + 1
        tgt = page.entry(ti, tj)
        new_src = _shrink_elementary(src, rank)
        new_tgt = _shrink_elementary(tgt, rank)
        page.entries[(i, j)] = new_src
        page.entries[(ti, tj)] = new_tgt
    page.declarations.append({"r": r, "source": [i, j], "rank": rank})
    page.log.append({"kind": "declaration", "r": r, "source": [i, j], "rank": rank})
    return page


def _shrink_elementary(entry: Entry, rank: int) -> Entry:
    if entry.expr is None:
        raise UnsupportedRangeError(f"cannot apply declared rank at untabulated ({entry.i},{entry.j})")
    g = entry.expr.finite
    if entry.expr.circle_rank or entry.expr.opaque or any(d != 2 for d in g.invariant_factors):
        raise ValueError("declared ranks apply to elementary 2-group entries only")
    dim = len(g.invariant_factors)
    if rank > dim:
        raise ValueError(f"declared rank {rank} exceeds entry dimension {dim}")
    return Entry(entry.i, entry.j, GroupExpr.of(FinAbGroup((2,) * (dim - rank))))


# ---------------------------------------------------------------------------
# Reports


@dataclass
class TotalDegreeReport:
    N: int
    entries: list[tuple[int, int, str]]
    verdict: str
    group: GroupExpr | None
    blockers: list[str]
    provenance: list[str]

    @property
    def inconclusive(self) -> bool:
        return bool(self.blockers)

    def to_dict(self) -> dict:
        return {
            "total_degree": self.N,
            "entries": [{"i": i, "j": j, "group": g} for i, j, g in self.entries],
            "verdict": self.verdict,
            "group": None if self.group is None else str(self.group),
            "blockers": list(self.blockers),
            "provenance": list(self.provenance),
        }


def total_degree_report(page: Page, N: int) -> TotalDegreeReport:
    """Associated graded of the abutment in total degree N.

    At most one nonzero survivor is reported as an exact group; several
    survivors stay an associated graded list (extension problems are never
    silently resolved).  Undeclared differentials out of opaque entries that
    could touch degree N make the report inconclusive.
    """
    if page.number < 3 and N != 0:
        raise ValueError("report requires a turned page")
    if page.number >= 3 and N not in page.computed_totals:
        raise ValueError(f"page was turned for totals {sorted(page.computed_totals)}, not {N}")
    declared = {(d["r"], tuple(d["source"])) for d in page.declarations}
    blockers: list[str] = []
    survivors: list[tuple[int, int, GroupExpr]] = []
    for i in range(N, -1, -1):
        j = N - i
        e = page.entry(i, j)
        if e.expr is None:
            raise UnsupportedRangeError(f"entry ({i},{j}) in total degree {N} is not tabulated")
        survivors.append((i, j, e.expr))
    # undetermined differentials out of opaque entries, into or out of degree N
    for (i, j), e in page.entries.items():
        if e.expr is None or not e.expr.is_opaque:
            continue
        if i + j == N - 1:
            for r in range(3, j + 2):
                ti, tj = i + r, j - r + 1
                tgt = next((x for a, b, x in survivors if (a, b) == (ti, tj)), None)
                if tgt is not None and not tgt.is_zero and (r, (i, j)) not in declared:
                    blockers.append(
                        f"d{r} from opaque ({i},{j}) into nonzero ({ti},{tj}) undeclared"
                    )
        if i + j == N and not e.expr.is_zero:
            for r in range(3, j + 2):
                if (r, (i, j)) not in declared:
                    blockers.append(f"d{r} out of opaque ({i},{j}) undeclared")
    provenance = [
        f"declared d{d['r']} from ({d['source'][0]},{d['source'][1]}) rank {d['rank']}"
        for d in page.declarations
    ]
    provenance.append(
        "differentials of length >= 3 between computed rows are outside the model"
        " and taken to vanish"
    )
    entries_str = [(i, j, str(expr)) for i, j, expr in survivors]
    nonzero = [(i, j, expr) for i, j, expr in survivors if not expr.is_zero]
    if blockers:
        return TotalDegreeReport(N, entries_str, "inconclusive", None, blockers, provenance)
    if not nonzero:
        return TotalDegreeReport(N, entries_str, "0", GroupExpr.zero(), [], provenance)
    if len(nonzero) == 1:
        expr = nonzero[0][2]
        return TotalDegreeReport(N, entries_str, str(expr), expr, [], provenance)
    graded = " ; ".join(f"({i},{j}): {expr}" for i, j, expr in nonzero)
    return TotalDegreeReport(N, entries_str, f"associated graded: {graded}", None, [], provenance)


def run_ahss(
    E: FinAbGroup,
    n: int,
    spectrum_name: str,
    N: int,
    twist: bool = False,
    d5_zero: bool = False,
    overrides: CoeffOverrides | None = None,
) -> tuple[Page, TotalDegreeReport]:
    """Assemble, turn, declare, and report in one call."""
    name = spectrum_name
    if twist and spectrum_name == "SW":
        name = "SW_twisted_by_Z2F"
    spec_table = spectrum(name, overrides)
    page = assemble_e2(EmSpace.from_group(E, n), spec_table, N, overrides)
    page3 = apply_d2(page)
    if d5_zero and N >= 4:
        src = page3.entry(0, 4)
        if src.expr is not None and not src.expr.is_zero:
            declare_higher_differential(page3, 5, (0, 4), 0)
    report = total_degree_report(page3, N)
    return page3, report


# ---------------------------------------------------------------------------
# Product splitting and the smash-term freeness check


def _a1_submodule(alg, seed_cls, lo: int, hi: int) -> SqModule:
    """A(1)-submodule generated by one class, truncated to a degree window."""
    spans: dict[int, Echelon] = {}
    queue = [seed_cls]
    while queue:
        cls = queue.pop()
        if cls.is_zero or cls.degree > hi:
            continue
        span = spans.setdefault(cls.degree, Echelon())
        if not span.add(alg.coordinates(cls)):
            continue
        for k in (1, 2):
            if cls.degree + k <= hi:
                queue.append(alg.sq(k, cls))
    dims = {d: spans[d].dim for d in range(lo, hi + 1) if d in spans}

    def sq_map(d: int, k: int) -> Gf2Matrix | None:
        src = spans.get(d)
        if src is None or d + k > hi:
            return None
        tgt = spans.get(d + k)
        rows = []
        for vec in src.vectors:
            cls = alg.class_from_monomials(
                m for pos, m in enumerate(alg.basis(d)) if (vec >> pos) & 1
            )
            img = alg.sq(k, cls)
            bits = alg.coordinates(img)
            if bits == 0:
                rows.append(0)
                continue
            if tgt is None:
                raise AssertionError("submodule not closed under Sq action")
            expressed = tgt.express(bits)
            if expressed is None:
                raise AssertionError("submodule not closed under Sq action")
            rows.append(expressed)
        return Gf2Matrix.from_rows(rows, spans[d + k].dim if tgt else 0)

    sq1 = {d: m for d in dims if (m := sq_map(d, 1)) is not None}
    sq2 = {d: m for d in dims if (m := sq_map(d, 2)) is not None}
    return SqModule(dims, sq1, sq2)


def smash_freeness_check(
    X: EmSpace, Y: EmSpace, degree: int, window: tuple[int, int] = (4, 9)
) -> dict:
    """Reduced smash classes in one degree and their Margolis certificates.

    Each class generates an A(1)-submodule of the reduced smash cohomology;
    vanishing Q0 and Q1 Margolis homology through the window certifies a
    free summand (hence a nonzero contribution to the reduced theory).
    """
    lo, hi = window
    alg = algebra_for(X.product(Y), hi)
    classes = reduced_smash_basis(X, Y, degree, hi)
    results = []
    all_free = bool(classes)
    for cls in classes:
        module = _a1_submodule(alg, cls, lo, hi)
        q0 = margolis_homology(module, "Q0")
        q1 = margolis_homology(module, "Q1")
        free = not any(q0.values()) and not any(q1.values())
        all_free = all_free and free
        results.append(
            {
                "class": str(cls),
                "q0_homology": q0,
                "q1_homology": q1,
                "free_a1": free,
            }
        )
    return {"degree": degree, "dimension": len(classes), "classes": results, "all_free": all_free}


def product_split(
    E: FinAbGroup,
    spectrum_name: str,
    n: int,
    N: int,
    overrides: CoeffOverrides | None = None,
) -> dict:
    """h^N(X1 x X2 x ...) split into point, reduced-factor, and smash summands.

    Factors are the invariant-factor cyclic pieces of E.  Each reduced
    factor runs through the spectral sequence; smash summands report a
    computed zero when connectivity keeps them out of degree N, a Margolis
    freeness attestation at the first contributing degree, or "unknown".
    """
    spec_table = spectrum(spectrum_name, overrides)
    factors = []
    for d in E.invariant_factors:
        k, odd = _two_part(d)
        if k:
            factors.append(FinAbGroup.cyclic(2**k))
        if odd > 1:
            factors.append(FinAbGroup.cyclic(odd))
    summands: list[dict] = []
    if N <= spec_table.max_degree:
        summands.append(
            {"summand": "point", "status": "computed", "group": str(spec_table.entry(N))}
        )
    else:
        summands.append({"summand": "point", "status": "unknown", "group": None})
    for idx, F in enumerate(factors):
        _page, report = run_ahss(F, n, spectrum_name, N, d5_zero=True, overrides=overrides)
        reduced = [(i, j, g) for i, j, g in report.entries if i > 0]
        nonzero = [t for t in reduced if t[2] != "0"]
        if report.inconclusive:
            status, group = "inconclusive", None
        elif not nonzero:
            status, group = "computed", "0"
        elif len(nonzero) == 1:
            status, group = "computed", nonzero[0][2]
        else:
            status, group = "associated graded", " ; ".join(g for _i, _j, g in nonzero)
        summands.append(
            {"summand": f"reduced factor {idx}: {F}[{n}]", "status": status, "group": group}
        )
    spaces = [EmSpace.from_group(F, n) for F in factors]
    for a in range(len(spaces)):
        for b in range(a + 1, len(spaces)):
            label = f"smash {factors[a]}[{n}] ^ {factors[b]}[{n}]"
            even_a = any(m % 2 == 0 for m, _d in spaces[a].factors)
            even_b = any(m % 2 == 0 for m, _d in spaces[b].factors)
            if not (even_a and even_b):
                summands.append(
                    {"summand": label, "status": "computed", "group": "0",
                     "note": "odd-torsion side: reduced mod-2 cohomology vanishes"}
                )
                continue
            first_degree = 2 * n
            if first_degree > N:
                summands.append(
                    {"summand": label, "status": "computed", "group": "0",
                     "note": f"no classes below degree {first_degree}"}
                )
                continue
            check = smash_freeness_check(
                spaces[a], spaces[b], N, window=(N - 1, N + 4)
            )
            if check["dimension"] and check["all_free"]:
                summands.append(
                    {"summand": label, "status": "nonzero", "group": None,
                     "note": f"{check['dimension']} free A(1) classes in degree {N}"}
                )
            else:
                summands.append({"summand": label, "status": "unknown", "group": None})
    computed = [s for s in summands if s["status"] in ("computed",)]
    conclusive = len(computed) == len(summands)
    nonzero_groups = [s["group"] for s in computed if s["group"] not in ("0", None)]
    if conclusive:
        verdict = "0" if not nonzero_groups else " ; ".join(nonzero_groups)
    elif any(s["status"] == "nonzero" for s in summands):
        verdict = "nonzero"
    else:
        verdict = "inconclusive"
    return {
        "group": str(E),
        "space_degree": n,
        "spectrum": spectrum_name,
        "total_degree": N,
        "summands": summands,
        "verdict": verdict,
    }


# ---------------------------------------------------------------------------
# Dumps


def page_to_dict(page: Page) -> dict:
    return {
        "page": page.number,
        "space": str(page.space),
        "group": str(page.E),
        "space_degree": page.n,
        "spectrum": page.spectrum.name,
        "twisted": page.spectrum.twisted,
        "max_total": page.max_total,
        "entries": {
            f"{i},{j}": {"group": e.group_str(), "basis": list(e.basis)}
            for (i, j), e in sorted(page.entries.items())
        },
        "computed_totals": sorted(page.computed_totals),
        "log": list(page.log),
        "declarations": list(page.declarations),
    }


def render_page_text(dump: dict) -> str:
    """Aligned grid of a page dump (rows j descending, columns i)."""
    coords = [tuple(map(int, key.split(","))) for key in dump["entries"]]
    max_i = max((i for i, _j in coords), default=0)
    max_j = max((j for _i, j in coords), default=0)
    grid = {}
    for key, val in dump["entries"].items():
        i, j = map(int, key.split(","))
        grid[(i, j)] = val["group"]
    rows = []
    for j in range(max_j, -1, -1):
        cells = [grid.get((i, j), ".") for i in range(max_i + 1)]
        rows.append([f"j={j}"] + cells)
    rows.append(["i->"] + [str(i) for i in range(max_i + 1)])
    widths = [max(len(r[c]) for r in rows) for c in range(max_i + 2)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    title = (
        f"E{dump['page']} page, {dump['spectrum']} over {dump['space']}"
        f"{' (twisted)' if dump['twisted'] else ''}"
    )
    return "\n".join([title] + lines)
