"""Exact arithmetic on finite abelian groups.

Groups are kept in invariant-factor form (d_1 | d_2 | ... | d_r), which makes
isomorphism testing a list comparison.  The circle group C^x is never
enumerated; it only enters through the closed-form rules hom(Z_n, C^x) = Z_n
and Ext(-, C^x) = 0.  The symbols SW and SW2 are opaque: the only thing we
ever do with them is carry them around.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field


class BudgetError(ValueError):
    """Brute-force enumeration would exceed the configured budget."""


class UnsupportedRangeError(ValueError):
    """A table or functor was queried outside its supported range."""


OPAQUE_SYMBOLS = ("SW", "SW2")


def _invariant_factors_from_prime_powers(prime_powers: dict[int, list[int]]) -> tuple[int, ...]:
    """Recombine prime-power exponents into a divisibility chain via CRT."""
    if not prime_powers:
        return ()
    length = max(len(v) for v in prime_powers.values())
    factors = []
    for i in range(1, length + 1):
        d = 1
        for p, exps in prime_powers.items():
            if len(exps) >= i:
                # largest factors pair up first
                d *= p ** sorted(exps, reverse=True)[i - 1]
        factors.append(d)
    factors.reverse()
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True, order=True)
class FinAbGroup:
    """Finite abelian group ``Z_{d_1} + ... + Z_{d_r}`` with d_i | d_{i+1}."""

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.invariant_factors, self.invariant_factors[1:]):
            if b % a != 0:
                raise ValueError(f"divisibility chain violated: {a} does not divide {b}")

    @staticmethod
    def from_factors(factors) -> "FinAbGroup":
        """Normalize an arbitrary list of cyclic orders (order of input irrelevant)."""
        prime_powers: dict[int, list[int]] = {}
        for n in factors:
            n = int(n)
            if n == 1:
                continue
            if n < 1:
                raise ValueError(f"cyclic order {n} < 1")
            for p, e in _factorize(n).items():
                prime_powers.setdefault(p, []).append(e)
        return FinAbGroup(_invariant_factors_from_prime_powers(prime_powers))

    @staticmethod
    def cyclic(n: int) -> "FinAbGroup":
        return FinAbGroup.from_factors([n])

    @staticmethod
    def trivial() -> "FinAbGroup":
        return FinAbGroup(())

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self):
        """Iterate over all elements as coordinate tuples."""
        return itertools.product(*(range(d) for d in self.invariant_factors))

    def add(self, x, y):
        return tuple((a + b) % d for a, b, d in zip(x, y, self.invariant_factors))

    def neg(self, x):
        return tuple((-a) % d for a, d in zip(x, self.invariant_factors))

    def zero(self):
        return (0,) * len(self.invariant_factors)

    def element_order(self, x) -> int:
        return math.lcm(1, *(d // math.gcd(a, d) for a, d in zip(x, self.invariant_factors)))

    def contains(self, x) -> bool:
        return (
            len(x) == len(self.invariant_factors)
            and all(0 <= a < d for a, d in zip(x, self.invariant_factors))
        )

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True)
class GroupExpr:
    """Entry of a spectral-sequence table.

    Componentwise combination of a finite abelian group, copies of the circle
    group, and opaque symbols (SW, SW2) on which no arithmetic is permitted.
    """

    finite: FinAbGroup = field(default_factory=FinAbGroup)
    circle_rank: int = 0
    opaque: tuple[str, ...] = ()

    def __post_init__(self):
        for s in self.opaque:
            if s not in OPAQUE_SYMBOLS:
                raise ValueError(f"unknown opaque symbol {s!r}")
        object.__setattr__(self, "opaque", tuple(sorted(self.opaque)))

    @staticmethod
    def zero() -> "GroupExpr":
        return GroupExpr()

    @staticmethod
    def of(group: FinAbGroup) -> "GroupExpr":
        return GroupExpr(finite=group)

    @staticmethod
    def circle(rank: int = 1) -> "GroupExpr":
        return GroupExpr(circle_rank=rank)

    @staticmethod
    def symbol(name: str) -> "GroupExpr":
        return GroupExpr(opaque=(name,))

    @property
    def is_zero(self) -> bool:
        return self.finite.is_trivial and self.circle_rank == 0 and not self.opaque

    @property
    def is_opaque(self) -> bool:
        return bool(self.opaque)

    def __str__(self) -> str:
        parts = []
        if not self.finite.is_trivial:
            parts.append(str(self.finite))
        parts.extend(["C^x"] * self.circle_rank)
        parts.extend(self.opaque)
        return " x ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(relation_matrix) -> FinAbGroup:
    """Cokernel of an integer relation matrix, in invariant-factor form.

    Rows are relations among the columns' generators: the result is
    Z^cols / (row lattice).  Presentations with infinite cokernel are
    rejected; this artifact handles finite groups only.
    """
    rows = [list(map(int, r)) for r in relation_matrix]
    ncols = len(rows[0]) if rows else 0
    for r in rows:
        if len(r) != ncols:
            raise ValueError("ragged relation matrix")
    if ncols == 0:
        return FinAbGroup.trivial()
    diag = _snf_diagonal(rows, ncols)
    if len(diag) < ncols or any(d == 0 for d in diag):
        raise ValueError("presentation has infinite cokernel; only finite groups are supported")
    return FinAbGroup.from_factors([d for d in diag if d > 1])


def _snf_diagonal(rows: list[list[int]], ncols: int) -> list[int]:
    """Diagonal of the Smith normal form (nonnegative, divisibility chain)."""
    m = [r[:] for r in rows]
    nrows = len(m)
    diag = []
    t = 0
    while t < min(nrows, ncols):
        # find a nonzero pivot in the remaining block
        pivot = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i0, j0 = pivot
        m[t], m[i0] = m[i0], m[t]
        for r in m:
            r[t], r[j0] = r[j0], r[t]
        while True:
            # clear column t by row operations
            again = False
            for i in range(t + 1, nrows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    for j in range(t, ncols):
                        m[i][j] -= q * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        again = True
            for j in range(t + 1, ncols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    for r in m:
                        r[j] -= q * r[t]
                    if m[t][j]:
                        for r in m:
                            r[t], r[j] = r[j], r[t]
                        again = True
            if not again:
                break
        # make the pivot divide everything below-right
        d = abs(m[t][t])
        fixed = False
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if m[i][j] % d != 0:
                    for jj in range(t, ncols):
                        m[t][jj] += m[i][jj]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        diag.append(d)
        t += 1
    return diag


# ---------------------------------------------------------------------------
# Group functors


def _biadditive(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    factors = [
        math.gcd(a, b) for a in A.invariant_factors for b in B.invariant_factors
    ]
    return FinAbGroup.from_factors(factors)


def hom_group(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    """hom(Z_m, Z_n) = Z_gcd(m,n), extended biadditively."""
    return _biadditive(A, B)


def ext_group(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    """Ext(Z_m, Z_n) = Z_gcd(m,n), extended biadditively.

    Ext into the circle group vanishes (divisible coefficients); callers that
    need that rule go through GroupExpr-level tables instead.
    """
    return _biadditive(A, B)


def dual(A: FinAbGroup) -> FinAbGroup:
    """Pontryagin dual hom(A, C^x); isomorphic to A for finite A."""
    return FinAbGroup(A.invariant_factors)


def two_torsion(A: FinAbGroup) -> FinAbGroup:
    """Subgroup of elements of order <= 2: one Z/2 per even invariant factor."""
    s = sum(1 for d in A.invariant_factors if d % 2 == 0)
    return FinAbGroup((2,) * s)


# ---------------------------------------------------------------------------
# Quadratic forms

QUAD_BUDGET = 64

CIRCLE = "circle"
Z2_TARGET = "Z2"


def quad_group(E: FinAbGroup, target: str) -> FinAbGroup:
    """Group of quadratic functions q: E -> target under pointwise addition.

    A quadratic function satisfies q(0) = 0, q(x) = q(-x), and the defect
    b(x, y) = q(x+y) - q(x) - q(y) is biadditive.  Circle-valued quadratic
    functions take values in the (2 * exponent)-th roots of unity, so the
    circle target is modelled exactly by Z/(2e).

    Cyclic and elementary-abelian groups (in fact any invariant-factor
    decomposition) use the closed form; anything else falls back to the
    brute-force enumeration, which is budget-limited.
    """
    if target not in (CIRCLE, Z2_TARGET):
        raise ValueError(f"unknown quad target {target!r}")
    elementary = all(d == E.invariant_factors[0] for d in E.invariant_factors) and (
        not E.invariant_factors or _is_prime(E.invariant_factors[0])
    )
    if len(E.invariant_factors) <= 1 or elementary:
        return _quad_closed_form(E, target)
    if E.order > QUAD_BUDGET:
        raise BudgetError(
            f"quad_group brute force needs |E| <= {QUAD_BUDGET}, got {E.order}"
        )
    return quad_group_brute(E, target)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def _quad_closed_form(E: FinAbGroup, target: str) -> FinAbGroup:
    """Quad splits as per-factor quadratic parts plus cross bilinear parts."""
    factors = []
    for d in E.invariant_factors:
        if target == CIRCLE:
            factors.append(2 * d if d % 2 == 0 else d)
        else:
            factors.append(math.gcd(d, 2))
    for a, b in itertools.combinations(E.invariant_factors, 2):
        g = math.gcd(a, b)
        factors.append(g if target == CIRCLE else math.gcd(g, 2))
    return FinAbGroup.from_factors(factors)


def quad_group_brute(E: FinAbGroup, target: str) -> FinAbGroup:
    """Independent enumeration: solve the linearized axioms element by element.

    Values live in Z/m with m = 2*exponent(E) (circle) or m = 2.  The axioms
    are Z/m-linear conditions on the value vector (q(x))_{x != 0}; the
    solution group is the cokernel of the stacked relations together with
    m * identity.
    """
    if E.is_trivial:
        return FinAbGroup.trivial()
    m = 2 * E.exponent if target == CIRCLE else 2
    elems = [e for e in E.elements() if any(e)]
    index = {e: i for i, e in enumerate(elems)}
    n = len(elems)

    def coords(*terms):
        row = [0] * n
        for sign, e in terms:
            if any(e):
                row[index[e]] += sign
        return row

    rows = []
    for e in elems:
        neg = E.neg(e)
        if neg != e:
            rows.append(coords((1, e), (-1, neg)))
    for x, y, z in itertools.combinations_with_replacement(elems, 3):
        rows.append(
            coords(
                (1, E.add(E.add(x, y), z)),
                (-1, E.add(x, y)),
                (-1, E.add(x, z)),
                (-1, E.add(y, z)),
                (1, x),
                (1, y),
                (1, z),
            )
        )
    for i in range(n):
        row = [0] * n
        row[i] = m
        rows.append(row)
    rows = [r for r in rows if any(r)]
    return smith_normal_form(rows)


def quotient_by_subgroup_image(expr: GroupExpr, generators) -> GroupExpr:
    """Cokernel of the subgroup of expr.finite generated by the given elements.

    Only the finite part is touched; circle rank and opaque symbols pass
    through unchanged.
    """
    A = expr.finite
    gens = [tuple(int(c) for c in g) for g in generators]
    for g in gens:
        if not A.contains(g):
            raise ValueError(f"generator {g} is not an element of {A}")
    gens = [g for g in gens if any(g)]
    if not gens:
        return expr
    rows = []
    for i, d in enumerate(A.invariant_factors):
        row = [0] * len(A.invariant_factors)
        row[i] = d
        rows.append(row)
    rows.extend(list(g) for g in gens)
    return GroupExpr(
        finite=smith_normal_form(rows),
        circle_rank=expr.circle_rank,
        opaque=expr.opaque,
    )


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(r"^z/?(\d+)$")


def parse_group(text: str) -> FinAbGroup:
    """Parse group literals like "Z/2 x Z/4" (also "Z2", unicode direct sums)."""
    s = text.strip().replace("⊕", "x").replace("×", "x")
    if s in ("0", "1", ""):
        return FinAbGroup.trivial()
    factors = []
    for tok in s.split("x"):
        tok = tok.strip().lower()
        if tok in ("0", "1"):
            continue
        mt = _TOKEN_RE.match(tok)
        if not mt:
            raise ValueError(f"cannot parse group factor {tok!r} in {text!r}")
        factors.append(int(mt.group(1)))
    return FinAbGroup.from_factors(factors)
