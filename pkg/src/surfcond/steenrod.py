"""Mod-2 Steenrod algebra arithmetic: admissible monomials, Adem
normalization, excess, power-Bockstein markers, and Margolis homology of
modules over the subalgebra generated by Sq1 and Sq2.

Conventions: beta_1 is Sq1 and is normalized into the index list.  For k >= 2
the power Bockstein beta_k is an opaque innermost marker of degree 1; Sq1
composed with beta_k is zero and there is no other Adem interaction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .gf2 import Gf2Matrix


def binom_mod2(n: int, k: int) -> int:
    """Binomial coefficient mod 2 by Lucas' theorem: (n choose k) is odd
    iff k's binary digits are dominated by n's."""
    if k < 0 or n < 0 or k > n:
        return 0
    return 1 if (n - k) & k == 0 else 0


@dataclass(frozen=True, order=True)
class SteenrodMonomial:
    """Sq^{i_1} ... Sq^{i_m} (beta_k), with the Bockstein acting innermost.

    bockstein == 0 means no marker; values >= 2 are power Bocksteins.
    beta_1 is never stored as a marker (it is the trailing Sq1).
    """

    squares: tuple[int, ...] = ()
    bockstein: int = 0

    def __post_init__(self):
        if any(i < 1 for i in self.squares):
            raise ValueError("Sq indices must be positive")
        if self.bockstein == 1:
            raise ValueError("beta_1 is Sq1; store it as a trailing index")
        if self.bockstein < 0:
            raise ValueError("bockstein marker must be >= 2 or absent")

    @property
    def degree(self) -> int:
        return sum(self.squares) + (1 if self.bockstein else 0)

    @property
    def is_admissible(self) -> bool:
        idx = self.squares + ((1,) if self.bockstein else ())
        return all(a >= 2 * b for a, b in zip(idx, idx[1:]))

    @property
    def is_identity(self) -> bool:
        return not self.squares and not self.bockstein

    def __str__(self) -> str:
        parts = [f"Sq{i}" for i in self.squares]
        if self.bockstein:
            parts.append(f"b{self.bockstein}")
        return " ".join(parts) if parts else "1"


def excess(mono: SteenrodMonomial) -> int:
    """i_1 minus the sum of the remaining indices, the Bockstein marker
    counting as a trailing 1.  Defined for admissible monomials only."""
    if not mono.is_admissible:
        raise ValueError(f"excess of inadmissible monomial {mono}")
    idx = mono.squares + ((1,) if mono.bockstein else ())
    if not idx:
        return 0
    return idx[0] - sum(idx[1:])


@dataclass(frozen=True)
class SteenrodWord:
    """F2-sum of Steenrod monomials (presence = coefficient 1)."""

    monomials: frozenset[SteenrodMonomial] = frozenset()

    @staticmethod
    def zero() -> "SteenrodWord":
        return SteenrodWord(frozenset())

    @staticmethod
    def of(*monos: SteenrodMonomial) -> "SteenrodWord":
        out: set[SteenrodMonomial] = set()
        for m in monos:
            out.symmetric_difference_update({m})
        return SteenrodWord(frozenset(out))

    @staticmethod
    def sq(*indices: int) -> "SteenrodWord":
        return SteenrodWord.of(SteenrodMonomial(tuple(indices)))

    @property
    def is_zero(self) -> bool:
        return not self.monomials

    @property
    def is_homogeneous(self) -> bool:
        degs = {m.degree for m in self.monomials}
        return len(degs) <= 1

    @property
    def degree(self) -> int:
        if not self.is_homogeneous:
            raise ValueError("inhomogeneous word has no degree")
        return next(iter(self.monomials)).degree if self.monomials else 0

    def __add__(self, other: "SteenrodWord") -> "SteenrodWord":
        return SteenrodWord(self.monomials ^ other.monomials)

    def sorted_monomials(self) -> list[SteenrodMonomial]:
        # canonical order: degree, then lexicographic indices, Bockstein last
        return sorted(
            self.monomials, key=lambda m: (m.degree, m.squares, m.bockstein)
        )

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join(str(m) for m in self.sorted_monomials())


@lru_cache(maxsize=None)
def adem_expand(a: int, b: int) -> frozenset[tuple[int, ...]]:
    """Adem relation for Sq^a Sq^b with a < 2b, as a set of index pairs.

    Sq^a Sq^b = sum_c binom(b-c-1, a-2c) Sq^{a+b-c} Sq^c; the c = 0 term is
    the single square Sq^{a+b}.  All output terms are admissible.
    """
    assert 0 < a < 2 * b
    out: set[tuple[int, ...]] = set()
    for c in range(0, a // 2 + 1):
        if binom_mod2(b - c - 1, a - 2 * c):
            term = (a + b - c, c) if c else (a + b,)
            out.symmetric_difference_update({term})
    return frozenset(out)


@lru_cache(maxsize=None)
def _normalize_squares(squares: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Rewrite a composite of squares as an F2-sum of admissible sequences."""
    for pos in range(len(squares) - 1):
        a, b = squares[pos], squares[pos + 1]
        if a < 2 * b:
            out: set[tuple[int, ...]] = set()
            for repl in adem_expand(a, b):
                rewritten = squares[:pos] + repl + squares[pos + 2 :]
                out.symmetric_difference_update(_normalize_squares(rewritten))
            return frozenset(out)
    return frozenset({squares})


def adem_normalize(word: SteenrodWord) -> SteenrodWord:
    """Unique admissible representative of a Steenrod word.

    Monomials carrying a beta_k marker (k >= 2) whose admissible square part
    ends in Sq1 vanish (Sq1 beta_k = 0).
    """
    out: set[SteenrodMonomial] = set()
    for mono in word.monomials:
        for sq in _normalize_squares(mono.squares):
            if mono.bockstein and sq and sq[-1] == 1:
                continue
            out.symmetric_difference_update(
                {SteenrodMonomial(sq, mono.bockstein)}
            )
    return SteenrodWord(frozenset(out))


def compose(left: SteenrodWord, right: SteenrodWord) -> SteenrodWord:
    """Product in the Steenrod algebra, normalized to admissible form.

    The right factor's Bockstein markers stay innermost; composing onto a
    marked monomial from the left is plain concatenation of the square parts.
    Composing a marked word on the left of anything is not defined here.
    """
    out: set[SteenrodMonomial] = set()
    for lm in left.monomials:
        if lm.bockstein:
            raise ValueError("left factor with Bockstein marker cannot be composed")
        for rm in right.monomials:
            out.symmetric_difference_update(
                {SteenrodMonomial(lm.squares + rm.squares, rm.bockstein)}
            )
    return adem_normalize(SteenrodWord(frozenset(out)))


# ---------------------------------------------------------------------------
# Action on polynomial classes (delegates to the algebra object)


def act(op: SteenrodWord, cls, algebra=None):
    """Apply a Steenrod word to a class of a graded polynomial algebra.

    The heavy lifting (instability, Cartan formula, rewriting of excess-n
    words as squares) lives with the algebra; this wrapper applies the
    word's squares rightmost-first and sums over monomials.  Both the word
    and the class must be homogeneous.
    """
    if algebra is None:
        algebra = cls.algebra
    if not op.is_homogeneous:
        raise ValueError("inhomogeneous Steenrod word")
    result = None
    for mono in op.monomials:
        if mono.bockstein:
            raise ValueError("power Bocksteins act on fundamental classes only")
        term = cls
        for i in reversed(mono.squares):
            term = algebra.sq(i, term)
        result = term if result is None else result + term
    if result is None:
        return algebra.zero_class(cls.degree + op.degree if op.monomials else cls.degree)
    return result


# ---------------------------------------------------------------------------
# Margolis homology


@dataclass
class SqModule:
    """Graded F2-vector space with declared Sq1 and Sq2 actions in a window.

    dims[d] is the dimension in degree d; sq1[d] / sq2[d] are Gf2Matrix maps
    from degree d to degree d+1 / d+2 (absent means zero).
    """

    dims: dict[int, int]
    sq1: dict[int, Gf2Matrix]
    sq2: dict[int, Gf2Matrix]

    @property
    def min_degree(self) -> int:
        return min((d for d, n in self.dims.items() if n), default=0)

    @property
    def max_degree(self) -> int:
        return max((d for d, n in self.dims.items() if n), default=0)

    def dim(self, d: int) -> int:
        return self.dims.get(d, 0)

    def _map(self, table: dict[int, Gf2Matrix], d: int, shift: int) -> Gf2Matrix:
        m = table.get(d)
        if m is None:
            return Gf2Matrix.zero(self.dim(d), self.dim(d + shift))
        return m

    def q0(self, d: int) -> Gf2Matrix:
        return self._map(self.sq1, d, 1)

    def q1(self, d: int) -> Gf2Matrix:
        """Q1 = Sq3 + Sq2 Sq1 = Sq1 Sq2 + Sq2 Sq1 (degree +3)."""
        a = self._map(self.sq2, d, 2).then(self._map(self.sq1, d + 2, 1))
        b = self._map(self.sq1, d, 1).then(self._map(self.sq2, d + 1, 2))
        return a + b


def margolis_homology(module: SqModule, which: str) -> dict[int, int]:
    """ker/im dimensions of Q0 = Sq1 or Q1 = Sq3 + Sq2 Sq1.

    Reported for degrees d with d + shift still inside the declared window,
    so that both the outgoing and the incoming map are fully known.  Raises
    if the supplied action data does not satisfy Q_i Q_i = 0.
    """
    if which == "Q0":
        shift, diff = 1, module.q0
    elif which == "Q1":
        shift, diff = 3, module.q1
    else:
        raise ValueError(f"unknown Margolis differential {which!r}")
    lo, hi = module.min_degree, module.max_degree
    for d in range(lo, hi - 2 * shift + 1):
        if not diff(d).then(diff(d + shift)).is_zero:
            raise ValueError(f"{which} squared is nonzero starting in degree {d}")
    out: dict[int, int] = {}
    for d in range(lo, hi - shift + 1):
        outgoing = diff(d)
        incoming = diff(d - shift) if d - shift >= lo else Gf2Matrix.zero(0, module.dim(d))
        out[d] = (module.dim(d) - outgoing.rank()) - incoming.rank()
    return out


# ---------------------------------------------------------------------------
# Text syntax: "Sq2 Sq1", "Sq2 b_2"

_SQ_RE = re.compile(r"^sq(\d+)$")
_B_RE = re.compile(r"^b_?(\d+)$")


def parse_word(text: str) -> SteenrodWord:
    """Parse sums of monomials like "Sq2 Sq1 + Sq3", case-insensitively."""
    out = SteenrodWord.zero()
    for part in text.split("+"):
        toks = part.split()
        if not toks:
            raise ValueError(f"empty monomial in {text!r}")
        squares: list[int] = []
        bockstein = 0
        for pos, tok in enumerate(toks):
            t = tok.strip().lower()
            if t == "1":
                continue
            m = _SQ_RE.match(t)
            if m:
                if bockstein:
                    raise ValueError("Sq after Bockstein marker")
                squares.append(int(m.group(1)))
                continue
            m = _B_RE.match(t)
            if m:
                if pos != len(toks) - 1:
                    raise ValueError("Bockstein marker must be innermost (last)")
                k = int(m.group(1))
                if k == 1:
                    squares.append(1)
                else:
                    bockstein = k
                continue
            raise ValueError(f"cannot parse Steenrod token {tok!r}")
        out = out + SteenrodWord.of(SteenrodMonomial(tuple(squares), bockstein))
    return out
