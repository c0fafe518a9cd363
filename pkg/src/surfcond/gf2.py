"""Bit-packed GF(2) linear algebra: ranks, kernels, composition."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Gf2Matrix:
    """Matrix over GF(2); rows[i] is an int bitmask of row i (nrows x ncols).

    Viewed as a linear map sending basis vector i of the domain (dimension
    nrows) to the vector encoded by rows[i] in the codomain (dimension ncols).
    """

    rows: tuple[int, ...]
    ncols: int

    @staticmethod
    def zero(nrows: int, ncols: int) -> "Gf2Matrix":
        return Gf2Matrix((0,) * nrows, ncols)

    @staticmethod
    def from_rows(rows, ncols: int) -> "Gf2Matrix":
        return Gf2Matrix(tuple(int(r) for r in rows), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def is_zero(self) -> bool:
        return not any(self.rows)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch")
        return Gf2Matrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)), self.ncols)

    def apply(self, vec: int) -> int:
        """Image of a domain vector (bitmask over rows)."""
        out = 0
        for i, row in enumerate(self.rows):
            if (vec >> i) & 1:
                out ^= row
        return out

    def then(self, other: "Gf2Matrix") -> "Gf2Matrix":
        """Composition: first self, then other."""
        if self.ncols != other.nrows:
            raise ValueError("composition shape mismatch")
        return Gf2Matrix(tuple(other.apply(r) for r in self.rows), other.ncols)

    def rank(self) -> int:
        return len(_row_reduce(list(self.rows)))

    def kernel_basis(self) -> list[int]:
        """Basis of {v : v . M = 0}, as bitmasks over the domain."""
        n = self.nrows
        # carry identity alongside to track the combinations
        work = [(self.rows[i], 1 << i) for i in range(n)]
        pivots: list[tuple[int, int]] = []
        kernel: list[int] = []
        for row, comb in work:
            for prow, pcomb in pivots:
                low = prow & -prow
                if row & low:
                    row ^= prow
                    comb ^= pcomb
            if row:
                pivots.append((row, comb))
            else:
                kernel.append(comb)
        return kernel


class Echelon:
    """Incremental GF(2) subspace with coordinate recovery.

    Keeps the original spanning vectors alongside an echelon form so that
    express() can return a combination mask over the vectors actually added.
    """

    def __init__(self):
        self.vectors: list[int] = []
        self._rows: list[tuple[int, int]] = []  # (reduced vector, combination)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: int) -> tuple[int, int]:
        comb = 0
        for row, rcomb in self._rows:
            low = row & -row
            if vec & low:
                vec ^= row
                comb ^= rcomb
        return vec, comb

    def add(self, vec: int) -> bool:
        """Add a spanning vector; returns True if it enlarged the span."""
        reduced, comb = self._reduce(vec)
        if not reduced:
            return False
        self._rows.append((reduced, comb ^ (1 << len(self.vectors))))
        self.vectors.append(vec)
        return True

    def express(self, vec: int) -> int | None:
        """Combination mask over added vectors yielding vec, or None."""
        reduced, comb = self._reduce(vec)
        return None if reduced else comb


def _row_reduce(rows: list[int]) -> list[int]:
    basis: list[int] = []
    for row in rows:
        for b in basis:
            low = b & -b
            if row & low:
                row ^= b
        if row:
            basis.append(row)
    return basis
