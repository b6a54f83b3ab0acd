"""Exact linear algebra over Q: small dense helpers and a sparse echelon store."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((row[k] * v[k] for k in range(len(v))), Fraction(0)) for row in a]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : A v = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return identity(ncols)
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + ident for row, ident in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


# ---------------------------------------------------------------------------
# sparse rows keyed by integer column; smaller column = earlier pivot

SparseRow = dict[int, Fraction]


def monic(row: dict) -> SparseRow:
    """Scale a nonzero sparse row so its leading entry is 1."""
    lead = row[min(row)]
    if lead == 1:
        return {k: Fraction(v) for k, v in row.items()}
    inv = 1 / Fraction(lead)
    return {k: v * inv for k, v in row.items()}


class Echelon:
    """Reduced row echelon basis of a subspace, maintained under insertion.

    Rows are monic, and each row vanishes at every other row's pivot.  The
    form is canonical for the subspace, so entry sizes stay at those of the
    subspace itself; leading-only reduction lets them compound instead.
    """

    def __init__(self):
        self.rows: dict[int, SparseRow] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, row: dict) -> SparseRow:
        """Remainder of ``row`` after eliminating every pivot column."""
        row = {k: Fraction(v) for k, v in row.items() if v}
        rows = self.rows
        # stored rows vanish at each other's pivots, so a single pass suffices
        for c in [c for c in row if c in rows]:
            f = row.pop(c)
            for k, v in rows[c].items():
                if k == c:
                    continue
                s = row.get(k, 0) - f * v
                if s:
                    row[k] = s
                else:
                    row.pop(k, None)
        return row

    def insert(self, row: dict) -> SparseRow | None:
        """Add a vector; returns the new reduced row, or None if dependent."""
        red = self.reduce(row)
        if not red:
            return None
        red = monic(red)
        p = min(red)
        for q, other in self.rows.items():
            f = other.get(p)
            if f:
                for k, v in red.items():
                    s = other.get(k, 0) - f * v
                    if s:
                        other[k] = s
                    else:
                        del other[k]
        self.rows[p] = red
        return red

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    def reduced(self) -> dict[int, SparseRow]:
        """Copy of the rows, pivot -> row with pivot entry 1."""
        return {p: dict(self.rows[p]) for p in sorted(self.rows)}
