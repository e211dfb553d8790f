"""Exact linear algebra over Q: fraction-free elimination and nullspaces.

Forward elimination is the fraction-free (Bareiss) scheme on an integer
matrix obtained by clearing denominators row by row; every intermediate
division is exact.  Pivoting is deterministic: columns are processed left to
right and the first row with a nonzero entry is chosen, so identical inputs
give identical echelon forms.  The reduced row echelon form is then recovered
with rational arithmetic, and nullspace bases come from the standard
free-column parametrization of the RREF.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = Sequence[Sequence[Fraction]]


def _integer_rows(matrix: Matrix) -> list[list[int]]:
    rows = []
    for row in matrix:
        fracs = [Fraction(v) for v in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        rows.append([int(f * scale) for f in fracs])
    return rows


def fraction_free_echelon(matrix: Matrix) -> tuple[list[list[int]], list[int]]:
    """Bareiss elimination; returns (echelon integer rows, pivot columns)."""
    m = _integer_rows(matrix)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rref(matrix: Matrix) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over Q with deterministic pivoting."""
    echelon, pivots = fraction_free_echelon(matrix)
    rows = [[Fraction(v) for v in row] for row in echelon]
    for r in range(len(rows) - 1, -1, -1):
        p = pivots[r]
        lead = rows[r][p]
        rows[r] = [v / lead for v in rows[r]]
        for above in range(r):
            factor = rows[above][p]
            if factor:
                rows[above] = [va - factor * vr
                               for va, vr in zip(rows[above], rows[r])]
    return tuple(tuple(row) for row in rows), tuple(pivots)


def nullspace(matrix: Matrix, ncols: int) -> list[tuple[Fraction, ...]]:
    """A basis of {v : M v = 0}, one vector per free column of the RREF."""
    if not matrix:
        return [tuple(Fraction(int(i == k)) for i in range(ncols))
                for k in range(ncols)]
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis
