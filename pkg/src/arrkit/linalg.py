"""Exact linear algebra over Q(sqrt(3)).

Elimination keeps a fully inter-reduced row echelon with unit pivots over
exact field elements: every stored row leads with 1 at its pivot column and
is zero at every other pivot column. Normalizing each pivot keeps entries
near the size of the final reduced basis; division-postponed elimination
was measured to grow entries exponentially on wide span matrices.
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from .field import FieldElement

Pair = Tuple[int, int]
PairRow = List[Pair]
Row = Sequence[FieldElement]

_ZERO = FieldElement(0)
_ONE = FieldElement(1)


def _pair_sign(p: Pair) -> int:
    a, b = p
    if a == 0 and b == 0:
        return 0
    if a >= 0 and b >= 0:
        return 1
    if a <= 0 and b <= 0:
        return -1
    rational_dominates = a * a > 3 * b * b
    if a > 0:
        return 1 if rational_dominates else -1
    return -1 if rational_dominates else 1


def to_pair_row(row: Row) -> PairRow:
    """Scale a field-element row to primitive integer pairs."""
    denom = 1
    for entry in row:
        denom = denom * entry.rat.denominator // gcd(denom, entry.rat.denominator)
        denom = denom * entry.irr.denominator // gcd(denom, entry.irr.denominator)
    pairs = [(int(e.rat * denom), int(e.irr * denom)) for e in row]
    return _strip(pairs)


def _strip(pairs: PairRow) -> PairRow:
    content = 0
    for a, b in pairs:
        content = gcd(content, a)
        content = gcd(content, b)
        if content == 1:
            break
    if content > 1:
        pairs = [(a // content, b // content) for a, b in pairs]
    for pair in pairs:
        s = _pair_sign(pair)
        if s:
            if s < 0:
                pairs = [(-a, -b) for a, b in pairs]
            break
    return pairs


class ReducedEchelon:
    """Incremental fully reduced row echelon over Q(sqrt(3)).

    One stored row per pivot column; each leads with 1 at its pivot and is
    zero at every other pivot column, so kernel vectors read off directly.
    """

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self.pivot_rows: dict[int, List[FieldElement]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def pivot_columns(self) -> list[int]:
        return sorted(self.pivot_rows)

    def free_columns(self) -> list[int]:
        taken = self.pivot_rows
        return [c for c in range(self.ncols) if c not in taken]

    def reduce(self, row: Row) -> tuple[int, List[FieldElement]]:
        """Eliminate against every stored pivot; returns (lead column, residual).

        The scan runs past the lead so the residual is zero at all pivot
        columns; stopping at the lead would leave stale pivot-column entries.
        """
        work = list(row)
        lead = self.ncols
        col = 0
        while col < self.ncols:
            if not work[col]:
                col += 1
                continue
            pivot = self.pivot_rows.get(col)
            if pivot is None:
                if lead == self.ncols:
                    lead = col
                col += 1
                continue
            factor = work[col]
            for c in range(col, self.ncols):
                if pivot[c]:
                    work[c] = work[c] - factor * pivot[c]
            col += 1
        return lead, work

    def add_row(self, row: Row) -> bool:
        """Insert a field-element row; True when it increases the rank."""
        col, residual = self.reduce(row)
        if col >= self.ncols:
            return False
        inv = _ONE / residual[col]
        residual = [entry * inv if entry else _ZERO for entry in residual]
        for prow in self.pivot_rows.values():
            factor = prow[col]
            if factor:
                for c in range(col, self.ncols):
                    if residual[c]:
                        prow[c] = prow[c] - factor * residual[c]
        self.pivot_rows[col] = residual
        return True

    def contains(self, row: Row) -> bool:
        col, _ = self.reduce(row)
        return col >= self.ncols

    def solve_coordinates(self, free_values: dict[int, FieldElement]) -> List[FieldElement]:
        """Kernel vector with the given values on free columns (0 elsewhere)."""
        vector: list[FieldElement] = [_ZERO] * self.ncols
        for col, value in free_values.items():
            vector[col] = value
        for pcol, prow in self.pivot_rows.items():
            total = _ZERO
            for col, value in free_values.items():
                if value and prow[col]:
                    total = total + prow[col] * value
            vector[pcol] = -total
        return vector


def rank(rows: Iterable[Row], ncols: int) -> int:
    ech = ReducedEchelon(ncols)
    for row in rows:
        ech.add_row(row)
    return ech.rank


def kernel_basis(rows: Iterable[Row], ncols: int) -> List[List[FieldElement]]:
    """Exact kernel basis; one vector per free column, in column order.

    Each basis vector has value 1 at its free column and 0 at the others,
    which makes the basis deterministic and triangular on free columns.
    """
    ech = ReducedEchelon(ncols)
    for row in rows:
        ech.add_row(row)
    basis = []
    for free_col in ech.free_columns():
        basis.append(ech.solve_coordinates({free_col: _ONE}))
    return basis


def solve(rows: Sequence[Row], rhs: Sequence[FieldElement]) -> Optional[List[FieldElement]]:
    """One exact solution of A*x = b, or None when inconsistent.

    Small-system path (dense field arithmetic); free variables are set to 0.
    """
    nrows = len(rows)
    if nrows != len(rhs):
        raise ValueError("rhs length must match row count")
    ncols = len(rows[0]) if nrows else 0
    ech = ReducedEchelon(ncols + 1)
    for i, row in enumerate(rows):
        ech.add_row(list(row) + [rhs[i]])
    if ncols in ech.pivot_rows:
        return None
    solution = ech.solve_coordinates({ncols: FieldElement(-1)})
    return solution[:ncols]


def det3(matrix: Sequence[Sequence[FieldElement]]) -> FieldElement:
    m = matrix
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
