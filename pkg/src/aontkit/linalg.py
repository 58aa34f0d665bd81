"""Dense matrices over GF(q) and the submatrix-invertibility predicates.

All invertibility notions used by the transform verifiers reduce to "every
t x t submatrix (possibly restricted to a row interval) has nonzero
determinant"; this module owns that check and returns deterministic failure
certificates.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import BadIndex, BadSize, NotSquare, SingularMatrix, SizeCapExceeded, ZeroInFrame
from .field import FieldElement, FieldSpec

DEFAULT_SUBMATRIX_CAP = 10 ** 8


class MatrixGF:
    """Immutable dense matrix of field-element encodings."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, data):
        arr = np.array(data, dtype=np.int64)
        if arr.ndim != 2:
            raise BadSize(f"matrix data must be 2-D, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise ValueError(f"entries out of range for {field!r}")
        arr.flags.writeable = False
        self.field = field
        self.data = arr

    @classmethod
    def identity(cls, field: FieldSpec, size: int) -> "MatrixGF":
        return cls(field, np.eye(size, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def element(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.field, int(self.data[i, j]))

    def row_lists(self) -> list[list[int]]:
        return [list(map(int, row)) for row in self.data]

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixGF) and self.field == other.field
                and self.data.shape == other.data.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field, self.data.tobytes(), self.data.shape))

    def __repr__(self) -> str:
        return f"MatrixGF({self.field!r}, {self.data.tolist()})"


@dataclass(frozen=True)
class SubmatrixWitness:
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    verdict: str  # "singular" or "invertible"


@dataclass(frozen=True)
class SubmatrixCheck:
    holds: bool
    witness: SubmatrixWitness | None


def _det_enc(field: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant of a small square matrix of encodings, by elimination."""
    a = [row[:] for row in rows]
    size = len(a)
    det = 1
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[piv], a[c] = a[c], a[piv]
            det = field.neg_enc(det)
        pval = a[c][c]
        det = field.mul_enc(det, pval)
        pinv = field.inv_enc(pval)
        for r in range(c + 1, size):
            f = field.mul_enc(a[r][c], pinv)
            if f == 0:
                continue
            for cc in range(c, size):
                a[r][cc] = field.sub_enc(a[r][cc], field.mul_enc(f, a[c][cc]))
    return det


def determinant(m: MatrixGF) -> FieldElement:
    if m.rows != m.cols:
        raise NotSquare(f"{m.rows}x{m.cols} matrix has no determinant")
    return FieldElement(m.field, _det_enc(m.field, m.row_lists()))


def invert(m: MatrixGF) -> MatrixGF:
    """Inverse by Gauss-Jordan elimination."""
    if m.rows != m.cols:
        raise NotSquare(f"cannot invert {m.rows}x{m.cols} matrix")
    f = m.field
    size = m.rows
    a = m.row_lists()
    inv = [[1 if i == j else 0 for j in range(size)] for i in range(size)]
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        if piv != c:
            a[piv], a[c] = a[c], a[piv]
            inv[piv], inv[c] = inv[c], inv[piv]
        pinv = f.inv_enc(a[c][c])
        a[c] = [f.mul_enc(x, pinv) for x in a[c]]
        inv[c] = [f.mul_enc(x, pinv) for x in inv[c]]
        for r in range(size):
            if r == c or a[r][c] == 0:
                continue
            factor = a[r][c]
            a[r] = [f.sub_enc(x, f.mul_enc(factor, y)) for x, y in zip(a[r], a[c])]
            inv[r] = [f.sub_enc(x, f.mul_enc(factor, y)) for x, y in zip(inv[r], inv[c])]
    return MatrixGF(f, inv)


def all_submatrices_invertible(
    m: MatrixGF,
    t: int,
    row_range: tuple[int, int] | None = None,
    cap: int = DEFAULT_SUBMATRIX_CAP,
) -> SubmatrixCheck:
    """Check every t x t submatrix, optionally restricted to a row interval.

    row_range is half-open (start, stop).  Enumeration is lexicographic over
    (row_indices, col_indices) and the first singular witness is returned.
    """
    if row_range is None:
        allowed = range(m.rows)
    else:
        start, stop = row_range
        if not (0 <= start < stop <= m.rows):
            raise BadSize(f"row_range {row_range} out of bounds for {m.rows} rows")
        allowed = range(start, stop)
    if not 1 <= t <= min(len(allowed), m.cols):
        raise BadSize(f"t={t} out of range for {len(allowed)}x{m.cols} selection")
    if comb(len(allowed), t) * comb(m.cols, t) > cap:
        raise SizeCapExceeded(
            f"submatrix enumeration C({len(allowed)},{t})*C({m.cols},{t}) exceeds cap {cap}")

    f = m.field
    d = m.data
    if t == 1:
        for r in allowed:
            for c in range(m.cols):
                if d[r, c] == 0:
                    return SubmatrixCheck(False, SubmatrixWitness((r,), (c,), "singular"))
        return SubmatrixCheck(True, None)
    if t == 2:
        rows = list(allowed)
        for a_i in range(len(rows)):
            for b_i in range(a_i + 1, len(rows)):
                ra, rb = rows[a_i], rows[b_i]
                for ca in range(m.cols):
                    for cb in range(ca + 1, m.cols):
                        lhs = f.mul_enc(int(d[ra, ca]), int(d[rb, cb]))
                        rhs = f.mul_enc(int(d[ra, cb]), int(d[rb, ca]))
                        if lhs == rhs:
                            return SubmatrixCheck(False, SubmatrixWitness(
                                (ra, rb), (ca, cb), "singular"))
        return SubmatrixCheck(True, None)
    for rsel in combinations(allowed, t):
        for csel in combinations(range(m.cols), t):
            sub = [[int(d[r, c]) for c in csel] for r in rsel]
            if _det_enc(f, sub) == 0:
                return SubmatrixCheck(False, SubmatrixWitness(rsel, csel, "singular"))
    return SubmatrixCheck(True, None)


def is_super_regular(m: MatrixGF) -> bool:
    """True iff every square submatrix of every size is invertible."""
    for t in range(1, min(m.rows, m.cols) + 1):
        if not all_submatrices_invertible(m, t).holds:
            return False
    return True


def normalize_scaling(m: MatrixGF) -> MatrixGF:
    """Scale columns then rows so the first row and first column are all ones.

    Nonzero row/column scaling multiplies every submatrix determinant by a
    nonzero constant, so the submatrix-invertibility profile is unchanged.
    """
    d = m.data
    if np.any(d[0, :] == 0) or np.any(d[:, 0] == 0):
        raise ZeroInFrame("first row and column must be free of zeros")
    f = m.field
    col_scale = np.array([f.inv_enc(int(x)) for x in d[0, :]], dtype=np.int64)
    scaled = f.mul_array(d, col_scale[np.newaxis, :])
    row_scale = np.array([f.inv_enc(int(x)) for x in scaled[:, 0]], dtype=np.int64)
    scaled = f.mul_array(scaled, row_scale[:, np.newaxis])
    return MatrixGF(f, scaled)


def shrink(m: MatrixGF, row: int, col: int) -> MatrixGF:
    """Remove one row and one column from a square matrix."""
    if m.rows != m.cols or m.rows <= 1:
        raise BadIndex(f"cannot shrink a {m.rows}x{m.cols} matrix")
    if not (0 <= row < m.rows and 0 <= col < m.cols):
        raise BadIndex(f"index ({row}, {col}) out of bounds")
    d = np.delete(np.delete(m.data, row, axis=0), col, axis=1)
    return MatrixGF(m.field, d)
