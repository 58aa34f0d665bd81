"""Explicit constructions: Cauchy and Vandermonde matrices, polynomial
evaluation orthogonal arrays, difference-matrix conversions, and the
extended Reed-Solomon parity-check completions that give restricted
transforms."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .arrays import AontClaim, GFArray, VerificationReport, all_input_tuples
from .errors import (
    BadDegree,
    BadSize,
    BadT,
    Not2Regular,
    NotDifferenceMatrix,
    RepeatedPoint,
    SizeMismatch,
    TooManyColumns,
    ZeroEntry,
    ZeroPoint,
)
from .field import FieldElement, FieldSpec, discrete_log, make_field, primitive_element
from .linalg import MatrixGF, all_submatrices_invertible, determinant, shrink  # noqa: F401

__all__ = [
    "DifferenceMatrix", "cauchy", "vandermonde", "oa_rs",
    "strong_to_dm", "dm_to_matrix", "verify_dm",
    "doubly_parity_check", "triply_parity_check",
    "rs_restricted_doubly", "rs_restricted_triply", "shrink",
]


class DifferenceMatrix:
    """k x (g*lam) matrix over the cyclic group Z_g."""

    __slots__ = ("g", "k", "lam", "entries")

    def __init__(self, g: int, k: int, lam: int, entries):
        arr = np.array(entries, dtype=np.int64) % g
        if arr.shape != (k, g * lam):
            raise SizeMismatch(f"expected shape ({k}, {g * lam}), got {arr.shape}")
        arr.flags.writeable = False
        self.g = g
        self.k = k
        self.lam = lam
        self.entries = arr

    def __eq__(self, other) -> bool:
        return (isinstance(other, DifferenceMatrix)
                and (self.g, self.k, self.lam) == (other.g, other.k, other.lam)
                and bool(np.array_equal(self.entries, other.entries)))

    def __repr__(self) -> str:
        return f"DifferenceMatrix(g={self.g}, k={self.k}, lam={self.lam})"


def _encodings(f: FieldSpec, points) -> list[int]:
    out = []
    for x in points:
        e = x.encoding if isinstance(x, FieldElement) else int(x)
        if not 0 <= e < f.q:
            raise ValueError(f"encoding {e} out of range for {f!r}")
        out.append(e)
    return out


def cauchy(f: FieldSpec, r_points, c_points) -> MatrixGF:
    """Matrix with entries 1/(r_i - c_j); super-regular when square."""
    rs = _encodings(f, r_points)
    cs = _encodings(f, c_points)
    combined = rs + cs
    if len(set(combined)) != len(combined):
        raise RepeatedPoint(f"points must be pairwise distinct, got {combined}")
    rows = [[f.inv_enc(f.sub_enc(r, c)) for c in cs] for r in rs]
    return MatrixGF(f, rows)


def vandermonde(f: FieldSpec, points) -> MatrixGF:
    """Square matrix whose row i holds the i-th powers of the points."""
    ps = _encodings(f, points)
    if len(set(ps)) != len(ps):
        raise RepeatedPoint(f"points must be distinct, got {ps}")
    if 0 in ps:
        raise ZeroPoint("zero is not allowed as an evaluation point")
    size = len(ps)
    rows = [[f.pow_enc(x, i) for x in ps] for i in range(size)]
    return MatrixGF(f, rows)


def vandermonde_all_nonzero(f: FieldSpec) -> MatrixGF:
    """Vandermonde on every nonzero field element, in encoding order."""
    return vandermonde(f, list(range(1, f.q)))


def oa_rs(f: FieldSpec, strength: int, k: int) -> GFArray:
    """Polynomial-evaluation orthogonal array of the given strength.

    Rows are indexed by the q^strength polynomials of degree < strength; the
    first min(k, q) columns evaluate at distinct field points in encoding
    order, and a (q+1)-th column, when requested, holds the top coefficient.
    """
    q = f.q
    if k > q + 1:
        raise TooManyColumns(f"at most q+1 = {q + 1} columns, requested {k}")
    if not 1 <= strength <= k:
        raise BadSize(f"strength {strength} out of range for {k} columns")
    coeffs = all_input_tuples(q, strength)  # column i holds coefficient of x^i
    eval_mat = np.zeros((strength, k), dtype=np.int64)
    for j in range(min(k, q)):
        for i in range(strength):
            eval_mat[i, j] = f.pow_enc(j, i)
    if k == q + 1:
        eval_mat[strength - 1, q] = 1
    data = _kernels.gf_matmul(coeffs, eval_mat, f.exp_table, f.log_table, f.p, f.n)
    return GFArray(f, strength, k - strength, data)


def strong_to_dm(m: MatrixGF) -> DifferenceMatrix:
    """Entrywise discrete logs of a (q-1) x (q-1) matrix with the pairwise
    2x2 invertibility property; yields a (q-1, q-1; 1) difference matrix."""
    f = m.field
    g = f.q - 1
    if m.rows != m.cols or m.rows != g:
        raise SizeMismatch(f"expected a {g}x{g} matrix over {f!r}, got {m.rows}x{m.cols}")
    zeros = np.argwhere(m.data == 0)
    if zeros.size:
        raise ZeroEntry(f"zero entry at {tuple(int(x) for x in zeros[0])}")
    check = all_submatrices_invertible(m, 2) if g >= 2 else None
    if check is not None and not check.holds:
        w = check.witness
        raise Not2Regular(f"singular 2x2 submatrix at rows {w.row_indices}, cols {w.col_indices}")
    alpha = primitive_element(f)
    logs = [[discrete_log(f, alpha, m.element(i, j)) for j in range(g)] for i in range(g)]
    return DifferenceMatrix(g, g, 1, logs)


def dm_to_matrix(d: DifferenceMatrix, f: FieldSpec) -> MatrixGF:
    """Exponentiate a (q-1, q-1; 1) difference matrix entrywise.

    The result has no zero entries and all 2x2 submatrices invertible; whole
    matrix invertibility is not guaranteed and is left to the caller.
    """
    g = f.q - 1
    if (d.g, d.k, d.lam) != (g, g, 1):
        raise SizeMismatch(
            f"need a ({g}, {g}; 1) difference matrix for {f!r}, got ({d.g}, {d.k}; {d.lam})")
    report = verify_dm(d)
    if not report.verdict:
        raise NotDifferenceMatrix(f"difference property fails: {report}")
    alpha = primitive_element(f)
    rows = [[f.pow_enc(alpha.encoding, int(e)) for e in row] for row in d.entries]
    return MatrixGF(f, rows)


def verify_dm(d: DifferenceMatrix) -> VerificationReport:
    """Check that every row pair's differences cover Z_g exactly lam times."""
    claim = AontClaim("dm", dm_params=(d.g, d.k, d.lam))
    for i in range(d.k):
        for j in range(i + 1, d.k):
            diffs = (d.entries[i] - d.entries[j]) % d.g
            counts = np.bincount(diffs, minlength=d.g)
            bad = np.nonzero(counts != d.lam)[0]
            if bad.size:
                return VerificationReport(
                    claim, False, failing_column_set=(i + 1, j + 1),
                    failing_tuple=(int(bad[0]),),
                    observed=int(counts[bad[0]]), expected=d.lam,
                    notes=("failing_column_set names the 1-based row pair",))
    return VerificationReport(claim, True)


def _complete_with_unit_rows(f: FieldSpec, top: list[list[int]]) -> MatrixGF:
    """Complete independent rows to an invertible square matrix by greedily
    appending unit rows in increasing column order, skipping any that would
    stay inside the span."""
    width = len(top[0])
    basis: list[tuple[int, list[int]]] = []  # (pivot column, normalized row)

    def try_add(vec: list[int]) -> bool:
        red = vec[:]
        for piv, brow in basis:
            factor = red[piv]
            if factor:
                red = [f.sub_enc(x, f.mul_enc(factor, y)) for x, y in zip(red, brow)]
        piv = next((i for i, x in enumerate(red) if x != 0), None)
        if piv is None:
            return False
        pinv = f.inv_enc(red[piv])
        basis.append((piv, [f.mul_enc(pinv, x) for x in red]))
        return True

    rows = [r[:] for r in top]
    for r in top:
        if not try_add(r):
            raise BadSize("base rows are not linearly independent")
    for col in range(width):
        if len(rows) == width:
            break
        cand = [0] * width
        cand[col] = 1
        if try_add(cand):
            rows.append(cand)
    result = MatrixGF(f, rows)
    if determinant(result) == 0:  # cannot happen: rank grew to full
        raise BadSize("completion failed to produce an invertible matrix")
    return result


def doubly_parity_check(f: FieldSpec, t: int) -> MatrixGF:
    """t x (q+1) matrix: power columns (1, w, ..., w^(t-1)) for every field
    element plus the unit column (0, ..., 0, 1); any t columns independent."""
    q = f.q
    if not 1 <= t <= q + 1:
        raise BadT(f"need 1 <= t <= q+1 = {q + 1}, got {t}")
    cols = [[f.pow_enc(w, i) for i in range(t)] for w in range(q)]
    cols.append([0] * (t - 1) + [1])
    return MatrixGF(f, np.array(cols, dtype=np.int64).T)


def triply_parity_check(f: FieldSpec) -> MatrixGF:
    """3 x (q+2) matrix: columns (1, w, w^2) for the q-1 nonzero elements
    plus the three unit columns.  Every 3 columns are independent exactly
    when the field has characteristic 2."""
    q = f.q
    cols = [[1, w, f.mul_enc(w, w)] for w in range(1, q)]
    cols.extend([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    return MatrixGF(f, np.array(cols, dtype=np.int64).T)


def rs_restricted_doubly(f: FieldSpec, t: int) -> MatrixGF:
    """(q+1) x (q+1) invertible matrix whose first t rows have every t
    columns independent; a first-t-rows restricted transform matrix."""
    top = doubly_parity_check(f, t)
    return _complete_with_unit_rows(f, top.row_lists())


def rs_restricted_triply(n: int) -> MatrixGF:
    """(q+2) x (q+2) invertible matrix over GF(2^n) whose first 3 rows have
    every 3 columns independent; requires characteristic 2."""
    if n < 2:
        raise BadDegree(f"need extension degree >= 2, got {n}")
    f = make_field(2, n)
    top = triply_parity_check(f)
    return _complete_with_unit_rows(f, top.row_lists())
