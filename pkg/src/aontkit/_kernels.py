"""Hot numeric kernels with numba and pure-numpy implementations.

Three inner loops dominate runtime: projection counting over transform
arrays, GF matrix application to every input tuple, and the backtracking
search over normalized matrices.  Each has a numba twin and a numpy/python
twin with identical outputs; AONTKIT_BACKEND=numpy forces the fallback,
AONTKIT_BACKEND=numba requires numba, anything else auto-detects.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("AONTKIT_BACKEND", "auto").strip().lower()
if _env in ("", "auto"):
    try:
        from numba import njit
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
elif _env == "numpy":
    HAVE_NUMBA = False
elif _env == "numba":
    from numba import njit
    HAVE_NUMBA = True
else:  # pragma: no cover
    raise ValueError(f"bad AONTKIT_BACKEND value: {_env!r}")


def backend_name() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# projection counting: occurrence counts of every tuple in selected columns

def projection_counts_numpy(data: np.ndarray, cols: np.ndarray, v: int) -> np.ndarray:
    idx = np.zeros(data.shape[0], dtype=np.int64)
    for c in cols:
        idx *= v
        idx += data[:, c]
    return np.bincount(idx, minlength=v ** len(cols))


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _projection_counts_jit(data, cols, v, size):  # pragma: no cover - jit
        counts = np.zeros(size, dtype=np.int64)
        m = cols.shape[0]
        for r in range(data.shape[0]):
            idx = 0
            for c in range(m):
                idx = idx * v + data[r, cols[c]]
            counts[idx] += 1
        return counts

    def projection_counts_numba(data, cols, v):
        return _projection_counts_jit(
            np.ascontiguousarray(data, dtype=np.int64),
            np.asarray(cols, dtype=np.int64), v, v ** len(cols))

else:
    projection_counts_numba = None


def projection_counts(data, cols, v):
    if HAVE_NUMBA:
        return projection_counts_numba(data, cols, v)
    return projection_counts_numpy(data, np.asarray(cols, dtype=np.int64), v)


# ---------------------------------------------------------------------------
# GF matrix application: rows of xs times mat, all over GF(p^ndig)

def _add_vec(a: np.ndarray, b: np.ndarray, p: int, ndig: int) -> np.ndarray:
    if ndig == 1:
        return (a + b) % p
    out = np.zeros_like(a)
    pw = 1
    for _ in range(ndig):
        out += ((a // pw + b // pw) % p) * pw
        pw *= p
    return out


def gf_matmul_numpy(xs, mat, exp, log, p, ndig):
    n_rows = xs.shape[0]
    s, n_cols = mat.shape
    out = np.zeros((n_rows, n_cols), dtype=np.int64)
    for j in range(n_cols):
        acc = np.zeros(n_rows, dtype=np.int64)
        for k in range(s):
            b = int(mat[k, j])
            if b == 0:
                continue
            col = xs[:, k]
            prod = np.zeros(n_rows, dtype=np.int64)
            nz = col != 0
            prod[nz] = exp[log[col[nz]] + log[b]]
            acc = _add_vec(acc, prod, p, ndig)
        out[:, j] = acc
    return out


if HAVE_NUMBA:

    @njit(cache=True, inline="always")
    def _kadd(a, b, p, ndig):  # pragma: no cover - jit
        if ndig == 1:
            return (a + b) % p
        out = 0
        pw = 1
        for _ in range(ndig):
            out += ((a // pw + b // pw) % p) * pw
            pw *= p
        return out

    @njit(cache=True, inline="always")
    def _ksub(a, b, p, ndig):  # pragma: no cover - jit
        if ndig == 1:
            return (a - b) % p
        out = 0
        pw = 1
        for _ in range(ndig):
            out += ((a // pw - b // pw) % p) * pw
            pw *= p
        return out

    @njit(cache=True, nogil=True)
    def _gf_matmul_jit(xs, mat, exp, log, p, ndig):  # pragma: no cover - jit
        n_rows = xs.shape[0]
        s = mat.shape[0]
        n_cols = mat.shape[1]
        out = np.zeros((n_rows, n_cols), dtype=np.int64)
        for r in range(n_rows):
            for j in range(n_cols):
                acc = 0
                for k in range(s):
                    a = xs[r, k]
                    b = mat[k, j]
                    if a != 0 and b != 0:
                        acc = _kadd(acc, exp[log[a] + log[b]], p, ndig)
                out[r, j] = acc
        return out

    def gf_matmul_numba(xs, mat, exp, log, p, ndig):
        return _gf_matmul_jit(
            np.ascontiguousarray(xs, dtype=np.int64),
            np.ascontiguousarray(mat, dtype=np.int64),
            exp, log, p, ndig)

else:
    gf_matmul_numba = None


def gf_matmul(xs, mat, exp, log, p, ndig):
    if HAVE_NUMBA:
        return gf_matmul_numba(xs, mat, exp, log, p, ndig)
    return gf_matmul_numpy(xs, mat, exp, log, p, ndig)


# ---------------------------------------------------------------------------
# backtracking search over normalized matrices (first row/column all ones)
#
# Cells of the free (s-1) x (s-1) block are filled row-major with nonzero
# encodings in increasing order.  For t=2 a placement must keep every fully
# placed 2x2 submatrix invertible; a completed matrix must additionally have
# nonzero determinant.  Status codes: 0 exhausted, 1 found, 2 cap hit.

SEARCH_EXHAUSTED = 0
SEARCH_FOUND = 1
SEARCH_ABORTED = 2


def _py_det(mat, s, exp, log, p, ndig, q):
    a = [row[:] for row in mat]
    qm1 = q - 1
    det = 1
    for c in range(s):
        piv = -1
        for r in range(c, s):
            if a[r][c] != 0:
                piv = r
                break
        if piv < 0:
            return 0
        if piv != c:
            a[piv], a[c] = a[c], a[piv]
            det = _py_sub(0, det, p, ndig)
        pval = a[c][c]
        det = exp[log[det] + log[pval]] if det != 0 else 0
        pinv = exp[(qm1 - log[pval]) % qm1]
        for r in range(c + 1, s):
            if a[r][c] == 0:
                continue
            f = exp[log[a[r][c]] + log[pinv]]
            for cc in range(c, s):
                acc = a[c][cc]
                if acc != 0:
                    a[r][cc] = _py_sub(a[r][cc], exp[log[f] + log[acc]], p, ndig)
    return det


def _py_sub(a, b, p, ndig):
    if ndig == 1:
        return (a - b) % p
    out, pw = 0, 1
    for _ in range(ndig):
        out += ((a // pw - b // pw) % p) * pw
        pw *= p
    return out


def search_strong_python(s, q, exp, log, p, ndig, cap, tmode, fixed_first=-1):
    exp = list(exp)
    log = list(log)
    qm1 = q - 1
    w = s - 1
    m = w * w
    mat = [[1] * s for _ in range(s)]
    choice = [0] * m
    examined = 0
    k = 0
    while True:
        i = 1 + k // w
        j = 1 + k % w
        lo, hi = 1, q - 1
        if k == 0 and fixed_first > 0:
            lo = hi = fixed_first
        e = max(lo, choice[k] + 1)
        placed = False
        while e <= hi:
            examined += 1
            if examined > cap:
                return SEARCH_ABORTED, None, examined
            ok = True
            if tmode >= 2:
                if e == 1:
                    ok = False
                if ok:
                    for jj in range(1, j):
                        if mat[i][jj] == e:
                            ok = False
                            break
                if ok:
                    for ii in range(1, i):
                        if mat[ii][j] == e:
                            ok = False
                            break
                if ok:
                    le = log[e]
                    for ii in range(1, i):
                        lij = log[mat[ii][j]]
                        for jj in range(1, j):
                            if (log[mat[ii][jj]] + le) % qm1 == (lij + log[mat[i][jj]]) % qm1:
                                ok = False
                                break
                        else:
                            continue
                        break
            if ok:
                placed = True
                break
            e += 1
        if placed:
            choice[k] = e
            mat[i][j] = e
            if k == m - 1:
                if _py_det(mat, s, exp, log, p, ndig, q) != 0:
                    return SEARCH_FOUND, [row[:] for row in mat], examined
                continue
            k += 1
            choice[k] = 0
        else:
            choice[k] = 0
            k -= 1
            if k < 0:
                return SEARCH_EXHAUSTED, None, examined


if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _det_jit(mat, s, exp, log, p, ndig, q):  # pragma: no cover - jit
        a = mat.copy()
        qm1 = q - 1
        det = 1
        for c in range(s):
            piv = -1
            for r in range(c, s):
                if a[r, c] != 0:
                    piv = r
                    break
            if piv < 0:
                return 0
            if piv != c:
                for cc in range(s):
                    tmp = a[piv, cc]
                    a[piv, cc] = a[c, cc]
                    a[c, cc] = tmp
                det = _ksub(0, det, p, ndig)
            pval = a[c, c]
            if det != 0:
                det = exp[log[det] + log[pval]]
            pinv = exp[(qm1 - log[pval]) % qm1]
            for r in range(c + 1, s):
                if a[r, c] == 0:
                    continue
                f = exp[log[a[r, c]] + log[pinv]]
                for cc in range(c, s):
                    acc = a[c, cc]
                    if acc != 0:
                        a[r, cc] = _ksub(a[r, cc], exp[log[f] + log[acc]], p, ndig)
        return det

    @njit(cache=True, nogil=True)
    def _search_jit(s, q, exp, log, p, ndig, cap, tmode, fixed_first):  # pragma: no cover - jit
        qm1 = q - 1
        w = s - 1
        m = w * w
        mat = np.ones((s, s), dtype=np.int64)
        choice = np.zeros(m, dtype=np.int64)
        examined = np.int64(0)
        k = 0
        while True:
            i = 1 + k // w
            j = 1 + k % w
            lo = 1
            hi = q - 1
            if k == 0 and fixed_first > 0:
                lo = fixed_first
                hi = fixed_first
            e = choice[k] + 1
            if e < lo:
                e = lo
            placed = False
            while e <= hi:
                examined += 1
                if examined > cap:
                    return SEARCH_ABORTED, mat, examined
                ok = True
                if tmode >= 2:
                    if e == 1:
                        ok = False
                    if ok:
                        for jj in range(1, j):
                            if mat[i, jj] == e:
                                ok = False
                                break
                    if ok:
                        for ii in range(1, i):
                            if mat[ii, j] == e:
                                ok = False
                                break
                    if ok:
                        le = log[e]
                        for ii in range(1, i):
                            lij = log[mat[ii, j]]
                            for jj in range(1, j):
                                if (log[mat[ii, jj]] + le) % qm1 == (lij + log[mat[i, jj]]) % qm1:
                                    ok = False
                                    break
                            if not ok:
                                break
                if ok:
                    placed = True
                    break
                e += 1
            if placed:
                choice[k] = e
                mat[i, j] = e
                if k == m - 1:
                    if _det_jit(mat, s, exp, log, p, ndig, q) != 0:
                        return SEARCH_FOUND, mat, examined
                    continue
                k += 1
                choice[k] = 0
            else:
                choice[k] = 0
                k -= 1
                if k < 0:
                    return SEARCH_EXHAUSTED, mat, examined

    def search_strong_numba(s, q, exp, log, p, ndig, cap, tmode, fixed_first=-1):
        status, mat, examined = _search_jit(
            s, q, exp, log, p, ndig, cap, tmode, fixed_first)
        witness = [list(map(int, row)) for row in mat] if status == SEARCH_FOUND else None
        return int(status), witness, int(examined)

else:
    search_strong_numba = None


def search_strong(s, q, exp, log, p, ndig, cap, tmode, fixed_first=-1):
    if HAVE_NUMBA:
        return search_strong_numba(s, q, exp, log, p, ndig, cap, tmode, fixed_first)
    return search_strong_python(s, q, exp, log, p, ndig, cap, tmode, fixed_first)
