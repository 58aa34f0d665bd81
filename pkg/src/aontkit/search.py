"""Exhaustive search for extremal strong-transform matrix sizes.

exists_strong enumerates normalized matrices (all-ones first row and column,
justified by scaling invariance) with backtracking over the free block, and
max_strong climbs sizes from an analytic lower witness until an exhaustive
search comes back empty or the space outgrows the candidate cap, with the
proven upper bounds as rails.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations

from . import _kernels
from .constructions import cauchy, vandermonde_all_nonzero
from .errors import BadOrder, BadSize, NonPrimeCharacteristic, UnsupportedSize
from .field import FieldSpec, is_prime, make_field_of_order
from .linalg import MatrixGF, _det_enc, all_submatrices_invertible, determinant

DEFAULT_CANDIDATE_CAP = 10 ** 9

FOUND = "found"
EXHAUSTED = "exhausted_none"
ABORTED = "aborted_cap"

_STATUS_NAMES = {
    _kernels.SEARCH_EXHAUSTED: EXHAUSTED,
    _kernels.SEARCH_FOUND: FOUND,
    _kernels.SEARCH_ABORTED: ABORTED,
}


@dataclass(frozen=True)
class SearchResult:
    q: int
    s: int
    t: int
    outcome: str  # found | exhausted_none | aborted_cap
    witness: MatrixGF | None
    candidates_examined: int
    elapsed: float


@dataclass(frozen=True)
class BoundsReport:
    q: int
    bush: int
    upper: int
    lower_witness: MatrixGF | None
    notes: tuple[str, ...]

    @property
    def lower(self) -> int | None:
        return self.lower_witness.rows if self.lower_witness is not None else None


@dataclass(frozen=True)
class MaxStrongReport:
    q: int
    t: int
    lower: int
    upper: int
    witnesses: dict[int, MatrixGF]
    searches: tuple[SearchResult, ...]
    stopped_by: str
    notes: tuple[str, ...] = dc_field(default_factory=tuple)

    @property
    def value(self) -> int | None:
        return self.lower if self.lower == self.upper else None

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lower, self.upper)


def bush_upper(t1: int, q: int) -> int:
    """Orthogonal-array bound on the size: max(q + t1 - 1, t1 + 1)."""
    return max(q + t1 - 1, t1 + 1)


def passes_range_criterion(m: MatrixGF, t1: int, t2: int) -> bool:
    """Matrix-side criterion: invertible and every t x t submatrix
    invertible for t1 <= t <= t2."""
    if m.rows != m.cols or determinant(m) == 0:
        return False
    return all(all_submatrices_invertible(m, t).holds for t in range(t1, t2 + 1))


def _field_of_order(q: int) -> FieldSpec:
    try:
        return make_field_of_order(q)
    except (NonPrimeCharacteristic, UnsupportedSize) as exc:
        raise BadOrder(str(exc)) from None


def analytic_bounds(q: int) -> BoundsReport:
    """Proven rails for the largest size carrying the [1,2] property.

    Upper: q-1 in general, improving to q-2 for odd q > 3.  Lower: a Cauchy
    matrix of size floor(q/2) whenever q >= 4, upgraded to the full
    Vandermonde of size q-1 when q = 2^n with 2^n - 1 prime (bound is tight
    there).
    """
    if q <= 2:
        raise BadOrder(f"need a prime power q > 2, got {q}")
    f = _field_of_order(q)
    notes = [f"bush bound with t1=1: s <= {bush_upper(1, q)}"]
    if q % 2 == 1 and q > 3:
        upper = q - 2
        notes.append(f"upper {upper}: odd prime power bound q-2")
    else:
        upper = q - 1
        notes.append(f"upper {upper}: zero-free rows force s <= q-1")
    witness = None
    if f.p == 2 and is_prime(q - 1):
        witness = vandermonde_all_nonzero(f)
        notes.append(f"lower {q - 1}: Vandermonde witness on all nonzero points "
                     "(2^n - 1 prime), meets the upper bound")
    elif q >= 4:
        half = q // 2
        witness = cauchy(f, list(range(half)), list(range(half, 2 * half)))
        notes.append(f"lower {half}: Cauchy witness of size floor(q/2)")
    else:
        notes.append("no analytic lower witness for q = 3")
    if witness is not None and not passes_range_criterion(witness, 1, 2):
        raise AssertionError("analytic witness failed self-check")  # unreachable
    return BoundsReport(q, bush_upper(1, q), upper, witness, tuple(notes))


def _search_space(q: int, s: int) -> int:
    return (q - 1) ** ((s - 1) ** 2)


def _search_generic(f: FieldSpec, s: int, t: int, cap: int):
    """Backtracking for t >= 3: on each placement re-check every newly
    completed square submatrix of order 2..t, then the determinant."""
    q = f.q
    w = s - 1
    m = w * w
    mat = [[1] * s for _ in range(s)]
    choice = [0] * m
    examined = 0
    k = 0

    def placement_ok(i: int, j: int, e: int) -> bool:
        mat[i][j] = e
        for order in range(2, t + 1):
            if order > i + 1 or order > j + 1:
                break
            for rsel in combinations(range(i), order - 1):
                rows = rsel + (i,)
                for csel in combinations(range(j), order - 1):
                    cols = csel + (j,)
                    sub = [[mat[r][c] for c in cols] for r in rows]
                    if _det_enc(f, sub) == 0:
                        return False
        return True

    while True:
        i = 1 + k // w
        j = 1 + k % w
        e = choice[k] + 1
        placed = False
        while e < q:
            examined += 1
            if examined > cap:
                return _kernels.SEARCH_ABORTED, None, examined
            if placement_ok(i, j, e):
                placed = True
                break
            e += 1
        if placed:
            choice[k] = e
            mat[i][j] = e
            if k == m - 1:
                if _det_enc(f, mat) != 0:
                    return _kernels.SEARCH_FOUND, [row[:] for row in mat], examined
                continue
            k += 1
            choice[k] = 0
        else:
            mat[i][j] = 1
            choice[k] = 0
            k -= 1
            if k < 0:
                return _kernels.SEARCH_EXHAUSTED, None, examined


def _run_search(f: FieldSpec, s: int, t: int, cap: int, jobs: int):
    if t >= 3:
        return _search_generic(f, s, t, cap)
    args = (f.exp_table, f.log_table, f.p, f.n)
    if jobs > 1 and s > 2:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_kernels.search_strong, s, f.q, *args, cap, t, e)
                       for e in range(1, f.q)]
            branch = [fut.result() for fut in futures]
        examined = sum(b[2] for b in branch)
        for status, witness, _ in branch:  # ascending first-cell value
            if status == _kernels.SEARCH_FOUND:
                return status, witness, examined
            if status == _kernels.SEARCH_ABORTED:
                return status, None, examined
        return _kernels.SEARCH_EXHAUSTED, None, examined
    return _kernels.search_strong(s, f.q, *args, cap, t, -1)


def exists_strong(q: int, s: int, t: int = 2,
                  candidate_cap: int = DEFAULT_CANDIDATE_CAP,
                  jobs: int = 1) -> SearchResult:
    """Exhaustive search for an s x s matrix passing the [1,t] criterion.

    Matrices are normalized (first row and column all ones) and the free
    entries vary row-major over nonzero encodings, so the first witness in
    that order is returned.  candidates_examined counts attempted entry
    placements.
    """
    if t < 1 or s < t:
        raise BadSize(f"need 1 <= t <= s, got t={t}, s={s}")
    f = _field_of_order(q)
    start = time.perf_counter()
    if _search_space(q, s) > candidate_cap:
        return SearchResult(q, s, t, ABORTED, None, 0, time.perf_counter() - start)
    if s == 1:
        witness = MatrixGF(f, [[1]])
        return SearchResult(q, s, t, FOUND, witness, 1, time.perf_counter() - start)
    status, rows, examined = _run_search(f, s, t, candidate_cap, jobs)
    witness = MatrixGF(f, rows) if status == _kernels.SEARCH_FOUND else None
    return SearchResult(q, s, t, _STATUS_NAMES[status], witness, examined,
                        time.perf_counter() - start)


def max_strong(q: int, t: int = 2,
               candidate_cap: int = DEFAULT_CANDIDATE_CAP,
               external_witnesses=None,
               jobs: int = 1) -> MaxStrongReport:
    """Largest size with a verified [1,t] witness, with certificates.

    Climbs from the analytic lower witness (and any supplied external
    witnesses, each re-verified) one size at a time.  An exhaustive empty
    search pins the value; a search space beyond the candidate cap leaves
    the interval [largest witness, analytic upper].
    """
    if t == 2:
        bounds = analytic_bounds(q)
        upper = bounds.upper
        notes = list(bounds.notes)
        base_witness = bounds.lower_witness
    else:
        _field_of_order(q)
        if q <= 2:
            raise BadOrder(f"need a prime power q > 2, got {q}")
        upper = bush_upper(1, q)
        notes = [f"bush bound with t1=1: s <= {upper} (no sharper rail for t={t})"]
        base_witness = None

    witnesses: dict[int, MatrixGF] = {}
    best = 0
    if base_witness is not None:
        witnesses[base_witness.rows] = base_witness
        best = base_witness.rows
    for ext in external_witnesses or []:
        if ext.field.q != q:
            raise BadOrder(f"external witness over GF({ext.field.q}), expected GF({q})")
        if not passes_range_criterion(ext, 1, t):
            raise BadSize("external witness fails the criterion")
        if ext.rows > upper:
            raise BadSize(f"witness of size {ext.rows} contradicts upper bound {upper}")
        witnesses[ext.rows] = ext
        best = max(best, ext.rows)
        notes.append(f"external witness accepted at s = {ext.rows}")

    # Climb past the analytic upper bound on purpose: an empty exhaustive
    # search is the strongest certificate for the maximum.  The bound only
    # clamps the interval when the cap stops the climb first.
    searches: list[SearchResult] = []
    s_next = max(best + 1, t)
    while True:
        if _search_space(q, s_next) > candidate_cap:
            stop = ("largest witness meets the analytic upper bound; larger "
                    "sizes are beyond the candidate cap" if best == upper
                    else "candidate cap reached before the analytic upper bound")
            notes.append(f"search space at s = {s_next} exceeds candidate cap; "
                         f"interval [{best}, {upper}] reported")
            return MaxStrongReport(q, t, best, upper, witnesses, tuple(searches),
                                   stop, tuple(notes))
        res = exists_strong(q, s_next, t, candidate_cap, jobs)
        searches.append(res)
        if res.outcome == FOUND:
            if s_next > upper:
                raise AssertionError(
                    f"witness at s = {s_next} contradicts upper bound {upper}")
            witnesses[s_next] = res.witness
            best = s_next
            s_next += 1
        elif res.outcome == EXHAUSTED:
            return MaxStrongReport(q, t, best, best, witnesses, tuple(searches),
                                   f"exhaustive search found nothing at s = {s_next}",
                                   tuple(notes))
        else:
            notes.append(f"search aborted by candidate cap at s = {s_next}")
            return MaxStrongReport(q, t, best, upper, witnesses, tuple(searches),
                                   "candidate cap", tuple(notes))
