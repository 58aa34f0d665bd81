"""Array representations of transforms and the unbiasedness verifiers.

A transform on s blocks over an alphabet of size v is materialized as the
v^s x (s+n) array whose rows are (inputs, outputs).  Columns carry 1-based
labels 1..s for inputs and s+1..s+n for outputs.  An array is unbiased with
respect to a column set D when every |D|-tuple over the alphabet appears
equally often in the projection onto D; every verification below is a sweep
of such checks over a claim-specific family of column sets, reported with
the lexicographically first failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations

import numpy as np

from . import _kernels
from .errors import (
    BadColumnSet,
    BadRestriction,
    BadSize,
    NotBijective,
    NotSquareTransform,
    SizeCapExceeded,
)
from .field import FieldSpec
from .linalg import MatrixGF, invert

DEFAULT_CELL_CAP = 10 ** 8
DEFAULT_COUNT_CAP = 10 ** 8

APPLY_INVERSE = "apply_inverse"
APPLY_FORWARD = "apply_forward"


class GFArray:
    """Raw (v^s) x (s+n) array of alphabet encodings, no bijection promise."""

    __slots__ = ("field", "n_inputs", "n_outputs", "data")

    def __init__(self, field: FieldSpec, n_inputs: int, n_outputs: int, data):
        arr = np.array(data, dtype=np.int64)
        v = field.q
        if n_inputs < 1 or n_outputs < 0:
            raise BadSize(f"bad column split ({n_inputs}, {n_outputs})")
        if arr.ndim != 2 or arr.shape != (v ** n_inputs, n_inputs + n_outputs):
            raise BadSize(
                f"expected shape ({v ** n_inputs}, {n_inputs + n_outputs}), got {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= v):
            raise ValueError(f"entries out of range for alphabet of size {v}")
        arr.flags.writeable = False
        self.field = field
        self.n_inputs = n_inputs
        self.n_outputs = n_outputs
        self.data = arr

    @property
    def v(self) -> int:
        return self.field.q

    @property
    def n_cols(self) -> int:
        return self.n_inputs + self.n_outputs

    def as_transform(self) -> "TransformArray":
        return TransformArray(self.field, self.n_inputs, self.n_outputs, self.data)

    def __eq__(self, other) -> bool:
        return (type(self) is type(other) and self.field == other.field
                and self.n_inputs == other.n_inputs
                and self.n_outputs == other.n_outputs
                and bool(np.array_equal(self.data, other.data)))

    def __repr__(self) -> str:
        return (f"{type(self).__name__}(v={self.v}, s={self.n_inputs}, "
                f"n={self.n_outputs}, rows={self.data.shape[0]})")


class TransformArray(GFArray):
    """GFArray whose input columns enumerate every s-tuple exactly once."""

    def __init__(self, field, n_inputs, n_outputs, data, _skip_check=False):
        super().__init__(field, n_inputs, n_outputs, data)
        if not _skip_check:
            idx = np.zeros(self.data.shape[0], dtype=np.int64)
            for c in range(n_inputs):
                idx *= field.q
                idx += self.data[:, c]
            if np.unique(idx).size != self.data.shape[0]:
                raise NotBijective("input columns do not enumerate every tuple once")

    def as_transform(self) -> "TransformArray":
        return self


@dataclass(frozen=True)
class AontClaim:
    """Tagged parameter record naming a claimed property."""

    kind: str  # aont | rec | range | strong | restricted | oa | soa | dm
    t: int | None = None
    t1: int | None = None
    t2: int | None = None
    strength: int | None = None
    secure: frozenset[int] | None = None
    n: int | None = None
    s1: int | None = None
    s2: int | None = None
    dm_params: tuple[int, int, int] | None = None

    def __str__(self) -> str:
        k = self.kind
        if k == "aont":
            return f"aont t={self.t}"
        if k == "strong":
            return f"strong t={self.t}"
        if k == "range":
            return f"range t1={self.t1} t2={self.t2}"
        if k == "rec":
            return f"rec t={self.t} n={self.n}"
        if k == "restricted":
            inner = ",".join(str(i) for i in sorted(self.secure))
            return f"restricted R={{{inner}}} t={self.t}"
        if k == "oa":
            return f"oa strength={self.strength}"
        if k == "soa":
            return f"soa t1={self.t1} t2={self.t2} s1={self.s1} s2={self.s2}"
        if k == "dm":
            if self.dm_params is None:
                return "dm"
            g, kk, lam = self.dm_params
            return f"dm g={g} k={kk} lambda={lam}"
        return k


@dataclass(frozen=True)
class VerificationReport:
    claim: AontClaim
    verdict: bool
    failing_column_set: tuple[int, ...] | None = None
    failing_tuple: tuple[int, ...] | None = None
    observed: int | None = None
    expected: int | None = None
    notes: tuple[str, ...] = dc_field(default_factory=tuple)


def all_input_tuples(v: int, s: int) -> np.ndarray:
    """All s-tuples over [0, v), lexicographic, first coordinate heaviest."""
    idx = np.arange(v ** s, dtype=np.int64)
    cols = [(idx // v ** (s - 1 - i)) % v for i in range(s)]
    return np.stack(cols, axis=1)


def from_linear(m: MatrixGF, direction: str, cell_cap: int = DEFAULT_CELL_CAP) -> TransformArray:
    """Array representation of the linear map given by a matrix.

    apply_inverse realizes outputs = inputs * M^-1 (M square invertible);
    apply_forward realizes outputs = inputs * M for an s x n matrix, n >= s.
    """
    f = m.field
    if direction == APPLY_INVERSE:
        transform = invert(m).data  # raises NotSquare / SingularMatrix
        s, n = m.rows, m.cols
    elif direction == APPLY_FORWARD:
        if m.cols < m.rows:
            raise BadSize(f"forward transform needs cols >= rows, got {m.rows}x{m.cols}")
        transform = m.data
        s, n = m.rows, m.cols
    else:
        raise ValueError(f"unknown direction {direction!r}")
    v = f.q
    cells = v ** s * (s + n)
    if cells > cell_cap:
        raise SizeCapExceeded(f"array of {cells} cells exceeds cap {cell_cap}")
    xs = all_input_tuples(v, s)
    ys = _kernels.gf_matmul(xs, transform, f.exp_table, f.log_table, f.p, f.n)
    return TransformArray(f, s, n, np.hstack([xs, ys]), _skip_check=True)


def _counts_for(data: np.ndarray, labels: tuple[int, ...], v: int, count_cap: int) -> np.ndarray:
    if v ** len(labels) > count_cap:
        raise SizeCapExceeded(
            f"counter of size v^{len(labels)} = {v ** len(labels)} exceeds cap {count_cap}")
    cols = np.asarray([c - 1 for c in labels], dtype=np.int64)
    return _kernels.projection_counts(data, cols, v)


def is_unbiased(a: GFArray, column_set, count_cap: int = DEFAULT_COUNT_CAP) -> bool:
    """True iff every tuple appears equally often in the selected columns."""
    raw = [int(c) for c in column_set]
    if not raw or len(raw) != len(set(raw)):
        raise BadColumnSet(f"bad column set {column_set}")
    labels = tuple(sorted(raw))
    if labels[0] < 1 or labels[-1] > a.n_cols:
        raise BadColumnSet(f"columns {labels} out of range 1..{a.n_cols}")
    n_rows = a.data.shape[0]
    block = a.v ** len(labels)
    if n_rows % block != 0:
        return False
    counts = _counts_for(a.data, labels, a.v, count_cap)
    return bool(np.all(counts == n_rows // block))


def _sweep(a: GFArray, claim: AontClaim, subsets, count_cap: int) -> VerificationReport:
    """Check unbiasedness of each column set; report the first failure.

    Sets are deduplicated and checked in lexicographic order so failure
    certificates are reproducible.
    """
    n_rows = a.data.shape[0]
    v = a.v
    for labels in sorted(set(tuple(sorted(s)) for s in subsets)):
        block = v ** len(labels)
        if n_rows % block != 0:
            return VerificationReport(
                claim, False, failing_column_set=labels,
                notes=(f"row count {n_rows} not divisible by v^{len(labels)}",))
        counts = _counts_for(a.data, labels, v, count_cap)
        expected = n_rows // block
        bad = np.nonzero(counts != expected)[0]
        if bad.size:
            first = int(bad[0])
            digits = []
            for _ in range(len(labels)):
                digits.append(first % v)
                first //= v
            return VerificationReport(
                claim, False, failing_column_set=labels,
                failing_tuple=tuple(reversed(digits)),
                observed=int(counts[bad[0]]), expected=expected)
    return VerificationReport(claim, True)


def verify_oa(a: GFArray, strength: int, count_cap: int = DEFAULT_COUNT_CAP) -> VerificationReport:
    """Orthogonal-array check: unbiased on every strength-subset of columns."""
    k = a.n_cols
    if not 1 <= strength <= k:
        raise BadSize(f"strength {strength} out of range for {k} columns")
    claim = AontClaim("oa", strength=strength)
    subsets = combinations(range(1, k + 1), strength)
    return _sweep(a, claim, subsets, count_cap)


def _require_square_transform(a: GFArray) -> TransformArray:
    if a.n_outputs != a.n_inputs:
        raise BadSize(
            f"claim needs n = s, array has s={a.n_inputs}, n={a.n_outputs}")
    return a.as_transform()


def verify_range_aont(a: GFArray, t1: int, t2: int,
                      count_cap: int = DEFAULT_COUNT_CAP) -> VerificationReport:
    """Range check: the t-protection property for every t in [t1, t2].

    With t1 = t2 = t this is the plain t-transform check; with t1 = 1 it is
    the strong variant.  At t = s the output part J is empty and the check
    degenerates to the input-block set itself.
    """
    arr = _require_square_transform(a)
    s = arr.n_inputs
    if not 1 <= t1 <= t2 <= s:
        raise BadSize(f"need 1 <= t1 <= t2 <= {s}, got [{t1}, {t2}]")
    claim = AontClaim("range", t1=t1, t2=t2)
    subsets = [tuple(range(1, s + 1)), tuple(range(s + 1, 2 * s + 1))]
    for t in range(t1, t2 + 1):
        for inp in combinations(range(1, s + 1), t):
            for out in combinations(range(s + 1, 2 * s + 1), s - t):
                subsets.append(inp + out)
    return _sweep(arr, claim, subsets, count_cap)


def verify_rec_aont(a: GFArray, t: int, count_cap: int = DEFAULT_COUNT_CAP) -> VerificationReport:
    """Rectangular check: any s outputs recover, any t inputs stay hidden."""
    arr = a.as_transform()
    s, n = arr.n_inputs, arr.n_outputs
    if not 1 <= t <= s <= n:
        raise BadSize(f"need 1 <= t <= s <= n, got t={t}, s={s}, n={n}")
    claim = AontClaim("rec", t=t, n=n)
    subsets = [tuple(range(1, s + 1))]
    outputs = range(s + 1, s + n + 1)
    subsets.extend(combinations(outputs, s))
    for inp in combinations(range(1, s + 1), t):
        for out in combinations(outputs, s - t):
            subsets.append(inp + out)
    return _sweep(arr, claim, subsets, count_cap)


def verify_restricted_aont(a: GFArray, secure, t: int,
                           count_cap: int = DEFAULT_COUNT_CAP) -> VerificationReport:
    """Restricted check: the unknown outputs are confined to the secure set.

    For each t-subset K of the secure output labels, the array must be
    unbiased on I union J where J is all outputs except K and I is any t
    input labels.
    """
    arr = _require_square_transform(a)
    s = arr.n_inputs
    secure = frozenset(int(r) for r in secure)
    if not secure or not secure <= set(range(1, s + 1)):
        raise BadRestriction(f"secure set {sorted(secure)} not within 1..{s}")
    if not 1 <= t <= len(secure):
        raise BadRestriction(f"t={t} out of range for |R|={len(secure)}")
    claim = AontClaim("restricted", t=t, secure=secure)
    outputs = set(range(s + 1, 2 * s + 1))
    secure_out = [r + s for r in sorted(secure)]
    subsets = [tuple(range(1, s + 1)), tuple(range(s + 1, 2 * s + 1))]
    for excluded in combinations(secure_out, t):
        out = tuple(sorted(outputs - set(excluded)))
        for inp in combinations(range(1, s + 1), t):
            subsets.append(inp + out)
    return _sweep(arr, claim, subsets, count_cap)


def verify_soa(a: GFArray, t1: int, t2: int, s1: int, s2: int,
               count_cap: int = DEFAULT_COUNT_CAP) -> VerificationReport:
    """Split check: unbiased on any t1 columns from the first s1 plus any t2
    from the last s2."""
    if s1 + s2 != a.n_cols:
        raise BadSize(f"column split {s1}+{s2} != {a.n_cols}")
    if not (0 <= t1 <= s1 and 0 <= t2 <= s2 and t1 + t2 >= 1):
        raise BadSize(f"bad split strengths ({t1}, {t2}) for ({s1}, {s2})")
    claim = AontClaim("soa", t1=t1, t2=t2, s1=s1, s2=s2)
    subsets = []
    for left in combinations(range(1, s1 + 1), t1):
        for right in combinations(range(s1 + 1, s1 + s2 + 1), t2):
            subsets.append(left + right)
    return _sweep(a, claim, subsets, count_cap)


def swap_halves(a: TransformArray) -> TransformArray:
    """Array representation of the inverse transform (swap column halves)."""
    if a.n_outputs != a.n_inputs:
        raise NotSquareTransform(
            f"cannot swap halves of s={a.n_inputs}, n={a.n_outputs} array")
    s = a.n_inputs
    data = np.hstack([a.data[:, s:], a.data[:, :s]])
    try:
        return TransformArray(a.field, s, s, data)
    except NotBijective:
        raise NotBijective("output columns do not form a bijection") from None
