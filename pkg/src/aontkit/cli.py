"""Command-line front end: construct, verify, search, bounds, convert.

Column labels in verification reports are 1-based (inputs 1..s, outputs
s+1..s+n); matrix row/column indices in criterion witnesses are 0-based.
Exit codes: 0 verdict true / answer produced, 1 verdict false, 2 usage or
format error, 3 search aborted by the candidate cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .arrays import (
    APPLY_FORWARD,
    APPLY_INVERSE,
    AontClaim,
    DEFAULT_CELL_CAP,
    GFArray,
    VerificationReport,
    from_linear,
    verify_oa,
    verify_range_aont,
    verify_rec_aont,
    verify_restricted_aont,
    verify_soa,
)
from .constructions import (
    DifferenceMatrix,
    cauchy,
    dm_to_matrix,
    oa_rs,
    rs_restricted_doubly,
    rs_restricted_triply,
    strong_to_dm,
    vandermonde,
    vandermonde_all_nonzero,
    verify_dm,
)
from .errors import AontError, BadSize, FormatError, MethodMismatch, NotBijective
from .field import factor_prime_power, make_field_of_order
from .formats import load, save
from .linalg import MatrixGF, all_submatrices_invertible, determinant, shrink
from .search import DEFAULT_CANDIDATE_CAP, analytic_bounds, exists_strong, max_strong

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2
EXIT_CAP = 3


def parse_claim(text: str) -> AontClaim:
    """Parse the flat claim grammar, e.g. 'strong t=2' or
    'restricted R={1,2} t=2'."""
    tokens = text.split()
    if not tokens:
        raise FormatError("empty claim")
    kind = tokens[0]
    kv: dict[str, str] = {}
    for tok in tokens[1:]:
        if "=" not in tok:
            raise FormatError(f"bad claim token {tok!r}")
        key, val = tok.split("=", 1)
        kv[key] = val

    def geti(key: str) -> int:
        if key not in kv:
            raise FormatError(f"claim {kind!r} needs {key}=")
        try:
            return int(kv[key])
        except ValueError:
            raise FormatError(f"bad integer for {key}: {kv[key]!r}") from None

    if kind == "aont":
        return AontClaim("aont", t=geti("t"))
    if kind == "strong":
        return AontClaim("strong", t=geti("t"))
    if kind == "range":
        return AontClaim("range", t1=geti("t1"), t2=geti("t2"))
    if kind == "rec":
        return AontClaim("rec", t=geti("t"), n=geti("n"))
    if kind == "restricted":
        if "R" not in kv:
            raise FormatError("restricted claim needs R={i,j,...}")
        raw = kv["R"].strip()
        if not (raw.startswith("{") and raw.endswith("}")):
            raise FormatError(f"bad R value {raw!r}")
        try:
            secure = frozenset(int(x) for x in raw[1:-1].split(",") if x.strip())
        except ValueError:
            raise FormatError(f"bad R value {raw!r}") from None
        if not secure:
            raise FormatError("R must be nonempty")
        return AontClaim("restricted", t=geti("t"), secure=secure)
    if kind == "oa":
        return AontClaim("oa", strength=geti("strength"))
    if kind == "soa":
        return AontClaim("soa", t1=geti("t1"), t2=geti("t2"),
                         s1=geti("s1"), s2=geti("s2"))
    if kind == "dm":
        return AontClaim("dm")
    raise FormatError(f"unknown claim kind {kind!r}")


# ---------------------------------------------------------------------------
# verification dispatch

def criterion_on_matrix(m: MatrixGF, claim: AontClaim) -> dict:
    """Matrix-side submatrix criterion for linear claims."""
    kind = claim.kind
    record: dict = {"method": "criterion", "claim": str(claim)}
    if kind == "rec":
        s, n = m.rows, m.cols
        if claim.n != n:
            raise BadSize(f"claim n={claim.n} but matrix has {n} columns")
        if not 1 <= claim.t <= s <= n:
            raise BadSize(f"need 1 <= t <= s <= n, got t={claim.t}, s={s}, n={n}")
        checks = [all_submatrices_invertible(m, s)]
        if s - claim.t >= 1:
            checks.append(all_submatrices_invertible(m, s - claim.t))
        bad = next((c for c in checks if not c.holds), None)
        record["verdict"] = bad is None
        if bad is not None:
            record["witness_rows"] = list(bad.witness.row_indices)
            record["witness_cols"] = list(bad.witness.col_indices)
        return record
    if kind not in ("aont", "strong", "range", "restricted"):
        raise MethodMismatch(f"no matrix criterion for claim kind {kind!r}")
    if m.rows != m.cols:
        raise BadSize(f"claim {kind!r} needs a square matrix, got {m.rows}x{m.cols}")
    s = m.rows
    row_range = None
    if kind == "aont":
        t_lo = t_hi = claim.t
    elif kind == "strong":
        t_lo, t_hi = 1, claim.t
    elif kind == "range":
        t_lo, t_hi = claim.t1, claim.t2
    else:
        secure = sorted(claim.secure)
        if secure != list(range(secure[0], secure[-1] + 1)):
            raise MethodMismatch(
                f"criterion needs a contiguous secure set, got {secure}; use bruteforce")
        row_range = (secure[0] - 1, secure[-1])
        t_lo = t_hi = claim.t
    if determinant(m) == 0:
        record["verdict"] = False
        record["notes"] = ["matrix is singular"]
        return record
    for t in range(t_lo, t_hi + 1):
        check = all_submatrices_invertible(m, t, row_range=row_range)
        if not check.holds:
            record["verdict"] = False
            record["witness_rows"] = list(check.witness.row_indices)
            record["witness_cols"] = list(check.witness.col_indices)
            return record
    record["verdict"] = True
    return record


def verify_on_array(a: GFArray, claim: AontClaim, count_cap: int) -> VerificationReport:
    kind = claim.kind
    try:
        if kind == "aont":
            return verify_range_aont(a, claim.t, claim.t, count_cap)
        if kind == "strong":
            return verify_range_aont(a, 1, claim.t, count_cap)
        if kind == "range":
            return verify_range_aont(a, claim.t1, claim.t2, count_cap)
        if kind == "rec":
            if claim.n != a.n_outputs:
                raise BadSize(f"claim n={claim.n} but array has {a.n_outputs} outputs")
            return verify_rec_aont(a, claim.t, count_cap)
        if kind == "restricted":
            return verify_restricted_aont(a, claim.secure, claim.t, count_cap)
        if kind == "oa":
            return verify_oa(a, claim.strength, count_cap)
        if kind == "soa":
            return verify_soa(a, claim.t1, claim.t2, claim.s1, claim.s2, count_cap)
    except NotBijective:
        s = a.n_inputs
        return VerificationReport(
            claim, False, failing_column_set=tuple(range(1, s + 1)),
            notes=("input columns do not enumerate every tuple exactly once",))
    raise MethodMismatch(f"cannot verify claim kind {kind!r} on an array")


def expand_matrix(m: MatrixGF, claim: AontClaim, cell_cap: int):
    if claim.kind == "rec":
        return from_linear(m, APPLY_FORWARD, cell_cap)
    if claim.kind in ("oa", "soa") and m.rows != m.cols:
        return from_linear(m, APPLY_FORWARD, cell_cap)
    return from_linear(m, APPLY_INVERSE, cell_cap)


def _report_record(report: VerificationReport, method: str,
                   claim: AontClaim | None = None) -> dict:
    rec = {
        "method": method,
        "claim": str(claim if claim is not None else report.claim),
        "verdict": report.verdict,
        "witness_columns": list(report.failing_column_set) if report.failing_column_set else None,
        "witness_tuple": list(report.failing_tuple) if report.failing_tuple else None,
        "counts": ({"observed": report.observed, "expected": report.expected}
                   if report.observed is not None else None),
    }
    if report.notes:
        rec["notes"] = list(report.notes)
    return rec


def _emit(records: list[dict], mode: str) -> None:
    if mode == "json":
        for rec in records:
            print(json.dumps(rec))
        return
    for rec in records:
        keys = [k for k in rec if k not in ("record",)]
        print(" | ".join(f"{k}={rec[k]}" for k in keys if rec[k] is not None))


def cmd_verify(args) -> int:
    obj = load(args.file)
    claim = parse_claim(args.claim)
    method = args.method
    records: list[dict] = []

    if isinstance(obj, DifferenceMatrix):
        if claim.kind != "dm":
            raise MethodMismatch("difference matrix files only take the 'dm' claim")
        if method in ("criterion", "both"):
            raise MethodMismatch("no criterion method for difference matrices")
        report = verify_dm(obj)
        records.append(_report_record(report, "bruteforce", claim))
        _emit([{"record": "verification", "file": args.file, **r} for r in records],
              args.output)
        return EXIT_TRUE if report.verdict else EXIT_FALSE

    if isinstance(obj, MatrixGF):
        if method == "auto":
            method = "both"
        verdicts = []
        if method in ("criterion", "both"):
            rec = criterion_on_matrix(obj, claim)
            records.append(rec)
            verdicts.append(rec["verdict"])
        if method in ("bruteforce", "both"):
            arr = expand_matrix(obj, claim, args.cell_cap)
            report = verify_on_array(arr, claim, args.count_cap)
            records.append(_report_record(report, "bruteforce", claim))
            verdicts.append(report.verdict)
        if method == "both" and verdicts[0] != verdicts[1]:
            raise AssertionError(
                f"criterion and bruteforce disagree on {claim}: {verdicts}")
    else:  # raw array
        if method in ("criterion", "both"):
            raise MethodMismatch("criterion method needs a matrix file")
        report = verify_on_array(obj, claim, args.count_cap)
        records.append(_report_record(report, "bruteforce", claim))
        verdicts = [report.verdict]

    _emit([{"record": "verification", "file": args.file, **r} for r in records],
          args.output)
    return EXIT_TRUE if all(verdicts) else EXIT_FALSE


# ---------------------------------------------------------------------------
# construct

def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise FormatError(f"bad integer list {text!r}") from None


def _field_for(args):
    modulus = _parse_int_list(args.modulus) if getattr(args, "modulus", None) else None
    return make_field_of_order(args.q, modulus)


_CONSTRUCT_NEEDS = {
    "cauchy": ("q", "r", "c"),
    "vandermonde": ("q",),
    "oa-rs": ("q", "strength", "k"),
    "strong-to-dm": ("infile",),
    "dm-to-matrix": ("infile", "q"),
    "rs-doubly": ("q", "t"),
    "rs-triply": ("q",),
    "shrink": ("infile", "row", "col"),
}


def _require_args(args, kind: str) -> None:
    missing = [name for name in _CONSTRUCT_NEEDS[kind]
               if getattr(args, name, None) is None]
    if missing:
        flags = ", ".join("--in" if m == "infile" else f"--{m}" for m in missing)
        raise FormatError(f"construct {kind} needs {flags}")
    if kind == "vandermonde" and not args.all_nonzero and args.points is None:
        raise FormatError("construct vandermonde needs --points or --all-nonzero")


def cmd_construct(args) -> int:
    kind = args.kind
    _require_args(args, kind)
    checks: list[str] = []
    extra: dict = {}
    if kind == "cauchy":
        f = _field_for(args)
        obj = cauchy(f, _parse_int_list(args.r), _parse_int_list(args.c))
        for t in range(1, min(obj.rows, obj.cols) + 1):
            if not all_submatrices_invertible(obj, t).holds:
                raise AssertionError("cauchy self-check failed")
        checks.append("all square submatrices invertible")
    elif kind == "vandermonde":
        f = _field_for(args)
        obj = (vandermonde_all_nonzero(f) if args.all_nonzero
               else vandermonde(f, _parse_int_list(args.points)))
        if determinant(obj) == 0:
            raise AssertionError("vandermonde self-check failed")
        checks.append("invertible, no zero entries")
    elif kind == "oa-rs":
        f = _field_for(args)
        obj = oa_rs(f, args.strength, args.k)
        report = verify_oa(obj, args.strength)
        if not report.verdict:
            raise AssertionError("oa-rs self-check failed")
        checks.append(f"verified strength {args.strength}")
    elif kind == "strong-to-dm":
        m = load(args.infile)
        if not isinstance(m, MatrixGF):
            raise FormatError("strong-to-dm needs a matrix file")
        obj = strong_to_dm(m)
        if not verify_dm(obj).verdict:
            raise AssertionError("strong-to-dm self-check failed")
        checks.append("difference property verified")
    elif kind == "dm-to-matrix":
        d = load(args.infile)
        if not isinstance(d, DifferenceMatrix):
            raise FormatError("dm-to-matrix needs a difference matrix file")
        f = _field_for(args)
        obj = dm_to_matrix(d, f)
        check2 = all_submatrices_invertible(obj, 2) if obj.rows >= 2 else None
        if (check2 is not None and not check2.holds) or not all_submatrices_invertible(obj, 1).holds:
            raise AssertionError("dm-to-matrix self-check failed")
        extra["invertible"] = bool(determinant(obj) != 0)
        checks.append("no zeros, all 2x2 submatrices invertible")
    elif kind == "rs-doubly":
        f = _field_for(args)
        obj = rs_restricted_doubly(f, args.t)
        ok = (determinant(obj) != 0
              and all_submatrices_invertible(obj, args.t, row_range=(0, args.t)).holds)
        if not ok:
            raise AssertionError("rs-doubly self-check failed")
        checks.append(f"invertible; t={args.t} criterion on first {args.t} rows")
    elif kind == "rs-triply":
        pn = factor_prime_power(args.q)
        if pn is None or pn[0] != 2 or pn[1] < 2:
            raise BadSize(f"rs-triply needs q = 2^n with n >= 2, got {args.q}")
        obj = rs_restricted_triply(pn[1])
        ok = (determinant(obj) != 0
              and all_submatrices_invertible(obj, 3, row_range=(0, 3)).holds)
        if not ok:
            raise AssertionError("rs-triply self-check failed")
        checks.append("invertible; t=3 criterion on first 3 rows")
    elif kind == "shrink":
        m = load(args.infile)
        if not isinstance(m, MatrixGF):
            raise FormatError("shrink needs a matrix file")
        obj = shrink(m, args.row - 1, args.col - 1)
        if args.strong_t:
            for t in range(1, args.strong_t + 1):
                if not all_submatrices_invertible(obj, t).holds or determinant(obj) == 0:
                    raise AssertionError(f"shrunken matrix fails the [1,{args.strong_t}] criterion")
            checks.append(f"re-verified [1,{args.strong_t}] criterion")
    else:  # pragma: no cover - argparse restricts choices
        raise FormatError(f"unknown construction {kind!r}")

    save(args.out, obj)
    _emit([{"record": "construct", "kind": kind, "out": args.out,
            "checks": checks or None, **extra}], args.output)
    return EXIT_TRUE


# ---------------------------------------------------------------------------
# search / bounds / convert

def _matrix_rows(m: MatrixGF | None):
    return m.row_lists() if m is not None else None


def cmd_search(args) -> int:
    if args.exists:
        if args.s is None:
            raise FormatError("--exists needs --s")
        res = exists_strong(args.q, args.s, args.t, args.candidate_cap, args.jobs)
        _emit([{
            "record": "search", "mode": "exists", "q": res.q, "s": res.s,
            "t": res.t, "outcome": res.outcome,
            "candidates_examined": res.candidates_examined,
            "elapsed_s": round(res.elapsed, 6),
            "witness": _matrix_rows(res.witness),
        }], args.output)
        return EXIT_CAP if res.outcome == "aborted_cap" else EXIT_TRUE

    witnesses = []
    for path in args.witness or []:
        m = load(path)
        if not isinstance(m, MatrixGF):
            raise FormatError(f"witness file {path} is not a matrix")
        witnesses.append(m)
    report = max_strong(args.q, args.t, args.candidate_cap, witnesses, args.jobs)
    best = report.witnesses.get(report.lower)
    _emit([{
        "record": "search", "mode": "max", "q": report.q, "t": report.t,
        "lower": report.lower, "upper": report.upper, "value": report.value,
        "stopped_by": report.stopped_by,
        "witness_sizes": sorted(report.witnesses),
        "searches": [{"s": r.s, "outcome": r.outcome,
                      "candidates_examined": r.candidates_examined}
                     for r in report.searches],
        "best_witness": _matrix_rows(best),
    }], args.output)
    return EXIT_TRUE


def cmd_bounds(args) -> int:
    report = analytic_bounds(args.q)
    _emit([{
        "record": "bounds", "q": report.q, "bush": report.bush,
        "upper": report.upper, "lower": report.lower,
        "lower_witness": _matrix_rows(report.lower_witness),
        "notes": list(report.notes),
    }], args.output)
    return EXIT_TRUE


def cmd_convert(args) -> int:
    m = load(args.infile)
    if not isinstance(m, MatrixGF):
        raise FormatError("convert reads a matrix file")
    direction = APPLY_INVERSE if args.direction == "inverse" else APPLY_FORWARD
    arr = from_linear(m, direction, args.cell_cap)
    save(args.out, arr)
    _emit([{"record": "convert", "in": args.infile, "out": args.out,
            "direction": args.direction,
            "rows": int(arr.data.shape[0]), "cols": arr.n_cols}], args.output)
    return EXIT_TRUE


# ---------------------------------------------------------------------------

def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise FormatError(f"bad {name} value {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aontkit",
        description="Construct, verify, and search all-or-nothing transforms "
                    "and related combinatorial designs over small finite fields.")
    parser.add_argument("--version", action="version", version=f"aontkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--output", choices=("human", "json"), default="human",
                        help="report style (json = one record per line)")

    sp = sub.add_parser("verify", help="verify a claim against a matrix/array/dm file")
    sp.add_argument("file")
    sp.add_argument("claim", help="e.g. 'strong t=2', 'restricted R={1,2} t=2', "
                                  "'oa strength=2', 'soa t1=2 t2=1 s1=3 s2=3'")
    sp.add_argument("--method", choices=("auto", "criterion", "bruteforce", "both"),
                    default="auto")
    sp.add_argument("--cell-cap", type=int,
                    default=_env_int("AONTKIT_CELL_CAP", DEFAULT_CELL_CAP))
    sp.add_argument("--count-cap", type=int,
                    default=_env_int("AONTKIT_COUNT_CAP", DEFAULT_CELL_CAP))
    add_common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build an object and write it as text")
    sp.add_argument("kind", choices=("cauchy", "vandermonde", "oa-rs", "strong-to-dm",
                                     "dm-to-matrix", "rs-doubly", "rs-triply", "shrink"))
    sp.add_argument("--q", type=int, help="field order")
    sp.add_argument("--modulus", help="field modulus coefficients, little-endian, e.g. 1,0,1")
    sp.add_argument("--r", help="cauchy row points, e.g. 0,1")
    sp.add_argument("--c", help="cauchy column points, e.g. 2,3")
    sp.add_argument("--points", help="vandermonde points")
    sp.add_argument("--all-nonzero", action="store_true",
                    help="vandermonde on every nonzero element")
    sp.add_argument("--strength", type=int, help="oa-rs strength")
    sp.add_argument("--k", type=int, help="oa-rs column count")
    sp.add_argument("--t", type=int, help="rs-doubly restriction size")
    sp.add_argument("--in", dest="infile", help="input file for conversions")
    sp.add_argument("--row", type=int, help="shrink: 1-based row to remove")
    sp.add_argument("--col", type=int, help="shrink: 1-based column to remove")
    sp.add_argument("--strong-t", type=int, default=0,
                    help="shrink: re-verify the [1,T] criterion on the result")
    sp.add_argument("--out", required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("search", help="exhaustive strong-transform search")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--t", type=int, default=2)
    mode = sp.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exists", action="store_true", help="search one size (needs --s)")
    mode.add_argument("--max", action="store_true", help="climb sizes for the maximum")
    sp.add_argument("--s", type=int)
    sp.add_argument("--witness", action="append",
                    help="matrix file accepted as an external lower-bound witness")
    sp.add_argument("--candidate-cap", type=int,
                    default=_env_int("AONTKIT_CANDIDATE_CAP", DEFAULT_CANDIDATE_CAP))
    sp.add_argument("--jobs", type=int, default=1,
                    help="partition the search tree across this many threads")
    add_common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("bounds", help="analytic bounds and witnesses for one order")
    sp.add_argument("--q", type=int, required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("convert", help="expand a matrix file into its array file")
    sp.add_argument("--in", dest="infile", required=True)
    sp.add_argument("--direction", choices=("inverse", "forward"), default="inverse")
    sp.add_argument("--cell-cap", type=int,
                    default=_env_int("AONTKIT_CELL_CAP", DEFAULT_CELL_CAP))
    sp.add_argument("--out", required=True)
    add_common(sp)
    sp.set_defaults(func=cmd_convert)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AontError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
