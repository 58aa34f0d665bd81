"""Plain-text formats for matrices, raw arrays, and difference matrices.

All files are ASCII decimal, single-space separated, newline terminated.

    matrix:  GF p n [c0 ... cn]     field header (coefficients little-endian,
             MAT rows cols           omitted for prime fields)
             <rows lines of encodings>

    array:   GF p n [c0 ... cn]
             ARRAY v s n
             <v^s lines of s+n encodings>

    dm:      DM g k lambda
             <k lines of g*lambda residues>

Writers emit the canonical form; write(read(text)) is byte-identical for
canonical files.
"""

from __future__ import annotations

from pathlib import Path

from .arrays import GFArray
from .constructions import DifferenceMatrix
from .errors import AontError, FormatError
from .field import FieldSpec, make_field
from .linalg import MatrixGF


def _field_header(f: FieldSpec) -> str:
    if f.n == 1:
        return f"GF {f.p} 1"
    return f"GF {f.p} {f.n} " + " ".join(str(c) for c in f.modulus)


def _parse_field_header(tokens: list[str]) -> FieldSpec:
    if len(tokens) < 3 or tokens[0] != "GF":
        raise FormatError(f"bad field header: {' '.join(tokens)!r}")
    try:
        p, n = int(tokens[1]), int(tokens[2])
        coeffs = [int(c) for c in tokens[3:]]
    except ValueError:
        raise FormatError(f"bad field header: {' '.join(tokens)!r}") from None
    if n == 1 and coeffs:
        raise FormatError("prime field header must not carry a modulus")
    if n > 1 and len(coeffs) != n + 1:
        raise FormatError(f"modulus needs {n + 1} coefficients, got {len(coeffs)}")
    try:
        return make_field(p, n) if n == 1 else make_field(p, n, coeffs)
    except FormatError:
        raise
    except AontError as exc:
        raise FormatError(f"bad field header: {exc}") from exc


def _token_lines(text: str) -> list[list[str]]:
    return [line.split() for line in text.splitlines() if line.strip()]


def _int_rows(lines: list[list[str]], expect_rows: int, expect_cols: int, what: str):
    if len(lines) != expect_rows:
        raise FormatError(f"{what}: expected {expect_rows} data rows, got {len(lines)}")
    rows = []
    for line in lines:
        if len(line) != expect_cols:
            raise FormatError(f"{what}: expected {expect_cols} values per row, got {len(line)}")
        try:
            rows.append([int(x) for x in line])
        except ValueError:
            raise FormatError(f"{what}: non-integer value in row") from None
    return rows


def write_matrix(m: MatrixGF) -> str:
    lines = [_field_header(m.field), f"MAT {m.rows} {m.cols}"]
    lines.extend(" ".join(str(x) for x in row) for row in m.row_lists())
    return "\n".join(lines) + "\n"


def read_matrix(text: str) -> MatrixGF:
    lines = _token_lines(text)
    if len(lines) < 2 or lines[1][0] != "MAT":
        raise FormatError("matrix file needs a GF header then a MAT line")
    f = _parse_field_header(lines[0])
    if len(lines[1]) != 3:
        raise FormatError(f"bad MAT line: {' '.join(lines[1])!r}")
    try:
        rows, cols = int(lines[1][1]), int(lines[1][2])
    except ValueError:
        raise FormatError(f"bad MAT line: {' '.join(lines[1])!r}") from None
    data = _int_rows(lines[2:], rows, cols, "matrix")
    try:
        return MatrixGF(f, data)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_array(a: GFArray) -> str:
    lines = [_field_header(a.field), f"ARRAY {a.v} {a.n_inputs} {a.n_outputs}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in a.data)
    return "\n".join(lines) + "\n"


def read_array(text: str) -> GFArray:
    """Parse a raw array file; the bijection invariant is not assumed here."""
    lines = _token_lines(text)
    if len(lines) < 2 or lines[1][0] != "ARRAY":
        raise FormatError("array file needs a GF header then an ARRAY line")
    f = _parse_field_header(lines[0])
    if len(lines[1]) != 4:
        raise FormatError(f"bad ARRAY line: {' '.join(lines[1])!r}")
    try:
        v, s, n = (int(x) for x in lines[1][1:])
    except ValueError:
        raise FormatError(f"bad ARRAY line: {' '.join(lines[1])!r}") from None
    if v != f.q:
        raise FormatError(f"alphabet size {v} does not match field order {f.q}")
    data = _int_rows(lines[2:], v ** s, s + n, "array")
    try:
        return GFArray(f, s, n, data)
    except (ValueError, AontError) as exc:
        raise FormatError(str(exc)) from None


def write_dm(d: DifferenceMatrix) -> str:
    lines = [f"DM {d.g} {d.k} {d.lam}"]
    lines.extend(" ".join(str(int(x)) for x in row) for row in d.entries)
    return "\n".join(lines) + "\n"


def read_dm(text: str) -> DifferenceMatrix:
    lines = _token_lines(text)
    if not lines or lines[0][0] != "DM" or len(lines[0]) != 4:
        raise FormatError("difference matrix file needs a DM header line")
    try:
        g, k, lam = (int(x) for x in lines[0][1:])
    except ValueError:
        raise FormatError(f"bad DM line: {' '.join(lines[0])!r}") from None
    data = _int_rows(lines[1:], k, g * lam, "difference matrix")
    try:
        return DifferenceMatrix(g, k, lam, data)
    except AontError as exc:
        raise FormatError(str(exc)) from None


def sniff_kind(text: str) -> str:
    """First token decides: GF files are matrices or arrays, DM files stand
    alone."""
    lines = _token_lines(text)
    if not lines:
        raise FormatError("empty file")
    if lines[0][0] == "DM":
        return "dm"
    if lines[0][0] == "GF" and len(lines) >= 2:
        if lines[1][0] == "MAT":
            return "matrix"
        if lines[1][0] == "ARRAY":
            return "array"
    raise FormatError("unrecognized file format")


def load(path) -> MatrixGF | GFArray | DifferenceMatrix:
    text = Path(path).read_text()
    kind = sniff_kind(text)
    if kind == "matrix":
        return read_matrix(text)
    if kind == "array":
        return read_array(text)
    return read_dm(text)


def save(path, obj) -> None:
    if isinstance(obj, MatrixGF):
        text = write_matrix(obj)
    elif isinstance(obj, GFArray):
        text = write_array(obj)
    elif isinstance(obj, DifferenceMatrix):
        text = write_dm(obj)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    Path(path).write_text(text)
