"""Matrix Market reader/writer for dense real and complex matrices.

Reads the ``array`` and ``coordinate`` variants with ``real`` or
``complex`` fields and ``general``, ``symmetric``, ``skew-symmetric`` or
``hermitian`` symmetry.  ``pattern`` and ``integer`` fields are rejected.
Writing always produces the ``array`` variant, column-major, with
shortest round-trip float rendering.
"""

import numpy as np

from .errors import InvalidInput, ParseError, UnsupportedFormat
from .linalg import as_matrix

_FORMATS = ("array", "coordinate")
_FIELDS = ("real", "complex", "integer", "pattern", "double")
_SYMMETRIES = ("general", "symmetric", "skew-symmetric", "hermitian")


def _data_lines(lines, start):
    for lineno, line in enumerate(lines[start:], start=start + 1):
        s = line.strip()
        if s and not s.startswith("%"):
            yield lineno, s


def _parse_float(tok, lineno):
    try:
        return float(tok)
    except ValueError:
        raise ParseError(f"bad number {tok!r}", lineno) from None


def _parse_int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad integer {tok!r}", lineno) from None


def _parse_header(line):
    parts = line.split()
    if len(parts) != 5 or parts[0].lower() != "%%matrixmarket":
        raise ParseError("expected '%%MatrixMarket matrix <format> <field> <symmetry>'", 1)
    obj, fmt, field, sym = (t.lower() for t in parts[1:])
    if obj != "matrix":
        raise UnsupportedFormat(f"object {obj!r} is not supported")
    if fmt not in _FORMATS:
        raise ParseError(f"unknown format {fmt!r}", 1)
    if field not in _FIELDS:
        raise ParseError(f"unknown field {field!r}", 1)
    if field in ("integer", "pattern"):
        raise UnsupportedFormat(f"field {field!r} is not supported")
    if sym not in _SYMMETRIES:
        raise ParseError(f"unknown symmetry {sym!r}", 1)
    return fmt, "real" if field == "double" else field, sym


def _fill_symmetric(mat, sym):
    if sym == "general":
        return mat
    lower = np.tril(mat, -1)
    if sym == "symmetric":
        mat = mat + lower.T
    elif sym == "skew-symmetric":
        mat = mat - lower.T
    else:
        mat = mat + lower.conj().T
    return mat


def parse_matrix_market(text):
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    fmt, field, sym = _parse_header(lines[0])
    width = 2 if field == "complex" else 1
    body = _data_lines(lines, 1)
    try:
        lineno, size_line = next(body)
    except StopIteration:
        raise ParseError("missing size line", len(lines)) from None
    dims = [_parse_int(t, lineno) for t in size_line.split()]
    expected = 2 if fmt == "array" else 3
    if len(dims) != expected:
        raise ParseError(f"size line needs {expected} integers", lineno)
    rows, cols = dims[:2]
    if rows <= 0 or cols <= 0:
        raise ParseError("matrix dimensions must be positive", lineno)
    if sym != "general" and rows != cols:
        raise ParseError(f"{sym} matrix must be square", lineno)

    dtype = np.complex128 if field == "complex" else np.float64
    mat = np.zeros((rows, cols), dtype=dtype)

    def value(toks, lineno):
        nums = [_parse_float(t, lineno) for t in toks]
        v = complex(nums[0], nums[1]) if width == 2 else nums[0]
        if not np.isfinite(v):
            raise InvalidInput(f"line {lineno}: non-finite entry")
        return v

    if fmt == "array":
        if sym == "general":
            positions = [(i, j) for j in range(cols) for i in range(rows)]
        else:
            first = 1 if sym == "skew-symmetric" else 0
            positions = [(i, j) for j in range(cols) for i in range(j + first, rows)]
        count = 0
        for lineno, s in body:
            toks = s.split()
            if len(toks) != width:
                raise ParseError(f"expected {width} value(s) per line", lineno)
            if count >= len(positions):
                raise ParseError("too many entries", lineno)
            mat[positions[count]] = value(toks, lineno)
            count += 1
        if count != len(positions):
            raise ParseError(f"expected {len(positions)} entries, found {count}", len(lines))
    else:
        nnz = dims[2]
        count = 0
        for lineno, s in body:
            toks = s.split()
            if len(toks) != 2 + width:
                raise ParseError(f"expected {2 + width} fields per entry", lineno)
            i, j = _parse_int(toks[0], lineno), _parse_int(toks[1], lineno)
            if not (1 <= i <= rows and 1 <= j <= cols):
                raise ParseError(f"index ({i}, {j}) out of range", lineno)
            mat[i - 1, j - 1] += value(toks[2:], lineno)
            count += 1
        if count != nnz:
            raise ParseError(f"header declares {nnz} entries, found {count}", len(lines))
    return _fill_symmetric(mat, sym)


def read_matrix_market(path):
    with open(path, "r", encoding="ascii") as fh:
        return parse_matrix_market(fh.read())


def _fmt(x):
    return repr(float(x))


def format_matrix_market(m):
    m = as_matrix(m)
    is_complex = np.iscomplexobj(m)
    field = "complex" if is_complex else "real"
    out = [f"%%MatrixMarket matrix array {field} general", f"{m.shape[0]} {m.shape[1]}"]
    for v in m.ravel(order="F"):
        out.append(f"{_fmt(v.real)} {_fmt(v.imag)}" if is_complex else _fmt(v))
    return "\n".join(out) + "\n"


def write_matrix_market(m, path):
    text = format_matrix_market(m)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(text)
