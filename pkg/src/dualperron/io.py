"""Matrix documents (JSON) and Collatz trace CSV files."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DocumentError
from .linalg import DualMatrix

__all__ = [
    "MatrixDocument",
    "parse_document",
    "read_document",
    "write_document",
    "dumps_document",
    "write_trace_csv",
    "TRACE_COLUMNS",
    "atomic_write_text",
]

TRACE_COLUMNS = ("k", "lower_s", "lower_d", "upper_s", "upper_d", "gap_s", "gap_d")


@dataclass
class MatrixDocument:
    n: int
    standard: np.ndarray
    dual: np.ndarray
    metadata: dict = field(default_factory=dict)

    @classmethod
    def from_matrix(cls, A: DualMatrix, **metadata):
        return cls(A.n, np.array(A.s), np.array(A.d), dict(metadata))

    def to_matrix(self) -> DualMatrix:
        return DualMatrix(self.standard, self.dual)


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to a temporary sibling file, then rename it over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _rows(a: np.ndarray) -> str:
    # float repr is the shortest string that round-trips bit for bit
    return ",\n".join("    [" + ", ".join(repr(float(v)) for v in row) + "]" for row in a)


def dumps_document(doc: MatrixDocument) -> str:
    meta = json.dumps(doc.metadata, indent=2, sort_keys=True).replace("\n", "\n  ")
    return (
        "{\n"
        f'  "n": {int(doc.n)},\n'
        f'  "standard": [\n{_rows(doc.standard)}\n  ],\n'
        f'  "dual": [\n{_rows(doc.dual)}\n  ],\n'
        f'  "metadata": {meta}\n'
        "}\n"
    )


def write_document(path, doc: MatrixDocument) -> None:
    atomic_write_text(path, dumps_document(doc))


def _key_line(text: str, key: str):
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name} is not allowed")


def _matrix_field(obj, key, n, text):
    line = _key_line(text, key)
    if key not in obj:
        raise DocumentError(f"missing key {key!r}", line=1)
    rows = obj[key]
    if not isinstance(rows, list) or len(rows) != n:
        raise DocumentError(f"{key!r} must be a list of {n} rows", line=line)
    out = np.empty((n, n))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"{key!r} row {i} must have {n} entries", line=line)
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise DocumentError(f"{key!r}[{i}][{j}] is not a number", line=line)
            if not math.isfinite(v):
                raise DocumentError(f"{key!r}[{i}][{j}] is not finite", line=line)
            out[i, j] = v
    return out


def parse_document(text: str) -> MatrixDocument:
    """Parse and validate a matrix document.

    Raises
    ------
    DocumentError
        With the offending line number for syntax errors and, for schema
        errors, the line of the key at fault.
    """
    try:
        obj = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (column {exc.colno})", line=exc.lineno) from None
    except ValueError as exc:
        m = re.search(r"-?\b(NaN|Infinity)\b", text)
        line = text.count("\n", 0, m.start()) + 1 if m else None
        raise DocumentError(str(exc), line=line) from None
    if not isinstance(obj, dict):
        raise DocumentError("document must be a JSON object", line=1)
    n = obj.get("n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise DocumentError("'n' must be a positive integer", line=_key_line(text, "n") or 1)
    standard = _matrix_field(obj, "standard", n, text)
    dual = _matrix_field(obj, "dual", n, text)
    metadata = obj.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DocumentError("'metadata' must be an object", line=_key_line(text, "metadata"))
    return MatrixDocument(n, standard, dual, metadata)


def read_document(path) -> MatrixDocument:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def write_trace_csv(path, trace) -> None:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    gap = trace.gap
    for k in range(trace.iterations):
        lo, up, g = trace.lower[k], trace.upper[k], gap[k]
        w.writerow([k, repr(lo[0]), repr(lo[1]), repr(up[0]), repr(up[1]), repr(g[0]), repr(g[1])])
    atomic_write_text(path, buf.getvalue())
