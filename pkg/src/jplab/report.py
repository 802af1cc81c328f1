"""Deterministic JSON and RFC-4180 CSV output.

Floats are written with 17 significant digits so the text round-trips and
two runs with the same inputs produce identical bytes.  NaN and infinities
become ``null`` (JSON) or an empty cell (CSV).  ``mpmath.mpf`` values, which
may lie outside the double range, are written as decimal strings.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math

import mpmath
import numpy as np

DIGITS = 17


def fmt_float(x: float) -> str | None:
    x = float(x)
    if not math.isfinite(x):
        return None
    return format(x, f".{DIGITS}g")


def _mpf_text(x) -> str | None:
    if not mpmath.isfinite(x):
        return None
    return mpmath.nstr(x, DIGITS, min_fixed=-1, max_fixed=-1) if x != 0 else "0.0"


def plain(obj):
    """Convert dataclasses, numpy scalars/arrays and tuples into JSON-ready builtins."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [plain(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _encode(obj, out: list[str]):
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        text = fmt_float(obj)
        out.append("null" if text is None else text)
    elif isinstance(obj, mpmath.mpf):
        text = _mpf_text(obj)
        out.append("null" if text is None else json.dumps(text))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k), ensure_ascii=False))
            out.append(": ")
            _encode(v, out)
        out.append("}")
    elif isinstance(obj, list):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(", ")
            _encode(v, out)
        out.append("]")
    else:
        out.append(json.dumps(str(obj), ensure_ascii=False))


def to_json(payload) -> str:
    out: list[str] = []
    _encode(plain(payload), out)
    return "".join(out) + "\n"


def _cell(v) -> str:
    v = plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v) or ""
    if isinstance(v, mpmath.mpf):
        return _mpf_text(v) or ""
    if isinstance(v, list):
        return ";".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return to_json(v).strip()
    return str(v)


class CsvSink:
    """Row-at-a-time CSV writer that flushes after every row."""

    def __init__(self, stream, columns):
        self.columns = list(columns)
        self.stream = stream
        self.writer = csv.writer(stream, lineterminator="\r\n")
        self.writer.writerow(self.columns)
        stream.flush()

    def write(self, row: dict):
        self.writer.writerow([_cell(row.get(c)) for c in self.columns])
        self.stream.flush()


def to_csv(rows, columns=None) -> str:
    rows = [plain(r) for r in rows]
    if columns is None:
        columns = []
        for r in rows:
            for k in r:
                if k not in columns:
                    columns.append(k)
    buf = io.StringIO()
    sink = CsvSink(buf, columns)
    for r in rows:
        sink.write(r)
    return buf.getvalue()
