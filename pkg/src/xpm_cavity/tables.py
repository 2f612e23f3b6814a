"""CSV / JSON serialisation of sweep tables.

Floats are written with 17 significant digits so every double survives a
round trip. NaN is written as ``nan`` in CSV and ``null`` in JSON.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .optimizer import SweepTable

FORMATS = ("csv", "json")


def format_number(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _parse_number(text: str):
    try:
        value = int(text)
    except ValueError:
        return float(text)
    # "-0" is how a negative-zero float is written; keep the sign
    return -0.0 if value == 0 and text.startswith("-") else value


def _rows(table_or_rows):
    if isinstance(table_or_rows, SweepTable):
        return list(table_or_rows.rows())
    return list(table_or_rows)


def to_csv(table_or_rows) -> str:
    rows = _rows(table_or_rows)
    buf = io.StringIO()
    if not rows:
        return ""
    header = list(rows[0])
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(row[k]) for k in header])
    return buf.getvalue()


def parse_csv(text: str) -> list:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        return []
    return [dict(zip(header, map(_parse_number, fields))) for fields in reader]


def _json_value(value):
    if isinstance(value, (bool, np.bool_, int, np.integer)):
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        return None
    return float(format(value, ".17g"))


def to_json(table_or_rows) -> str:
    records = [{k: _json_value(v) for k, v in row.items()} for row in _rows(table_or_rows)]
    return json.dumps(records, indent=1, allow_nan=False) + "\n"


def parse_json(text: str) -> list:
    return [{k: (float("nan") if v is None else v) for k, v in rec.items()}
            for rec in json.loads(text)]


def render(table_or_rows, fmt: str) -> str:
    if fmt == "csv":
        return to_csv(table_or_rows)
    if fmt == "json":
        return to_json(table_or_rows)
    raise ValueError(f"output format must be one of {FORMATS}, got {fmt!r}")


def write_table(table_or_rows, path, fmt: str | None = None) -> Path:
    """Write atomically: the file appears complete or not at all."""
    path = Path(path)
    fmt = fmt or path.suffix.lstrip(".") or "csv"
    text = render(table_or_rows, fmt)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def read_table(path) -> list:
    path = Path(path)
    text = path.read_text()
    return parse_json(text) if path.suffix == ".json" else parse_csv(text)
