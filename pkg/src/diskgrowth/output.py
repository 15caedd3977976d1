"""Deterministic CSV/JSON serialisation: 17 significant digits, '.' decimals, '\\n' rows."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row[h]) for h in header])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "value") and isinstance(getattr(value, "value"), str):
        return value.value  # str enums
    return value


def json_text(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True, allow_nan=True) + "\n"


def parse_csv(text: str) -> list[dict]:
    """Rows of a CSV produced by :func:`csv_text`; numeric cells come back as float."""
    rows = []
    for raw in csv.DictReader(io.StringIO(text)):
        row = {}
        for key, cell in raw.items():
            try:
                row[key] = float(cell) if cell not in ("", "true", "false") else cell
            except ValueError:
                row[key] = cell
        rows.append(row)
    return rows


def reciprocal_label(value) -> str:
    """Ratio written as 1/x with two decimals, the layout of published tables."""
    if value is None or value <= 0:
        return ""
    return f"1/{1.0 / value:.2f}"
