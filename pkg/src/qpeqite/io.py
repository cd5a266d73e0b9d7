"""CSV/JSON writers with fixed float formatting so reruns are byte-identical."""
from __future__ import annotations

import csv
import io
import json
from typing import Iterable, Sequence, TextIO

import numpy as np

__all__ = ["fmt", "write_table", "table_to_string"]

SIGNIFICANT_DIGITS = 12


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if v == 0.0:
            return "0"
        return f"{v:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # round-trip through the fixed text form
        return float(fmt(value))
    return value


def write_table(
    rows: Iterable[Sequence],
    columns: Sequence[str],
    out: TextIO,
    fmt_name: str = "csv",
    header_comments: Sequence[str] = (),
) -> None:
    """Write rows as CSV (optionally with leading ``#`` comment lines) or as a JSON array of records."""
    rows = list(rows)
    if fmt_name == "csv":
        for line in header_comments:
            out.write(f"# {line}\n")
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    elif fmt_name == "json":
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        json.dump(records, out, indent=1)
        out.write("\n")
    else:
        raise ValueError(f"unknown output format {fmt_name!r}")


def table_to_string(rows, columns, fmt_name: str = "csv", header_comments=()) -> str:
    buf = io.StringIO()
    write_table(rows, columns, buf, fmt_name, header_comments)
    return buf.getvalue()
