"""Shared tabular output: RFC-4180 CSV with 17-significant-digit floats."""

from __future__ import annotations

import csv
import io
from pathlib import Path

CSV_FLOAT_FORMAT = ".17g"


def fmt(value) -> str:
    """Decimal rendering used in every CSV cell: floats at 17 significant
    digits with '.' decimal separator, everything else via str."""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return format(value, CSV_FLOAT_FORMAT)
    return str(value)


def rows_to_csv_bytes(header: list[str], rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(cell) for cell in row])
    return buf.getvalue().encode("utf-8")


def write_csv(path, header: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(rows_to_csv_bytes(header, rows))
    return path
