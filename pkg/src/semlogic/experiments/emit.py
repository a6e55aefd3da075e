from __future__ import annotations

import csv
import dataclasses
import enum
import io
import json
import math
import sys
from pathlib import Path
from typing import Any, Sequence

from .harness import RESULT_FIELDS


def _fmt(value: Any) -> Any:
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        return float(f"{value:.9g}") if math.isfinite(value) else None
    return value


def _records(rows: Sequence[Any]) -> list[dict[str, Any]]:
    return [dataclasses.asdict(r) if dataclasses.is_dataclass(r) else dict(r) for r in rows]


def to_csv(rows: Sequence[Any], fieldnames: Sequence[str] = RESULT_FIELDS) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fieldnames)
    for rec in _records(rows):
        cells = []
        for name in fieldnames:
            value = _fmt(rec[name])
            if isinstance(value, float):
                value = f"{value:.9g}"
            elif value is None:
                value = "nan"
            elif isinstance(value, bool):
                value = "true" if value else "false"
            cells.append(value)
        writer.writerow(cells)
    return buf.getvalue()


def to_json(rows: Sequence[Any], fieldnames: Sequence[str] = RESULT_FIELDS) -> str:
    payload = [{name: _fmt(rec[name]) for name in fieldnames} for rec in _records(rows)]
    return json.dumps(payload, indent=2) + "\n"


def emit(rows: Sequence[Any], format: str = "csv", path: str | Path | None = None,
         fieldnames: Sequence[str] = RESULT_FIELDS) -> str:
    """Render ``rows`` and write them to ``path`` (stdout when ``None``)."""
    if format == "csv":
        text = to_csv(rows, fieldnames)
    elif format == "json":
        text = to_json(rows, fieldnames)
    else:
        raise ValueError(f"unknown format {format!r}")
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")
    return text
