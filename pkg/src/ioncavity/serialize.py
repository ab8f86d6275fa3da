"""CSV and JSON serialization of sweep records."""

import csv
import io
import json
from typing import List, Sequence

from .sweep import RECORD_FIELDS, SweepRecord, SweepResult

__all__ = ["format_float", "records_to_csv", "records_from_csv",
           "result_to_json", "write_result", "SchemaError"]


class SchemaError(ValueError):
    """Input file does not follow the sweep record schema."""


def format_float(x: float) -> str:
    """12 significant digits; the on-disk precision contract."""
    return format(float(x), ".12g")


def records_to_csv(records: Sequence[SweepRecord]) -> str:
    lines = [",".join(RECORD_FIELDS)]
    for rec in records:
        lines.append(",".join(format_float(v) for v in rec.values()))
    return "\n".join(lines) + "\n"


def records_from_csv(text: str) -> List[SweepRecord]:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty CSV")
    if tuple(header) != RECORD_FIELDS:
        raise SchemaError(f"unexpected CSV header {header}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(RECORD_FIELDS):
            raise SchemaError(f"line {lineno}: expected {len(RECORD_FIELDS)} fields, got {len(row)}")
        try:
            records.append(SweepRecord(*(float(v) for v in row)))
        except ValueError as err:
            raise SchemaError(f"line {lineno}: {err}")
    return records


def result_to_json(result: SweepResult) -> str:
    config = dict(result.config.as_dict())
    config["effective-d"] = result.effective_d
    config["notes"] = result.notes
    body = {
        "config": config,
        "records": [
            {k: float(format_float(v)) for k, v in zip(RECORD_FIELDS, rec.values())}
            for rec in result.records
        ],
    }
    return json.dumps(body, indent=1) + "\n"


def write_result(result: SweepResult, path: str, fmt: str = "csv") -> None:
    if fmt == "csv":
        text = records_to_csv(result.records)
    elif fmt == "json":
        text = result_to_json(result)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", newline="") as fh:
        fh.write(text)
