"""CSV and JSON emission with round-trip exact floats."""

from __future__ import annotations

import contextlib
import csv
import dataclasses
import enum
import json
import sys


def fmt(value) -> str:
    """17 significant digits for floats; everything else via str."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


@contextlib.contextmanager
def _open(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def emit_csv(rows, path, header) -> None:
    """Write a header row then one row per item (tuples or dataclasses)."""
    with _open(path) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            if dataclasses.is_dataclass(row):
                row = [getattr(row, f) for f in header]
            w.writerow([fmt(v) for v in row])


def _plain(obj):
    if dataclasses.is_dataclass(obj):
        return {k: _plain(v) for k, v in dataclasses.asdict(obj).items()}
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if hasattr(obj, "tolist"):
        return obj.tolist()
    return obj


def emit_json(result, path) -> None:
    """Serialize a result (dataclass or dict) as indented JSON."""
    data = result.to_dict() if hasattr(result, "to_dict") else _plain(result)
    with _open(path) as fh:
        json.dump(data, fh, indent=2, allow_nan=True)
        fh.write("\n")
