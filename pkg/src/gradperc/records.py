"""Plaintext persistence of experiment results.

Three formats, all diffable and round-trippable by this module's own
readers:

* JSON lines (``.jsonl``): one JSON object per grid point.
* summary JSON: a single object holding the spec snapshot, all records,
  and a ``meta`` section (wall clock, version, worker count).  ``meta`` is
  the only part allowed to differ between reruns of the same spec.
* CSV: a header row followed by numeric rows.

Record values are plain JSON types; dataclasses, fractions and numpy
scalars/arrays are converted by :func:`jsonable`.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

__all__ = ["jsonable", "write_jsonl", "read_jsonl", "write_summary",
           "read_summary", "write_csv", "read_csv", "strip_meta"]


def jsonable(obj: Any) -> Any:
    """Recursively convert a result object into plain JSON-compatible types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, Fraction):
        return {"numerator": obj.numerator, "denominator": obj.denominator}
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.bool_, np.integer, np.floating)):
        return obj.item()
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def write_jsonl(path: str | Path, records: Iterable[dict]) -> None:
    with open(path, "w") as f:
        for rec in records:
            f.write(json.dumps(jsonable(rec), sort_keys=True) + "\n")


def read_jsonl(path: str | Path) -> list[dict]:
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def write_summary(path: str | Path, summary: dict) -> None:
    with open(path, "w") as f:
        json.dump(jsonable(summary), f, indent=2, sort_keys=True)
        f.write("\n")


def read_summary(path: str | Path) -> dict:
    with open(path) as f:
        return json.load(f)


def strip_meta(summary: dict) -> dict:
    """Summary with the meta section removed — the reproducible part."""
    return {k: v for k, v in summary.items() if k != "meta"}


def write_csv(path: str | Path, header: Sequence[str],
              rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(header)
        for row in rows:
            w.writerow(row)


def read_csv(path: str | Path) -> tuple[list[str], list[list[float]]]:
    with open(path, newline="") as f:
        r = csv.reader(f)
        header = next(r)
        rows = [[float(x) for x in row] for row in r if row]
    return header, rows
