"""Byte-stable CSV and JSON serialization for plot points and run metadata.

Floats are printed with 17 significant digits (round-trip exact for float64),
rows in point order, LF line endings: identical inputs yield identical bytes.
"""

from __future__ import annotations

import json
from typing import Iterable

from .periods import PlotPoint


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def csv_header(index_arity: int) -> str:
    if index_arity < 1:
        raise ValueError("index_arity must be >= 1")
    if index_arity == 1:
        return "index,re,im,color"
    return ",".join(f"i{i}" for i in range(index_arity)) + ",re,im,color"


def points_csv(points: Iterable[PlotPoint], index_arity: int) -> str:
    lines = [csv_header(index_arity)]
    for p in points:
        idx = (p.index,) if isinstance(p.index, int) else tuple(p.index)
        if len(idx) != index_arity:
            raise ValueError(f"point index {p.index!r} does not have arity {index_arity}")
        head = ",".join(str(i) for i in idx)
        lines.append(f"{head},{_fmt(p.value.real)},{_fmt(p.value.imag)},{p.color}")
    return "\n".join(lines) + "\n"


def write_points_csv(points: Iterable[PlotPoint], path, index_arity: int) -> None:
    data = points_csv(points, index_arity)
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(data)


def meta_json(meta: dict) -> str:
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"


def write_meta(path, meta: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(meta_json(meta))


def read_meta(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
