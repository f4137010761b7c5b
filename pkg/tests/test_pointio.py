import json

import pytest

from gperiods.periods import PlotPoint
from gperiods.pointio import (
    csv_header,
    meta_json,
    points_csv,
    read_meta,
    write_meta,
    write_points_csv,
)


def test_csv_header_arities():
    assert csv_header(1) == "index,re,im,color"
    assert csv_header(2) == "i0,i1,re,im,color"
    assert csv_header(3) == "i0,i1,i2,re,im,color"


def test_points_csv_scalar_index():
    pts = [PlotPoint(index=0, value=1.5 - 2j, color=3), PlotPoint(index=1, value=0j, color=0)]
    text = points_csv(pts, 1)
    lines = text.splitlines()
    assert lines[0] == "index,re,im,color"
    assert lines[1] == "0,1.5,-2,3"
    assert text.endswith("\n")


def test_points_csv_tuple_index():
    pts = [PlotPoint(index=(2, 5), value=1 / 3 + 1j / 7, color=1)]
    lines = points_csv(pts, 2).splitlines()
    i0, i1, re, im, color = lines[1].split(",")
    assert (i0, i1, color) == ("2", "5", "1")
    # %.17g survives a float round-trip
    assert float(re) == 1 / 3
    assert float(im) == 1 / 7


def test_write_points_csv(tmp_path):
    pts = [PlotPoint(index=0, value=1j, color=0)]
    path = tmp_path / "points.csv"
    write_points_csv(pts, path, 1)
    assert path.read_bytes() == points_csv(pts, 1).encode()


def test_meta_json_stable(tmp_path):
    meta = {"b": 2, "a": [1, 2], "nested": {"y": 1, "x": 0}}
    text = meta_json(meta)
    assert text.index('"a"') < text.index('"b"')
    assert text.endswith("\n")
    path = tmp_path / "meta.json"
    write_meta(path, meta)
    assert read_meta(path) == meta
    assert json.loads(text) == meta
