"""Persistence round-trips: JSON lines, summary JSON, CSV, and SVG plots."""

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from gradperc.records import (jsonable, read_csv, read_jsonl, read_summary,
                              strip_meta, write_csv, write_jsonl,
                              write_summary)
from gradperc.svgplot import read_provenance, render_plot, write_plot


@dataclass(frozen=True)
class _Point:
    n: int
    value: float
    tags: tuple


def test_jsonable_conversions():
    out = jsonable({
        "point": _Point(4, 0.5, ("a", 1)),
        "frac": Fraction(4, 3),
        "arr": np.arange(3),
        "flag": np.bool_(True),
        "x": np.float64(1.5),
        7: "int key",
    })
    assert out["point"] == {"n": 4, "value": 0.5, "tags": ["a", 1]}
    assert out["frac"] == {"numerator": 4, "denominator": 3}
    assert out["arr"] == [0, 1, 2]
    assert out["flag"] is True
    assert out["x"] == 1.5
    assert out["7"] == "int key"


def test_jsonable_rejects_unknown_types():
    with pytest.raises(TypeError):
        jsonable({"bad": {1, 2}})


def test_jsonl_roundtrip(tmp_path):
    path = tmp_path / "points.jsonl"
    records = [{"n": 8, "p": 0.25}, {"n": 16, "p": Fraction(1, 2)}]
    write_jsonl(path, records)
    back = read_jsonl(path)
    assert back[0] == {"n": 8, "p": 0.25}
    assert back[1]["p"] == {"numerator": 1, "denominator": 2}


def test_summary_roundtrip_and_meta(tmp_path):
    path = tmp_path / "run.json"
    write_summary(path, {"spec": {"kind": "demo"}, "results": [1, 2],
                         "meta": {"wall_clock_s": 3.5}})
    back = read_summary(path)
    assert back["meta"]["wall_clock_s"] == 3.5
    assert strip_meta(back) == {"spec": {"kind": "demo"}, "results": [1, 2]}


def test_csv_roundtrip(tmp_path):
    path = tmp_path / "table.csv"
    write_csv(path, ["n", "p"], [[8, 0.25], [16, 0.125]])
    header, rows = read_csv(path)
    assert header == ["n", "p"]
    assert rows == [[8.0, 0.25], [16.0, 0.125]]


def _series(**extra):
    return [{"x": [1.0, 2.0, 4.0], "y": [1.0, 0.5, 0.25],
             "label": "demo", **extra}]


def test_render_plot_basics():
    svg = render_plot(_series(yerr=[0.1, 0.05, 0.02]), title="t",
                      xlabel="n", ylabel="p", logx=True, logy=True)
    assert svg.startswith("<svg")
    assert "<polyline" in svg and "<circle" in svg
    assert "demo" in svg and "</svg>" in svg


def test_render_plot_marker_and_line_switches():
    assert "<circle" not in render_plot(_series(markers=False))
    assert "<polyline" not in render_plot(_series(line=False))


def test_render_plot_validation():
    with pytest.raises(ValueError):
        render_plot([{"x": [], "y": []}])
    with pytest.raises(ValueError):
        render_plot([{"x": [0.0, 1.0], "y": [1.0, 2.0]}], logx=True)
    with pytest.raises(ValueError):
        render_plot([{"x": [1.0, 2.0], "y": [-1.0, 2.0]}], logy=True)


def test_provenance_roundtrip():
    prov = {"kind": "arms", "grid": [8, 16], "note": "a--b"}  # comment-hostile
    svg = render_plot(_series(), provenance=prov)
    assert read_provenance(svg) == prov
    assert read_provenance(render_plot(_series())) is None


def test_write_plot_file_roundtrip(tmp_path):
    path = tmp_path / "plot.svg"
    write_plot(path, _series(), provenance={"seed": 7})
    assert read_provenance(path) == {"seed": 7}
    assert read_provenance(str(path)) == {"seed": 7}
    assert Path(path).read_text().startswith("<svg")
