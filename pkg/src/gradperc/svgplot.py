"""Static SVG 1.1 scatter/line plots with embedded data provenance.

No plotting stack: experiments emit a handful of points on linear or log
axes, and the output must be plaintext, diffable, and self-describing.
Each file carries a ``<!--gradperc:provenance {json}-->`` comment right
after the opening tag; :func:`read_provenance` recovers the dict, which is
how emitted plots stay re-parseable by the tool itself.
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Any, Sequence

__all__ = ["render_plot", "write_plot", "read_provenance"]

_PALETTE = ("#2266aa", "#cc5522", "#338844", "#884499", "#aa2233")
_PROV_RE = re.compile(r"<!--gradperc:provenance (.*?)-->", re.S)


def _ticks(lo: float, hi: float, log: bool) -> list[float]:
    if log:
        lo_e = math.floor(math.log10(lo))
        hi_e = math.ceil(math.log10(hi))
        cands = [m * 10.0 ** e for e in range(lo_e, hi_e + 1) for m in (1, 2, 5)]
        ticks = [t for t in cands if lo <= t <= hi]
        while len(ticks) > 7:
            ticks = ticks[::2]
        return ticks or [lo, hi]
    if hi == lo:
        return [lo]
    step = 10.0 ** math.floor(math.log10((hi - lo) / 4))
    for mult in (1, 2, 2.5, 5, 10):
        if (hi - lo) / (step * mult) <= 5.5:
            step *= mult
            break
    t0 = math.ceil(lo / step) * step
    ticks = []
    while t0 <= hi + 1e-12 * abs(step):
        ticks.append(round(t0, 12))
        t0 += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:g}"


def render_plot(series: Sequence[dict], *, title: str = "", xlabel: str = "",
                ylabel: str = "", logx: bool = False, logy: bool = False,
                width: int = 640, height: int = 440,
                provenance: dict[str, Any] | None = None) -> str:
    """Render series to an SVG document string.

    Each series is a dict with keys ``x`` and ``y`` (positive if the axis is
    logarithmic) and optional ``label``, ``yerr``, ``line`` (bool, default
    True), ``markers`` (bool, default True).
    """
    xs = [v for s in series for v in s["x"]]
    ys = [v for s in series for v in s["y"]]
    if not xs:
        raise ValueError("nothing to plot")
    fx = math.log10 if logx else float
    fy = math.log10 if logy else float
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    for lo, v, log in ((x_lo, "x", logx), (y_lo, "y", logy)):
        if log and lo <= 0:
            raise ValueError(f"log {v}-axis needs positive data")
    ml, mr, mt, mb = 62, 16, 30, 46  # margins
    px, py = width - ml - mr, height - mt - mb

    def pad(lo, hi, f):
        a, b = f(lo), f(hi)
        d = (b - a) or 1.0
        return a - 0.06 * d, b + 0.06 * d

    ax_lo, ax_hi = pad(x_lo, x_hi, fx)
    ay_lo, ay_hi = pad(y_lo, y_hi, fy)

    def X(v):
        return ml + (fx(v) - ax_lo) / (ax_hi - ax_lo) * px

    def Y(v):
        return mt + (ay_hi - fy(v)) / (ay_hi - ay_lo) * py

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{width}" height="{height}" '
           f'font-family="sans-serif" font-size="12">']
    if provenance is not None:
        # "--" is illegal inside an XML comment; hide it behind a JSON escape
        blob = json.dumps(provenance, sort_keys=True).replace("--", "-\\u002d")
        out.append(f"<!--gradperc:provenance {blob}-->")
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    out.append(f'<rect x="{ml}" y="{mt}" width="{px}" height="{py}" '
               f'fill="none" stroke="#444"/>')
    if title:
        out.append(f'<text x="{width / 2:.0f}" y="18" text-anchor="middle" '
                   f'font-size="14">{title}</text>')
    for t in _ticks(x_lo, x_hi, logx):
        x = X(t)
        out.append(f'<line x1="{x:.1f}" y1="{mt + py}" x2="{x:.1f}" '
                   f'y2="{mt + py + 4}" stroke="#444"/>')
        out.append(f'<text x="{x:.1f}" y="{mt + py + 17}" '
                   f'text-anchor="middle">{_fmt(t)}</text>')
    for t in _ticks(y_lo, y_hi, logy):
        y = Y(t)
        out.append(f'<line x1="{ml - 4}" y1="{y:.1f}" x2="{ml}" y2="{y:.1f}" '
                   f'stroke="#444"/>')
        out.append(f'<text x="{ml - 7}" y="{y + 4:.1f}" '
                   f'text-anchor="end">{_fmt(t)}</text>')
    if xlabel:
        out.append(f'<text x="{ml + px / 2:.0f}" y="{height - 8}" '
                   f'text-anchor="middle">{xlabel}</text>')
    if ylabel:
        out.append(f'<text x="14" y="{mt + py / 2:.0f}" text-anchor="middle" '
                   f'transform="rotate(-90 14 {mt + py / 2:.0f})">{ylabel}</text>')

    for k, s in enumerate(series):
        col = _PALETTE[k % len(_PALETTE)]
        pts = [(X(x), Y(y)) for x, y in zip(s["x"], s["y"])]
        if s.get("line", True) and len(pts) > 1:
            d = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
            out.append(f'<polyline points="{d}" fill="none" stroke="{col}" '
                       f'stroke-width="1.5"/>')
        if s.get("markers", True):
            for x, y in pts:
                out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" '
                           f'fill="{col}"/>')
        if s.get("yerr"):
            for x, y, e in zip(s["x"], s["y"], s["yerr"]):
                if e <= 0:
                    continue
                hi, lo = y + e, max(y - e, y * 1e-3 if logy else y - e)
                out.append(f'<line x1="{X(x):.2f}" y1="{Y(hi):.2f}" '
                           f'x2="{X(x):.2f}" y2="{Y(lo):.2f}" '
                           f'stroke="{col}" stroke-width="1"/>')
        if s.get("label"):
            out.append(f'<text x="{ml + px - 6}" y="{mt + 16 + 15 * k}" '
                       f'text-anchor="end" fill="{col}">{s["label"]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_plot(path: str | Path, series: Sequence[dict], **kwargs) -> None:
    Path(path).write_text(render_plot(series, **kwargs))


def read_provenance(source: str | Path) -> dict | None:
    """Recover the provenance dict embedded in an SVG written by this module."""
    text = Path(source).read_text() if isinstance(source, Path) or (
        isinstance(source, str) and "\n" not in source and source.endswith(".svg")
    ) else str(source)
    m = _PROV_RE.search(text)
    return json.loads(m.group(1)) if m else None
