"""Monte Carlo estimates and log-log power-law regression."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = ["Estimate", "PowerLawFit", "fit_power_law", "fit_estimate_series"]


@dataclass(frozen=True)
class Estimate:
    """Monte Carlo point estimate with its standard error."""

    mean: float
    stderr: float
    trials: int

    def __post_init__(self):
        if self.trials < 1 or self.stderr < 0:
            raise ValueError(f"bad estimate {self}")

    @staticmethod
    def bernoulli(successes: int, trials: int) -> "Estimate":
        """Frequency estimate of an event probability from iid indicator data."""
        m = successes / trials
        return Estimate(m, math.sqrt(m * (1.0 - m) / trials), trials)

    def interval(self, z: float = 2.0) -> tuple[float, float]:
        return (self.mean - z * self.stderr, self.mean + z * self.stderr)


@dataclass(frozen=True)
class PowerLawFit:
    """Result of fitting y = a * x^b by weighted least squares on logs.

    ``slope`` is b, ``intercept`` is log(a).  ``degenerate`` is set when the
    x values span less than a factor 4 (slope is then poorly constrained and
    should not be trusted).
    """

    slope: float
    slope_stderr: float
    intercept: float
    r_squared: float
    n_points: int
    degenerate: bool = False


def fit_power_law(points: Iterable[tuple]) -> PowerLawFit:
    """Weighted least-squares power-law fit on log-log axes.

    Parameters
    ----------
    points : iterable of (x, y) or (x, y, weight)
        x and y must be positive.  Omitted weights default to 1.

    Returns
    -------
    PowerLawFit

    Raises
    ------
    ValueError
        On fewer than 3 points or any non-positive x, y, or weight.
    """
    pts = [p if len(p) == 3 else (*p, 1.0) for p in points]
    if len(pts) < 3:
        raise ValueError(f"need >= 3 points to fit, got {len(pts)}")
    x = np.array([p[0] for p in pts], dtype=float)
    y = np.array([p[1] for p in pts], dtype=float)
    w = np.array([p[2] for p in pts], dtype=float)
    if np.any(x <= 0) or np.any(y <= 0) or np.any(w <= 0):
        raise ValueError("x, y and weights must all be positive")
    degenerate = x.max() / x.min() < 4.0

    lx, ly = np.log(x), np.log(y)
    sw = w.sum()
    xb = (w * lx).sum() / sw
    yb = (w * ly).sum() / sw
    sxx = (w * (lx - xb) ** 2).sum()
    sxy = (w * (lx - xb) * (ly - yb)).sum()
    if sxx == 0.0:
        raise ValueError("all x values identical")
    slope = sxy / sxx
    intercept = yb - slope * xb

    resid = ly - (intercept + slope * lx)
    ss_res = (w * resid ** 2).sum()
    ss_tot = (w * (ly - yb) ** 2).sum()
    n = len(pts)
    s2 = ss_res / (n - 2) if n > 2 else 0.0
    slope_stderr = math.sqrt(s2 / sxx)
    r_squared = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return PowerLawFit(float(slope), float(slope_stderr), float(intercept),
                       float(r_squared), n, degenerate)


def fit_estimate_series(xs: Sequence[float],
                        estimates: Sequence[Estimate]) -> PowerLawFit:
    """Fit a power law through Monte Carlo estimates, inverse-variance weighted.

    Weight of each point is 1 / relative-variance of the estimate,
    (mean/stderr)^2.  Points with mean < 5/trials are dropped: their log is
    dominated by sampling noise.  Exact estimates (stderr 0) get weight
    trials^2, which dominates any noisy point without being infinite.
    """
    pts = []
    for x, e in zip(xs, estimates):
        if e.mean < 5.0 / e.trials:
            continue
        weight = (e.mean / e.stderr) ** 2 if e.stderr > 0 else float(e.trials) ** 2
        pts.append((x, e.mean, weight))
    return fit_power_law(pts)
