import math

import numpy as np
import pytest

from gradperc.fitstats import Estimate, PowerLawFit, fit_estimate_series, \
    fit_power_law


def test_bernoulli_estimate():
    e = Estimate.bernoulli(250, 1000)
    assert e.mean == 0.25
    assert e.stderr == pytest.approx(math.sqrt(0.25 * 0.75 / 1000))
    assert e.trials == 1000


def test_bernoulli_extremes():
    assert Estimate.bernoulli(0, 100).stderr == 0.0
    assert Estimate.bernoulli(100, 100).mean == 1.0


def test_interval():
    e = Estimate.bernoulli(500, 1000)
    lo, hi = e.interval(2.0)
    assert lo == pytest.approx(0.5 - 2 * e.stderr)
    assert hi == pytest.approx(0.5 + 2 * e.stderr)


def test_exact_powerlaw_recovery():
    pts = [(x, 3 * x ** 2) for x in (1, 2, 4, 8)]
    fit = fit_power_law(pts)
    assert fit.slope == pytest.approx(2.0, abs=1e-12)
    assert fit.slope_stderr == pytest.approx(0.0, abs=1e-9)
    assert fit.r_squared == pytest.approx(1.0)
    assert math.exp(fit.intercept) == pytest.approx(3.0)
    assert not fit.degenerate
    assert fit.n_points == 4


def test_noisy_slope_calibration():
    # y = x^{-4/3} with 5% multiplicative noise: the fitted slope should land
    # in a generous band nearly always
    rng = np.random.default_rng(12345)
    xs = [2.0 ** k for k in range(1, 9)]
    hits = 0
    for _ in range(100):
        pts = [(x, x ** (-4 / 3) * math.exp(rng.normal(0, 0.05))) for x in xs]
        fit = fit_power_law(pts)
        hits += -1.5 <= fit.slope <= -1.17
    assert hits >= 95


def test_degenerate_span_flagged():
    fit = fit_power_law([(1, 1.0), (1.5, 1.1), (2, 1.3)])
    assert fit.degenerate


def test_input_validation():
    with pytest.raises(ValueError):
        fit_power_law([(1, 1.0), (2, 2.0)])
    with pytest.raises(ValueError):
        fit_power_law([(1, 1.0), (2, -2.0), (4, 3.0)])
    with pytest.raises(ValueError):
        fit_power_law([(0, 1.0), (2, 2.0), (4, 3.0)])


def test_scale_equivariance():
    pts = [(x, 5 * x ** -0.7) for x in (1, 3, 9, 27)]
    a = fit_power_law(pts)
    b = fit_power_law([(11 * x, y) for x, y in pts])
    assert b.slope == pytest.approx(a.slope, rel=1e-9)
    assert b.intercept != pytest.approx(a.intercept, rel=1e-3)


def test_axis_exchange_inverts_slope():
    pts = [(x, x ** 2) for x in (1, 2, 4, 8, 16)]
    inv = fit_power_law([(y, x) for x, y in pts])
    assert inv.slope == pytest.approx(0.5, abs=1e-9)


def test_weighted_fit_prefers_heavy_points():
    # outlier with near-zero weight should not move the slope
    pts = [(x, x ** 1.5, 1.0) for x in (1, 2, 4, 8)]
    fit = fit_power_law(pts + [(16, 1e-3, 1e-12)])
    assert fit.slope == pytest.approx(1.5, abs=1e-3)


def test_estimate_series_excludes_noise_floor():
    xs = [4, 8, 16, 32]
    ests = [Estimate.bernoulli(k, 1000) for k in (400, 200, 100, 2)]
    fit = fit_estimate_series(xs, ests)
    # the 2/1000 point is below the 5/trials floor and must be dropped
    assert fit.n_points == 3


def test_estimate_series_slope():
    xs = [2, 4, 8, 16, 32]
    ests = [Estimate.bernoulli(int(8000 * x ** -0.5), 8000) for x in xs]
    fit = fit_estimate_series(xs, ests)
    assert fit.slope == pytest.approx(-0.5, abs=0.02)
