"""Characteristic-length and gradient-scale estimators.

Slopes are the acceptance suite's business; here we check the estimators'
contracts — validation, symmetry, monotonicity, and the coarse magnitude
bands that a correct implementation cannot miss.
"""

from fractions import Fraction

import pytest

from gradperc.charlen import (REFERENCE, CharLenParams, CharLenResult,
                              ReferenceExponents, check_scaling_relation,
                              estimate_characteristic_length, estimate_sigma,
                              gradient_row_density)


def test_params_validation():
    with pytest.raises(ValueError):
        CharLenParams(eps=0.5)
    with pytest.raises(ValueError):
        CharLenParams(eps=0.0)
    with pytest.raises(ValueError):
        CharLenParams(trials=50)
    with pytest.raises(ValueError):
        CharLenParams(n_max=2)


def test_reference_exponents():
    assert REFERENCE.nu == Fraction(4, 3)
    assert REFERENCE.sigma_exponent == Fraction(4, 7)
    assert REFERENCE.alpha2 == Fraction(1, 4)
    assert REFERENCE.alpha4 == Fraction(5, 4)
    assert REFERENCE.front_dimension == Fraction(7, 4)
    assert REFERENCE.sigma_exponent == REFERENCE.nu / (1 + REFERENCE.nu)
    with pytest.raises(ValueError):
        ReferenceExponents(sigma_exponent=Fraction(1, 2))


def test_near_critical_p_rejected():
    with pytest.raises(ValueError):
        estimate_characteristic_length(0.499)
    with pytest.raises(ValueError):
        estimate_characteristic_length(0.5)


def test_far_from_critical_is_tiny():
    res = estimate_characteristic_length(0.05, master_seed=11)
    assert isinstance(res, CharLenResult)
    assert res.L <= 8
    assert not res.out_of_range


def test_color_symmetry():
    lo = estimate_characteristic_length(0.4, master_seed=13, lane=(0,))
    hi = estimate_characteristic_length(0.6, master_seed=13, lane=(1,))
    assert abs(lo.L - hi.L) <= 3


def test_length_grows_toward_criticality():
    ps = (0.40, 0.42, 0.44, 0.46, 0.48)
    Ls = [estimate_characteristic_length(p, master_seed=17, lane=(k,)).L
          for k, p in enumerate(ps)]
    assert all(b >= a for a, b in zip(Ls, Ls[1:]))
    # halving the distance to 1/2 can stretch the length by at most 2^{2*nu}
    assert 1.0 <= Ls[4] / Ls[1] <= 32.0


def test_trace_is_audited():
    res = estimate_characteristic_length(0.44, master_seed=19)
    assert res.trace  # every probe leaves a record
    assert all(r.verdict in ("le", "gt", "retry") for r in res.trace)
    assert all(r.trials >= 400 for r in res.trace)
    assert not res.monotone_violation


def test_out_of_range_cap():
    res = estimate_characteristic_length(0.47, CharLenParams(n_max=8),
                                         master_seed=23)
    assert res.out_of_range
    assert res.L == 8


def test_sigma_smoke():
    res = estimate_sigma(64, master_seed=29)
    assert 3 <= res.sigma <= 32
    assert not res.degenerate
    assert res.N == 64


def test_sigma_magnitude_at_256():
    res = estimate_sigma(256, master_seed=31)
    # 256**(4/7) ~ 24; anything outside a factor-2 band is a wrong scale
    assert 12 <= res.sigma <= 49


def test_sigma_threshold_insensitivity():
    a = estimate_sigma(256, CharLenParams(eps=0.2), master_seed=37, lane=(0,))
    b = estimate_sigma(256, CharLenParams(eps=0.3), master_seed=37, lane=(1,))
    assert a.sigma / b.sigma <= 3.0
    assert b.sigma / a.sigma <= 3.0


def test_sigma_validation_and_degenerate():
    with pytest.raises(ValueError):
        estimate_sigma(8)
    res = estimate_sigma(16, CharLenParams(eps=0.49), master_seed=41)
    assert res.degenerate


def test_sigma_is_the_marginal_scale():
    # rows at 2*sigma are strictly more subcritical than rows at sigma
    res = estimate_sigma(64, master_seed=43)
    at = estimate_characteristic_length(
        gradient_row_density(res.sigma, 64), master_seed=43, lane=(1,))
    beyond = estimate_characteristic_length(
        gradient_row_density(2 * res.sigma, 64), master_seed=43, lane=(2,))
    assert beyond.L <= at.L


def test_relation_flags_small_lengths():
    res = check_scaling_relation(0.05, master_seed=47, arm_trials=2000)
    assert res.outside_window
    assert res.L <= 8
    assert res.product > 0.0


def test_gradient_row_density():
    assert gradient_row_density(0, 64) == 0.5
    assert gradient_row_density(64, 64) == 0.0
    assert gradient_row_density(-64, 64) == 1.0
    assert gradient_row_density(32, 64) == 0.25
