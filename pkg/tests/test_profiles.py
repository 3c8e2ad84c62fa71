
import numpy as np
import pytest

from gradperc.lattice import Region
from gradperc.profiles import (Configuration, DensityProfile, SeedSpec,
                               dump_ascii, dump_binary, load_binary,
                               parse_ascii, sample_configuration,
                               site_probability, stream)


def test_homogeneous_rows_constant():
    pr = DensityProfile.homogeneous(0.3)
    assert pr.row_probability(-50) == pr.row_probability(7) == 0.3


def test_gradient_values():
    pr = DensityProfile.gradient(100)
    assert site_probability(pr, (17, 0)) == 0.5
    assert site_probability(pr, (-5, -100)) == 1.0
    assert site_probability(pr, (3, 100)) == 0.0
    assert site_probability(DensityProfile.gradient(4), (0, 1)) == 0.375


def test_gradient_domain_error():
    pr = DensityProfile.gradient(8)
    with pytest.raises(ValueError):
        pr.row_probability(9)
    with pytest.raises(ValueError):
        site_probability(pr, (0, -9))


def test_profile_validation():
    with pytest.raises(ValueError):
        DensityProfile.homogeneous(1.5)
    with pytest.raises(ValueError):
        DensityProfile.gradient(0)


def test_degenerate_probabilities():
    r = Region.square(5)
    all_black = sample_configuration(r, DensityProfile.homogeneous(1.0),
                                     SeedSpec(1))
    assert all_black.black.all()
    all_white = sample_configuration(r, DensityProfile.homogeneous(0.0),
                                     SeedSpec(1))
    assert not all_white.black.any()


def test_black_fraction_concentrates():
    r = Region(0, 99, 0, 99)
    c = sample_configuration(r, DensityProfile.homogeneous(0.5), SeedSpec(7))
    assert abs(c.black_fraction - 0.5) < 0.02


def test_gradient_rows_follow_profile():
    N = 50
    r = Region(0, 399, -N, N)
    c = sample_configuration(r, DensityProfile.gradient(N), SeedSpec(3))
    assert c.black[0].all()        # j = -N row, p = 1
    assert not c.black[-1].any()   # j = +N row, p = 0
    mid = c.black[N].mean()        # j = 0 row, p = 1/2
    assert abs(mid - 0.5) < 4 * 0.5 / np.sqrt(400)


def test_sampling_determinism():
    r = Region.box(20)
    pr = DensityProfile.homogeneous(0.5)
    a = sample_configuration(r, pr, SeedSpec(99, 5, (2,)))
    b = sample_configuration(r, pr, SeedSpec(99, 5, (2,)))
    c = sample_configuration(r, pr, SeedSpec(99, 6, (2,)))
    assert np.array_equal(a.black, b.black)
    assert not np.array_equal(a.black, c.black)


def test_trial_streams_differ_from_lane_streams():
    # (seed, trial 1, lane ()) and (seed, trial 0, lane (1,)) must not collide
    r = Region.square(30)
    pr = DensityProfile.homogeneous(0.5)
    a = sample_configuration(r, pr, SeedSpec(0, 1))
    b = sample_configuration(r, pr, SeedSpec(0, 0, (1,)))
    assert not np.array_equal(a.black, b.black)


def test_stream_reproducible():
    assert stream(5, 1, 2).random() == stream(5, 1, 2).random()
    assert stream(5, 1, 2).random() != stream(5, 2, 1).random()


def test_configuration_is_frozen():
    r = Region.square(3)
    c = sample_configuration(r, DensityProfile.homogeneous(0.5), SeedSpec(0))
    with pytest.raises(ValueError):
        c.black[0, 0] = True


def test_configuration_shape_check():
    r = Region.square(3)
    with pytest.raises(ValueError):
        Configuration(r, np.zeros((2, 2), dtype=bool),
                      DensityProfile.homogeneous(0.5))


def test_subfield():
    r = Region.box(5)
    c = sample_configuration(r, DensityProfile.homogeneous(0.5), SeedSpec(11))
    sub = Region.box(2)
    view = c.subfield(sub)
    assert view.shape == sub.shape
    assert view[0, 0] == c.is_black((-2, -2))
    assert view[4, 4] == c.is_black((2, 2))


def test_is_black_matches_array():
    r = Region(-3, 4, 2, 6)
    c = sample_configuration(r, DensityProfile.homogeneous(0.4), SeedSpec(2))
    for s in [(-3, 2), (4, 6), (0, 3)]:
        assert c.is_black(s) == bool(c.black[r.index(s)])


@pytest.mark.parametrize("pr", [DensityProfile.homogeneous(0.37),
                                DensityProfile.gradient(6)])
def test_binary_roundtrip(pr):
    r = Region(0, 9, -6, 6)
    c = sample_configuration(r, pr, SeedSpec(21, 3, (1, 4)))
    back = load_binary(dump_binary(c))
    assert back.region == c.region
    assert np.array_equal(back.black, c.black)
    assert back.profile == c.profile
    assert back.seed == c.seed


def test_ascii_roundtrip():
    r = Region(0, 7, -4, 4)
    c = sample_configuration(r, DensityProfile.gradient(4), SeedSpec(8))
    text = dump_ascii(c)
    back = parse_ascii(text)
    assert back.region == c.region
    assert np.array_equal(back.black, c.black)
    # top row printed first: j = +4 row of a gradient sample is all white
    first_data_row = next(l for l in text.splitlines() if not l.startswith("#"))
    assert set(first_data_row) == {"0"}
