"""Worker-count invariance of the parallel runners.

Every ensemble is chunked on fixed trial boundaries and reduced in chunk
order, so serial and pooled runs must agree to the bit, not just in
distribution.
"""

import numpy as np

from gradperc.fitstats import Estimate
from gradperc.front import StripSpec, interior_window
from gradperc.lattice import Region
from gradperc.profiles import DensityProfile
from gradperc.runner import (arm_probability, crossing_probability,
                             duality_counts, front_ensemble, grid_map,
                             map_chunks)

CRIT = DensityProfile.homogeneous(0.5)


def _span(lo, hi):
    return hi - lo


def test_map_chunks_partitions_trials():
    parts = map_chunks(_span, 700, (), workers=1, chunk=512)
    assert parts == [512, 188]
    assert map_chunks(_span, 512, (), chunk=512) == [512]


def test_grid_map_preserves_order():
    items = [(0, 3), (10, 11), (5, 9)]
    assert grid_map(_span, items, workers=3) == [3, 1, 4]


def test_crossing_worker_invariance():
    r = Region.square(12)
    a = crossing_probability(r, CRIT, "horizontal", "black", 1500, 7, (1,), 1)
    b = crossing_probability(r, CRIT, "horizontal", "black", 1500, 7, (1,), 2)
    assert a == b
    assert isinstance(a, Estimate)


def test_duality_worker_invariance():
    a = duality_counts(10, 1200, 7, (2,), workers=1)
    b = duality_counts(10, 1200, 7, (2,), workers=2)
    assert a == b
    assert a[2] == 0


def test_arm_worker_invariance():
    a = arm_probability(2, 0, 12, CRIT, 1500, 7, (3,), workers=1)
    b = arm_probability(2, 0, 12, CRIT, 1500, 7, (3,), workers=2)
    assert a == b


def test_front_ensemble_worker_invariance():
    spec = StripSpec(32, 80)
    wins = (interior_window(spec, 5), interior_window(spec, 5, j_max=-1))
    a = front_ensemble(spec, wins, strips=20, master_seed=7, lane=(4,), workers=1)
    b = front_ensemble(spec, wins, strips=20, master_seed=7, lane=(4,), workers=2)
    for name in ("verify", "edge_count_total", "max_abs_y", "edge_count",
                 "max_backtrack", "boundary_black", "boundary_white",
                 "degenerate"):
        assert np.array_equal(getattr(a, name), getattr(b, name)), name
    assert a.verify.all()
    assert a.boundary_excess.shape == (20, 2)
