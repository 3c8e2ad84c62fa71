"""Alternating arm events in annuli and their probabilities.

An arm is a monochromatic lattice path from the inner boundary of an annulus
to its outer boundary.  The j-arm event (j in {2, 4}, colors alternating
BW / BWBW around the annulus) is detected without any explicit disjoint-path
search: label the clusters of each color inside the annulus, keep those that
touch both boundaries ("crossing clusters"), walk once around the inner
boundary ring recording which crossing cluster color each ring site belongs
to, and count the cyclic color changes of that sequence.  j or more changes
force j interleaved runs belonging to distinct alternating crossing
clusters, which is exactly the existence of j disjoint alternating arms;
conversely j arms produce j changes.  (The criterion is validated against a
brute-force disjoint-path oracle in the test suite before being trusted
here.)  For j = 2 the count is >= 2 iff both colors have a crossing cluster
at all, so the ring walk is skipped.

The inner ring must be read in boundary-curve order for the change count to
be meaningful: the ring sites are exactly the ones whose hexagons touch the
boundary of the removed inner box, and ``Annulus.inner_ring`` lists them in
the order the curve meets them.  Counting changes around the (larger) frame
of the inner box instead admits false positives: a frame corner is not
adjacent to the box, so a cluster reaching it can slip past the chord
between its neighbors and fake a separating contact.

Probabilities are estimated at the critical density 1/2 unless another
profile is passed.  ``n1 = 0`` denotes arms from a single site: the ring is
the six neighbors of the origin and the origin's own color is ignored (it
belongs to neither color mask).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import ndimage

from gradperc.fitstats import Estimate
from gradperc.lattice import ADJACENCY_STRUCTURE, Annulus
from gradperc.profiles import Configuration, DensityProfile, SeedSpec, \
    sample_configuration

__all__ = ["ArmEventSpec", "detect_alternating_arms", "arm_probability",
           "quasi_multiplicativity_ratio"]


@dataclass(frozen=True)
class ArmEventSpec:
    """One arm event: j alternating arms across an annulus under a profile."""

    j: int
    annulus: Annulus
    profile: DensityProfile = DensityProfile.homogeneous(0.5)

    def __post_init__(self):
        if self.j not in (2, 4):
            raise ValueError(f"arm count must be 2 or 4, got {self.j}")

    def probability(self, trials: int, master_seed: int,
                    lane: tuple[int, ...] = ()) -> Estimate:
        a = self.annulus
        return arm_probability(self.j, a.n1, a.n2, self.profile, trials,
                               master_seed, lane)


@lru_cache(maxsize=128)
def _geometry(n1: int, n2: int):
    """Cached per-annulus index arrays: site mask, ordered inner ring, outer frame."""
    a = Annulus(n1, n2)
    box = a.box
    side = box.width

    def flat(sites):
        return np.array([(j - box.j_min) * side + (i - box.i_min)
                         for i, j in sites], dtype=np.intp)

    return a.site_mask(), flat(a.inner_ring()), flat(a.outer_ring())


def _crossing_labels(labels: np.ndarray, ring: np.ndarray,
                     outer: np.ndarray) -> np.ndarray:
    lr = labels.ravel()
    on_ring, on_outer = lr[ring], lr[outer]
    return np.intersect1d(on_ring[on_ring > 0], on_outer[on_outer > 0])


def detect_alternating_arms(c: Configuration, a: Annulus, j: int) -> bool:
    """Does the configuration contain j disjoint alternating arms across a?

    See the module docstring for the cyclic color-change criterion.  Arms
    must stay inside the annulus (the inner box is masked out entirely and
    arms start on its adjacency ring).
    """
    if j not in (2, 4):
        raise ValueError(f"arm count must be 2 or 4, got {j}")
    box = a.box
    if not c.region.contains_region(box):
        raise ValueError(f"annulus box {box} not inside configuration region")
    mask, ring, outer = _geometry(a.n1, a.n2)
    black = c.subfield(box)

    blabels, _ = ndimage.label(black & mask, structure=ADJACENCY_STRUCTURE)
    bcross = _crossing_labels(blabels, ring, outer)
    if bcross.size == 0:
        return False
    wlabels, _ = ndimage.label(~black & mask, structure=ADJACENCY_STRUCTURE)
    wcross = _crossing_labels(wlabels, ring, outer)
    if wcross.size == 0:
        return False
    if j == 2:
        return True

    rb = blabels.ravel()[ring]
    rw = wlabels.ravel()[ring]
    seq = np.where(np.isin(rb, bcross), 1, 0) - np.where(np.isin(rw, wcross), 1, 0)
    seq = seq[seq != 0]
    changes = int((seq != np.roll(seq, 1)).sum())
    return changes >= j


def arm_probability(j: int, n1: int, n2: int, pr: DensityProfile, trials: int,
                    master_seed: int, lane: tuple[int, ...] = ()) -> Estimate:
    """Monte Carlo estimate of the j-arm probability across the (n1, n2) annulus.

    Trial t samples the annulus bounding box under ``pr`` with the stream
    (master_seed, *lane, t), so estimates are reproducible bit-for-bit and
    independent of evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    a = Annulus(n1, n2)
    successes = 0
    for t in range(trials):
        c = sample_configuration(a.box, pr, SeedSpec(master_seed, t, lane))
        successes += detect_alternating_arms(c, a, j)
    return Estimate.bernoulli(successes, trials)


def quasi_multiplicativity_ratio(j: int, n1: int, n2: int, pr: DensityProfile,
                                 trials: int, master_seed: int,
                                 lane: tuple[int, ...] = ()) -> float:
    """Factorization quality of the arm probability over nested annuli.

    Returns pi_j(0, n1/2) * pi_j(2*n1, n2) / pi_j(0, n2), which should be
    bounded above and below by universal constants: crossing the big annulus
    costs, up to constants, the product of crossing its separated pieces.

    Raises
    ------
    ValueError
        If the grid is malformed (need even n1 >= 2 and n2 >= 2*n1) or the
        denominator estimate is zero (increase trials).
    """
    if n1 < 2 or n1 % 2 or n2 < 2 * n1:
        raise ValueError(f"need even n1 >= 2 and n2 >= 2*n1, got {(n1, n2)}")
    inner = arm_probability(j, 0, n1 // 2, pr, trials, master_seed, (*lane, 0))
    outer = arm_probability(j, 2 * n1, n2, pr, trials, master_seed, (*lane, 1))
    whole = arm_probability(j, 0, n2, pr, trials, master_seed, (*lane, 2))
    if whole.mean == 0.0:
        raise ValueError("zero estimate for the full annulus; increase trials")
    return inner.mean * outer.mean / whole.mean
