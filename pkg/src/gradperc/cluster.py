"""Connectivity labeling and crossing events for one color in a region."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy import ndimage

from gradperc.fitstats import Estimate
from gradperc.lattice import ADJACENCY_STRUCTURE, Region, Site
from gradperc.profiles import Configuration, DensityProfile, SeedSpec, \
    sample_configuration

__all__ = ["ClusterLabeling", "label_clusters", "has_crossing",
           "crossing_probability"]

ORIENTATIONS = ("horizontal", "vertical")
COLORS = ("black", "white")


def _color_mask(c: Configuration, r: Region, color: str) -> np.ndarray:
    if color not in COLORS:
        raise ValueError(f"unknown color {color!r}")
    sub = c.subfield(r)
    return sub if color == "black" else ~sub


def _label(mask: np.ndarray) -> tuple[np.ndarray, int]:
    # Six-neighbor adjacency of the triangular lattice as a 3x3 footprint.
    return ndimage.label(mask, structure=ADJACENCY_STRUCTURE)


@dataclass(frozen=True)
class ClusterLabeling:
    """Per-site cluster ids for one color; 0 marks sites of the other color.

    Ids are canonical: clusters are numbered 1, 2, ... by the row-major
    position of their first site, so equal inputs give equal labelings.
    """

    region: Region
    color: str
    labels: np.ndarray
    count: int

    def label_of(self, site: Site) -> int:
        return int(self.labels[self.region.index(site)])

    def labels_at(self, sites: Iterable[Site]) -> set[int]:
        """Distinct nonzero cluster ids present on the given sites."""
        out = {int(self.labels[self.region.index(s)]) for s in sites}
        out.discard(0)
        return out

    def sizes(self) -> np.ndarray:
        """sizes[k] = number of sites in cluster k+1."""
        return np.bincount(self.labels.ravel(), minlength=self.count + 1)[1:]


def label_clusters(c: Configuration, r: Region, color: str) -> ClusterLabeling:
    """Label same-color clusters of the induced subgraph on r."""
    raw, n = _label(_color_mask(c, r, color))
    if n > 1:
        # renumber by first row-major occurrence for deterministic ids
        uniq, first = np.unique(raw.ravel(), return_index=True)
        keep = uniq != 0
        order = np.argsort(first[keep], kind="stable")
        perm = np.zeros(n + 1, dtype=raw.dtype)
        perm[uniq[keep][order]] = np.arange(1, n + 1, dtype=raw.dtype)
        raw = perm[raw]
    return ClusterLabeling(r, color, raw, int(n))


def has_crossing(c: Configuration, r: Region, orientation: str,
                 color: str) -> bool:
    """Is there a same-color path in r joining the two opposite sides?

    horizontal = left column to right column, vertical = bottom row to top
    row.  Connectivity is restricted to r: paths may not leave the region.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    mask = _color_mask(c, r, color)
    if orientation == "horizontal":
        a, b = mask[:, 0], mask[:, -1]
    else:
        a, b = mask[0, :], mask[-1, :]
    if not (a.any() and b.any()):
        return False
    labels, _ = _label(mask)
    if orientation == "horizontal":
        la, lb = labels[:, 0], labels[:, -1]
    else:
        la, lb = labels[0, :], labels[-1, :]
    return bool(np.isin(la[la > 0], lb[lb > 0]).any())


def has_crossing_field(black: np.ndarray, orientation: str = "horizontal",
                       color: str = "black") -> bool:
    """Crossing check on a bare boolean field (row-major by j then i)."""
    region = Region(0, black.shape[1] - 1, 0, black.shape[0] - 1)
    # .view() so the read-only flag set by Configuration stays off the caller's array
    cfg = Configuration(region, black.view(), DensityProfile.homogeneous(0.5))
    return has_crossing(cfg, region, orientation, color)


def count_crossing_clusters(c: Configuration, r: Region, orientation: str,
                            color: str) -> int:
    """Number of distinct same-color clusters joining the opposite sides of r."""
    if orientation not in ORIENTATIONS:
        raise ValueError(f"unknown orientation {orientation!r}")
    labels, _ = _label(_color_mask(c, r, color))
    if orientation == "horizontal":
        la, lb = labels[:, 0], labels[:, -1]
    else:
        la, lb = labels[0, :], labels[-1, :]
    return int(np.intersect1d(la[la > 0], lb[lb > 0]).size)


def crossing_probability(r: Region, pr: DensityProfile, orientation: str,
                         color: str, trials: int, master_seed: int,
                         lane: tuple[int, ...] = ()) -> Estimate:
    """Monte Carlo crossing probability over independent samples.

    Trial t uses the stream (master_seed, *lane, t); the estimate is a pure
    function of the arguments, independent of evaluation order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    successes = 0
    for t in range(trials):
        cfg = sample_configuration(r, pr, SeedSpec(master_seed, t, lane))
        successes += has_crossing(cfg, r, orientation, color)
    return Estimate.bernoulli(successes, trials)
