"""Gradient strips and the interface between their black and white phases.

A gradient strip of half-height N and length T is the region [0,T] x [-N,N]
colored with row density p(j) = 1/2 - j/(2N): surely black at the bottom,
surely white at the top.  Somewhere around j = 0 the bottom-attached black
cluster and the top-attached white cluster meet along a random interface,
the *front*.

The front is extracted by the standard exploration walk on the hexagon
picture of the triangular lattice (each site is a hexagon; lattice adjacency
is hexagon adjacency).  The walk follows hexagon-boundary edges keeping a
black hexagon on its right and a white one on its left.  The left end of the
strip is made unambiguous by forcing column i = 0 black below the top row
("seed column"), so the interface enters at the top-left corner, descends
along the seed column, and then wanders rightward until it first touches
column i = T.

The walk state is the directed dual edge (b, w): b the black hexagon on the
right of travel, w the white one on the left.  One step probes the hexagon c
ahead, which in axial coordinates is b + rot60cw(w - b), and advances b or w
to c according to c's color.  The two endpoints of the edge (b, w) are the
centroids of the hexagon triples (b, w, c_behind) and (b, w, c_ahead); these
are the vertices of the exported polyline.  Because every vertex of the
hexagon tiling has degree 3, the colored successor map on directed edges is
injective and the walk can never revisit a directed edge.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from gradperc.cluster import label_clusters
from gradperc.lattice import Region, embed
from gradperc.profiles import Configuration, DensityProfile, SeedSpec, \
    sample_configuration

__all__ = [
    "StripSpec", "FrontPath", "FrontStats",
    "sample_strip", "apply_seed_column", "extract_front", "verify_front",
    "front_statistics", "interior_window", "default_strip_length",
]


def default_strip_length(N: int, sigma: int) -> int:
    """Strip length holding many sigma-scale fluctuations: max(20*sigma, 8*N^(4/7))."""
    return max(20 * sigma, math.ceil(8 * N ** (4 / 7)))


@dataclass(frozen=True)
class StripSpec:
    """Geometry of one gradient strip: region [0, T] x [-N, N].

    seed_column forces column i = 0 black below the top site, which pins a
    unique, well-defined interface start; leave it on unless you are
    studying the raw field.
    """

    N: int
    T: int
    seed_column: bool = True

    def __post_init__(self):
        if self.N < 16:
            raise ValueError(f"strip half-height N must be >= 16, got {self.N}")
        if self.T < math.ceil(4 * self.N ** (4 / 7)):
            raise ValueError(
                f"strip length T={self.T} too short for N={self.N}; "
                f"need at least 4*N^(4/7) = {math.ceil(4 * self.N ** (4 / 7))}")

    @property
    def region(self) -> Region:
        return Region(0, self.T, -self.N, self.N)

    @property
    def profile(self) -> DensityProfile:
        return DensityProfile.gradient(self.N)


def apply_seed_column(c: Configuration) -> Configuration:
    """Force column i = 0 black below the top row (top site stays white)."""
    black = c.black.copy()
    black[:-1, 0] = True
    black[-1, 0] = False
    return Configuration(c.region, black, c.profile, c.seed)


def sample_strip(spec: StripSpec, seed: SeedSpec | int) -> Configuration:
    """Draw one gradient strip; rows j = -N / j = N come out all black / white."""
    if isinstance(seed, int):
        seed = SeedSpec(seed)
    c = sample_configuration(spec.region, spec.profile, seed)
    return apply_seed_column(c) if spec.seed_column else c


# axial-coordinate rotations by -60 / +60 degrees
def _rot_cw(di: int, dj: int) -> tuple[int, int]:
    return (di + dj, -di)


def _rot_ccw(di: int, dj: int) -> tuple[int, int]:
    return (-dj, di + dj)


@dataclass(frozen=True)
class FrontPath:
    """The extracted interface as an ordered array of directed dual edges.

    ``states[k] = (bi, bj, wi, wj)``: the black hexagon (bi, bj) lies on the
    right of edge k, the white hexagon (wi, wj) on its left.  Hexagons may
    lie one unit outside the strip (virtual boundary colors).  Consecutive
    edges share a polyline vertex; the last edge touches column i = T.
    """

    states: np.ndarray
    N: int
    T: int

    def __post_init__(self):
        self.states.setflags(write=False)

    @property
    def edge_count(self) -> int:
        return len(self.states)

    def midpoints_lattice(self) -> np.ndarray:
        """(k, 2) midpoints of the edges' hexagon pairs, in axial (i, j)."""
        s = self.states
        return np.stack([(s[:, 0] + s[:, 2]) / 2.0,
                         (s[:, 1] + s[:, 3]) / 2.0], axis=1)

    def vertices(self) -> np.ndarray:
        """(k+1, 2) Euclidean polyline vertices of the interface curve."""
        s = self.states
        di, dj = s[:, 2] - s[:, 0], s[:, 3] - s[:, 1]
        ahead = np.stack([s[:, 0] + di + dj, s[:, 1] - di], axis=1)
        behind0 = (s[0, 0] - dj[0], s[0, 1] + di[0] + dj[0])
        triples = np.concatenate([[(*s[0, 0:2], *s[0, 2:4], *behind0)],
                                  np.concatenate([s, ahead], axis=1)])

        def centroid(cols):  # mean of the three hexagon centers, embedded
            x = cols[:, 0::2].astype(float)
            y = cols[:, 1::2].astype(float)
            ex = x + 0.5 * y
            ey = y * (math.sqrt(3.0) / 2.0)
            return np.stack([ex.mean(axis=1), ey.mean(axis=1)], axis=1)

        return centroid(triples)

    def write_vertices_csv(self, f: IO[str]) -> None:
        """Write the polyline as CSV rows ``x,y`` (header included)."""
        w = csv.writer(f)
        w.writerow(["x", "y"])
        for x, y in self.vertices():
            w.writerow([f"{x:.6f}", f"{y:.6f}"])


def extract_front(c: Configuration, step_budget_factor: int = 4) -> FrontPath:
    """Run the exploration walk on a seeded gradient strip.

    Hexagons outside the sampled region are colored deterministically to
    close the rule set: black below the strip, white above it, and left of
    the strip (i < 0) black except on the top row — the continuation of the
    forced seed column.  The walk starts on the edge between (0, N-1) and
    (0, N) heading right and stops as soon as its edge touches column T.

    Raises
    ------
    ValueError
        If the configuration is not a gradient strip with a seed column.
    RuntimeError
        If the walk exceeds ``step_budget_factor`` x site-count steps —
        impossible for a correct chirality rule, so it means a bug.
    """
    if c.profile.kind != "gradient":
        raise ValueError("front extraction needs a gradient-strip configuration")
    N = c.profile.N
    T = c.region.i_max
    if c.region != Region(0, T, -N, N):
        raise ValueError(f"unexpected strip region {c.region}")
    if not c.is_black((0, N - 1)) or c.is_black((0, N)):
        raise ValueError("strip lacks the seed column; sample with seed_column=True")

    black = c.black

    def is_black(i: int, j: int) -> bool:
        if j < -N:
            return True
        if j > N:
            return False
        if i < 0:
            return j < N
        return black[j + N, i]

    bi, bj, wi, wj = 0, N - 1, 0, N
    states = [(bi, bj, wi, wj)]
    budget = step_budget_factor * c.region.site_count
    while bi < T and wi < T:
        di, dj = wi - bi, wj - bj
        ci, cj = bi + di + dj, bj - di  # hexagon ahead of the edge
        if is_black(ci, cj):
            bi, bj = ci, cj
        else:
            wi, wj = ci, cj
        states.append((bi, bj, wi, wj))
        if len(states) > budget:
            raise RuntimeError("exploration walk exceeded its step budget")
    return FrontPath(np.array(states, dtype=np.int64), N, T)


def verify_front(path: FrontPath, c: Configuration) -> bool:
    """Independent cross-check of an extracted front against cluster labels.

    True iff every path edge separates a black hexagon of the cluster
    attached to the bottom row from a white hexagon of the cluster attached
    to the top row.  Hexagons outside the strip pass iff their virtual color
    matches the side they are on (they are attached by construction).
    """
    N, T = path.N, path.T
    blk = label_clusters(c, c.region, "black")
    wht = label_clusters(c, c.region, "white")
    bottom_label = blk.label_of((0, -N))
    top_label = wht.label_of((0, N))
    for bi, bj, wi, wj in path.states:
        if -N <= bj <= N and 0 <= bi <= T:
            if blk.label_of((bi, bj)) != bottom_label:
                return False
        elif not (bj < -N or (bi < 0 and bj < N)):
            return False
        if -N <= wj <= N and 0 <= wi <= T:
            if wht.label_of((wi, wj)) != top_label:
                return False
        elif not (wj > N or (wi < 0 and wj == N)):
            return False
    return True


@dataclass(frozen=True)
class FrontStats:
    """Window statistics of one front.

    max_abs_y
        Largest |j| of an edge midpoint in the window (vertical excursion).
    edge_count_in_window
        Number of path edges whose midpoint falls in the window.
    max_backtrack
        Largest leftward excursion below the running rightmost progress,
        max over ordered edge pairs s < s' of x(s) - x(s').
    boundary_black / boundary_white
        Distinct black / white hexagons adjacent to the front in the window;
        their difference is the local asymmetry statistic.
    degenerate
        Set when the path does not meet the window at all.
    """

    max_abs_y: float
    edge_count_in_window: int
    max_backtrack: float
    boundary_black: int
    boundary_white: int
    window: Region
    degenerate: bool = False

    @property
    def boundary_excess(self) -> int:
        return self.boundary_black - self.boundary_white


def front_statistics(path: FrontPath, c: Configuration,
                     window: Region) -> FrontStats:
    """Statistics of the path restricted to a window (see FrontStats).

    An edge belongs to the window iff the midpoint of its hexagon pair does,
    in axial coordinates.  A hexagon adjacent to several in-window edges is
    counted once.
    """
    m = path.midpoints_lattice()
    sel = ((m[:, 0] >= window.i_min) & (m[:, 0] <= window.i_max)
           & (m[:, 1] >= window.j_min) & (m[:, 1] <= window.j_max))
    if not sel.any():
        return FrontStats(0.0, 0, 0.0, 0, 0, window, degenerate=True)
    mi, mj = m[sel, 0], m[sel, 1]
    run_max = np.maximum.accumulate(mi)
    s = path.states[sel]
    # unique hexagons via an injective integer key (coordinates are small)
    key_b = s[:, 0] * (1 << 32) + s[:, 1]
    key_w = s[:, 2] * (1 << 32) + s[:, 3]
    return FrontStats(
        max_abs_y=float(np.abs(mj).max()),
        edge_count_in_window=int(sel.sum()),
        max_backtrack=float((run_max - mi).max()),
        boundary_black=int(np.unique(key_b).size),
        boundary_white=int(np.unique(key_w).size),
        window=window,
    )


def interior_window(spec: StripSpec, sigma: int, i_min: int | None = None,
                    i_max: int | None = None, j_min: int | None = None,
                    j_max: int | None = None) -> Region:
    """Window away from the seed column and the right margin by 2*sigma.

    Defaults to the full interior [2*sigma, T - 2*sigma] x [-N, N]; pass
    explicit bounds to restrict it (they are clipped to the interior).
    """
    lo, hi = 2 * sigma, spec.T - 2 * sigma
    if hi - lo < sigma:
        raise ValueError(f"strip too short for an interior window at sigma={sigma}")
    return Region(
        lo if i_min is None else max(lo, i_min),
        hi if i_max is None else min(hi, i_max),
        -spec.N if j_min is None else max(-spec.N, j_min),
        spec.N if j_max is None else min(spec.N, j_max),
    )
