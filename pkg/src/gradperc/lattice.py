"""Triangular-lattice geometry: sites, parallelogram regions, annuli.

Sites are integer pairs (i, j) over the basis (1, e^{i*pi/3}): site (i, j)
embeds at (i + j/2, j*sqrt(3)/2) in the plane.  A "region" [a1,a2]x[b1,b2] is
the parallelogram of sites with a1 <= i <= a2 and b1 <= j <= b2 (inclusive
bounds).  Arrays over a region are indexed [j - j_min, i - i_min], i.e.
row-major by j then i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SQRT3_2 = math.sqrt(3.0) / 2.0

Site = tuple[int, int]

#: The six neighbor offsets of the triangular lattice in (i, j) coordinates.
NEIGHBOR_OFFSETS: tuple[Site, ...] = (
    (1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1),
)

#: 3x3 connectivity footprint of the six-neighbor adjacency for arrays
#: indexed [j, i]; rows are j-1, j, j+1 and columns i-1, i, i+1.
ADJACENCY_STRUCTURE = np.array(
    [[0, 1, 1],
     [1, 1, 1],
     [1, 1, 0]], dtype=bool)


def embed(site: Site) -> tuple[float, float]:
    """Euclidean position of a site; injective, nearest-neighbor distance 1."""
    i, j = site
    return (i + 0.5 * j, SQRT3_2 * j)


def neighbors(site: Site) -> list[Site]:
    """The six lattice neighbors of a site."""
    i, j = site
    return [(i + di, j + dj) for di, dj in NEIGHBOR_OFFSETS]


@dataclass(frozen=True)
class Region:
    """Inclusive parallelogram of sites [i_min..i_max] x [j_min..j_max]."""

    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def __post_init__(self):
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise ValueError(f"empty region bounds {self}")

    @property
    def width(self) -> int:
        return self.i_max - self.i_min + 1

    @property
    def height(self) -> int:
        return self.j_max - self.j_min + 1

    @property
    def site_count(self) -> int:
        return self.width * self.height

    @property
    def shape(self) -> tuple[int, int]:
        """Array shape (height, width) for fields over this region."""
        return (self.height, self.width)

    def contains(self, site: Site) -> bool:
        i, j = site
        return self.i_min <= i <= self.i_max and self.j_min <= j <= self.j_max

    def contains_region(self, other: "Region") -> bool:
        return (self.i_min <= other.i_min and other.i_max <= self.i_max
                and self.j_min <= other.j_min and other.j_max <= self.j_max)

    def index(self, site: Site) -> tuple[int, int]:
        """Array index (row, col) of a site in a field over this region."""
        i, j = site
        return (j - self.j_min, i - self.i_min)

    def sites(self):
        """All sites, row-major by j then i (matches array order)."""
        for j in range(self.j_min, self.j_max + 1):
            for i in range(self.i_min, self.i_max + 1):
                yield (i, j)

    @staticmethod
    def square(n: int) -> "Region":
        """The (n+1) x (n+1)-site rhombus [0,n] x [0,n]."""
        return Region(0, n, 0, n)

    @staticmethod
    def box(n: int) -> "Region":
        """The centered box [-n, n] x [-n, n]."""
        return Region(-n, n, -n, n)


SIDES = ("left", "right", "bottom", "top")


def boundary_sites(region: Region, side: str) -> list[Site]:
    """Sites of one side of the region.

    left/right are the i = i_min / i = i_max columns, bottom/top the
    j = j_min / j = j_max rows.  Corners belong to two sides.
    """
    r = region
    if side == "left":
        return [(r.i_min, j) for j in range(r.j_min, r.j_max + 1)]
    if side == "right":
        return [(r.i_max, j) for j in range(r.j_min, r.j_max + 1)]
    if side == "bottom":
        return [(i, r.j_min) for i in range(r.i_min, r.i_max + 1)]
    if side == "top":
        return [(i, r.j_max) for i in range(r.i_min, r.i_max + 1)]
    raise ValueError(f"unknown side {side!r}, expected one of {SIDES}")


@dataclass(frozen=True)
class Annulus:
    """Annulus between the centered boxes S_n1 and S_n2 (S_n = [-n,n]x[-n,n]).

    The annulus site set is S_n2 minus all of S_n1 (for n1 = 0 that removes
    just the origin).  Arms start on the sites adjacent to the removed box;
    :meth:`inner_ring` lists exactly those, ordered along the boundary curve
    of the removed hexagons.  Reading cluster contacts in that order is what
    makes cyclic color-change counting equivalent to disjoint-arm existence.
    """

    n1: int
    n2: int

    def __post_init__(self):
        if self.n1 < 0 or self.n2 <= self.n1:
            raise ValueError(f"need 0 <= n1 < n2, got {self}")

    @property
    def box(self) -> Region:
        """Bounding region [-n2, n2]^2."""
        return Region.box(self.n2)

    def site_mask(self) -> np.ndarray:
        """Bool mask over self.box, True on annulus sites (S_n2 minus S_n1)."""
        side = 2 * self.n2 + 1
        mask = np.ones((side, side), dtype=bool)
        lo = self.n2 - self.n1
        hi = self.n2 + self.n1
        mask[lo:hi + 1, lo:hi + 1] = False
        return mask

    def inner_ring(self) -> list[Site]:
        """Sites adjacent to the removed box, counterclockwise from (n1+1, -n1-1).

        These are the frame sites of S_{n1+1} minus the two frame corners
        (m, m) and (-m, -m), m = n1 + 1, which are not lattice-adjacent to
        S_n1 (their hexagons only meet the hole's boundary at a point).
        Consecutive ring sites are lattice-adjacent, including across the
        skipped corners, so the ring is a closed circuit.
        """
        m = self.n1 + 1
        ring: list[Site] = [(m, j) for j in range(-m, m)]     # right side, up
        ring += [(i, m) for i in range(m - 1, -m - 1, -1)]    # top, leftward
        ring += [(-m, j) for j in range(m - 1, -m, -1)]       # left side, down
        ring += [(i, -m) for i in range(-m + 1, m)]           # bottom, rightward
        return ring

    def outer_ring(self) -> list[Site]:
        """Frame of S_n2 (order unspecified; used as a membership set)."""
        n = self.n2
        out = [(n, j) for j in range(-n, n + 1)]
        out += [(-n, j) for j in range(-n, n + 1)]
        out += [(i, n) for i in range(-n + 1, n)]
        out += [(i, -n) for i in range(-n + 1, n)]
        return out
