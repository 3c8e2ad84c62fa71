"""Density profiles and seeded random sampling of site colorings.

This module owns the randomness contract of the whole package.  Every random
quantity anywhere downstream is a deterministic function of a master seed and
a small tuple of integers (grid index, trial index, ...), mapped to an
independent counter-based stream via :func:`stream`.  Sampling a configuration
consumes its stream in a fixed documented order (row-major by j then i), so
identical inputs reproduce bit-identical colorings regardless of how many
worker processes are running or in what order trials complete.

Profiles
--------
``homogeneous(p)``
    every site black with probability p.
``gradient(N)``
    black probability depends on the row only: p(j) = 1/2 - j/(2N) for
    j in [-N, N], so the bottom row j=-N is surely black and the top row
    j=N surely white.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass, field

import numpy as np

from gradperc.lattice import Region, Site

__all__ = [
    "DensityProfile",
    "SeedSpec",
    "Configuration",
    "stream",
    "site_probability",
    "sample_configuration",
    "dump_binary",
    "load_binary",
    "dump_ascii",
    "parse_ascii",
]


def stream(master_seed: int, *path: int) -> np.random.Generator:
    """Independent counter-based random stream for a derivation path.

    Parameters
    ----------
    master_seed : int
        Non-negative master seed (any size; 64 bits is plenty).
    *path : int
        Derivation path, e.g. ``(grid_index, trial_index)``.  Distinct
        paths give statistically independent streams.

    Returns
    -------
    numpy.random.Generator
        Philox-backed generator keyed by the path.  The path length is part
        of the key: SeedSequence zero-pads short entropy tuples, so without
        it ``(1,)`` + trial 0 and ``()`` + trial 1 would share a stream.
    """
    ss = np.random.SeedSequence((master_seed, len(path), *path))
    return np.random.Generator(np.random.Philox(ss))


@dataclass(frozen=True)
class SeedSpec:
    """Reproducibility record: master seed plus a stream-derivation path.

    The stream used for one trial is ``stream(master_seed, *lane, trial_index)``.
    ``lane`` carries any outer indices (grid point, experiment stage); it is
    empty for standalone draws.
    """

    master_seed: int
    trial_index: int = 0
    lane: tuple[int, ...] = ()

    def __post_init__(self):
        if self.master_seed < 0 or self.trial_index < 0:
            raise ValueError("seeds and trial indices must be non-negative")

    def rng(self) -> np.random.Generator:
        return stream(self.master_seed, *self.lane, self.trial_index)

    def with_trial(self, trial_index: int) -> "SeedSpec":
        return SeedSpec(self.master_seed, trial_index, self.lane)


@dataclass(frozen=True)
class DensityProfile:
    """Site -> black-probability map; either homogeneous or a vertical gradient.

    Use the :meth:`homogeneous` / :meth:`gradient` constructors rather than
    instantiating directly.
    """

    kind: str  # "homogeneous" | "gradient"
    p: float | None = None
    N: int | None = None

    def __post_init__(self):
        if self.kind == "homogeneous":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError(f"homogeneous profile needs p in [0,1], got {self.p}")
            if self.N is not None:
                raise ValueError("homogeneous profile takes no N")
        elif self.kind == "gradient":
            if self.N is None or self.N < 1:
                raise ValueError(f"gradient profile needs integer N >= 1, got {self.N}")
            if self.p is not None:
                raise ValueError("gradient profile takes no p")
        else:
            raise ValueError(f"unknown profile kind {self.kind!r}")

    @staticmethod
    def homogeneous(p: float) -> "DensityProfile":
        return DensityProfile("homogeneous", p=float(p))

    @staticmethod
    def gradient(N: int) -> "DensityProfile":
        return DensityProfile("gradient", N=int(N))

    def row_probability(self, j):
        """Black probability of row j (scalar or array).

        Raises
        ------
        ValueError
            If a gradient profile is evaluated outside its strip [-N, N].
        """
        if self.kind == "homogeneous":
            return self.p if np.isscalar(j) else np.full(np.shape(j), self.p)
        if np.any(np.abs(j) > self.N):
            raise ValueError(f"row {j} outside gradient strip [-{self.N}, {self.N}]")
        return 0.5 - np.asarray(j, dtype=float) / (2.0 * self.N)

    def describe(self) -> str:
        if self.kind == "homogeneous":
            return f"homogeneous p={self.p!r}"
        return f"gradient N={self.N}"


def site_probability(profile: DensityProfile, site: Site) -> float:
    """Black probability of a single site; depends on the row only."""
    return float(profile.row_probability(site[1]))


@dataclass(frozen=True)
class Configuration:
    """One sampled coloring: a boolean black/white field over a region.

    ``black[row, col]`` indexes rows by j - j_min and columns by i - i_min
    (row-major by j then i).  True means black/occupied.  Immutable after
    creation; share freely across threads.
    """

    region: Region
    black: np.ndarray
    profile: DensityProfile
    seed: SeedSpec = field(default=SeedSpec(0))

    def __post_init__(self):
        if self.black.shape != self.region.shape:
            raise ValueError(
                f"color field shape {self.black.shape} != region shape {self.region.shape}")
        if self.black.dtype != np.bool_:
            raise ValueError("color field must be boolean")
        self.black.setflags(write=False)

    def is_black(self, site: Site) -> bool:
        return bool(self.black[self.region.index(site)])

    @property
    def black_fraction(self) -> float:
        return float(self.black.mean())

    def subfield(self, r: Region) -> np.ndarray:
        """View of the color field restricted to a sub-region."""
        if not self.region.contains_region(r):
            raise ValueError(f"{r} not contained in configuration region {self.region}")
        r0 = self.region
        return self.black[r.j_min - r0.j_min: r.j_max - r0.j_min + 1,
                          r.i_min - r0.i_min: r.i_max - r0.i_min + 1]


def sample_configuration(region: Region, profile: DensityProfile,
                         seed: SeedSpec) -> Configuration:
    """Draw an independent coloring of ``region`` under ``profile``.

    Each site is black with its row probability, independently.  The stream
    is consumed row-major by j then i: at p = 1/2 exactly, one raw bit per
    site; otherwise one uniform double per site, site black iff u < p(row).
    The choice is a pure function of the profile, so outputs are reproducible
    bit-for-bit from (region, profile, seed).
    """
    rng = seed.rng()
    if profile.kind == "homogeneous" and profile.p == 0.5:
        # Fast path: raw bits are ~100x cheaper than doubles at criticality,
        # where the bulk of all sampling happens.
        nbits = region.site_count
        raw = np.frombuffer(rng.bytes((nbits + 7) // 8), dtype=np.uint8)
        black = np.unpackbits(raw, count=nbits).astype(bool).reshape(region.shape)
    else:
        u = rng.random(region.shape)
        if profile.kind == "homogeneous":
            black = u < profile.p
        else:
            rows = profile.row_probability(
                np.arange(region.j_min, region.j_max + 1))
            black = u < rows[:, None]
    return Configuration(region, black, profile, seed)


# --- portable dump formats -------------------------------------------------
#
# Binary: magic, little-endian header (region bounds, profile, seed record),
# then the color field packed 8 sites/byte in array order.  ASCII: '#' header
# lines, then one 0/1 row per lattice row, top row (j_max) first.

_MAGIC = b"GPC1"
_KIND_CODE = {"homogeneous": 0, "gradient": 1}
_KIND_NAME = {v: k for k, v in _KIND_CODE.items()}


def dump_binary(c: Configuration) -> bytes:
    r = c.region
    out = bytearray(_MAGIC)
    out += struct.pack("<4q", r.i_min, r.i_max, r.j_min, r.j_max)
    kind = _KIND_CODE[c.profile.kind]
    p = c.profile.p if c.profile.p is not None else math.nan
    N = c.profile.N if c.profile.N is not None else 0
    out += struct.pack("<BdQ", kind, p, N)
    out += struct.pack("<QqB", c.seed.master_seed, c.seed.trial_index,
                       len(c.seed.lane))
    out += struct.pack(f"<{len(c.seed.lane)}q", *c.seed.lane)
    out += struct.pack("<q", r.site_count)
    out += np.packbits(c.black.reshape(-1)).tobytes()
    return bytes(out)


def load_binary(data: bytes) -> Configuration:
    if data[:4] != _MAGIC:
        raise ValueError("not a configuration dump (bad magic)")
    off = 4
    i_min, i_max, j_min, j_max = struct.unpack_from("<4q", data, off)
    off += 32
    kind, p, N = struct.unpack_from("<BdQ", data, off)
    off += struct.calcsize("<BdQ")
    master, trial, lane_len = struct.unpack_from("<QqB", data, off)
    off += struct.calcsize("<QqB")
    lane = struct.unpack_from(f"<{lane_len}q", data, off)
    off += 8 * lane_len
    (nbits,) = struct.unpack_from("<q", data, off)
    off += 8
    region = Region(i_min, i_max, j_min, j_max)
    if nbits != region.site_count:
        raise ValueError("bit count does not match region size")
    raw = np.frombuffer(data, dtype=np.uint8, offset=off,
                        count=(nbits + 7) // 8)
    black = np.unpackbits(raw, count=nbits).astype(bool).reshape(region.shape)
    if _KIND_NAME[kind] == "homogeneous":
        profile = DensityProfile.homogeneous(p)
    else:
        profile = DensityProfile.gradient(int(N))
    return Configuration(region, black, profile,
                         SeedSpec(master, trial, tuple(lane)))


def dump_ascii(c: Configuration) -> str:
    r = c.region
    lines = [
        f"# region {r.i_min} {r.i_max} {r.j_min} {r.j_max}",
        f"# profile {c.profile.describe()}",
        "# seed master={} trial={} lane={}".format(
            c.seed.master_seed, c.seed.trial_index,
            ",".join(map(str, c.seed.lane))),
    ]
    for row in c.black[::-1]:  # top row first, like a picture
        lines.append("".join("1" if b else "0" for b in row))
    return "\n".join(lines) + "\n"


def parse_ascii(text: str) -> Configuration:
    header: dict[str, str] = {}
    rows: list[str] = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, rest = line.lstrip("# ").partition(" ")
            header[key] = rest
        else:
            rows.append(line)
    i_min, i_max, j_min, j_max = map(int, header["region"].split())
    region = Region(i_min, i_max, j_min, j_max)
    kind, _, arg = header["profile"].partition(" ")
    if kind == "homogeneous":
        profile = DensityProfile.homogeneous(float(arg.removeprefix("p=")))
    else:
        profile = DensityProfile.gradient(int(arg.removeprefix("N=")))
    seed_fields = dict(tok.split("=", 1) for tok in header["seed"].split())
    lane = tuple(int(x) for x in seed_fields["lane"].split(",") if x)
    seed = SeedSpec(int(seed_fields["master"]), int(seed_fields["trial"]), lane)
    black = np.array([[ch == "1" for ch in row] for row in reversed(rows)],
                     dtype=bool)
    return Configuration(region, black, profile, seed)
