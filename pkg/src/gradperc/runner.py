"""Deterministic parallel execution of trial ensembles.

Reproducibility rule: the work is cut into fixed-size chunks of consecutive
trial indices, each trial draws its stream from (master_seed, *lane, trial),
and partial results are reduced in chunk order.  None of this depends on the
worker count, so any ``workers`` value produces bit-identical numbers; the
pool only changes wall-clock time.

The chunk functions must stay module-level (picklable) and return plain
Python values.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from gradperc import arms, cluster, front
from gradperc.fitstats import Estimate
from gradperc.lattice import Region
from gradperc.profiles import DensityProfile, SeedSpec, sample_configuration

__all__ = [
    "map_chunks", "grid_map",
    "crossing_probability", "duality_counts", "arm_probability",
    "front_ensemble", "FrontEnsemble",
]

#: trials per task; a constant so that chunk boundaries never move
TRIAL_CHUNK = 512
STRIP_CHUNK = 16


def _apply(task):
    fn, args = task
    return fn(*args)


def map_chunks(fn: Callable, trials: int, args: tuple, workers: int = 1,
               chunk: int = TRIAL_CHUNK) -> list:
    """Evaluate fn(*args, start, stop) over fixed chunks of [0, trials).

    Returns the partial results in chunk order, whatever the worker count.
    """
    tasks = [(fn, (*args, s, min(s + chunk, trials)))
             for s in range(0, trials, chunk)]
    if workers <= 1:
        return [_apply(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_apply, tasks))


def grid_map(fn: Callable, items: Sequence[tuple], workers: int = 1) -> list:
    """Evaluate fn(*item) for each item, in order; items run in parallel."""
    tasks = [(fn, item) for item in items]
    if workers <= 1:
        return [_apply(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_apply, tasks))


# --- chunk bodies ----------------------------------------------------------

def _crossing_chunk(region: Region, pr: DensityProfile, orientation: str,
                    color: str, master: int, lane: tuple, start: int,
                    stop: int) -> int:
    hits = 0
    for t in range(start, stop):
        c = sample_configuration(region, pr, SeedSpec(master, t, lane))
        hits += cluster.has_crossing(c, region, orientation, color)
    return hits


def _duality_chunk(n: int, master: int, lane: tuple, start: int,
                   stop: int) -> tuple[int, int, int]:
    """(horizontal-black hits, vertical-white hits, complementarity breaks)."""
    region = Region.square(n)
    pr = DensityProfile.homogeneous(0.5)
    hb = vw = broken = 0
    for t in range(start, stop):
        c = sample_configuration(region, pr, SeedSpec(master, t, lane))
        h = cluster.has_crossing(c, region, "horizontal", "black")
        v = cluster.has_crossing(c, region, "vertical", "white")
        hb += h
        vw += v
        broken += h == v  # exactly one of the two must occur on a rhombus
    return hb, vw, broken


def _arm_chunk(j: int, n1: int, n2: int, pr: DensityProfile, master: int,
               lane: tuple, start: int, stop: int) -> int:
    from gradperc.lattice import Annulus
    a = Annulus(n1, n2)
    hits = 0
    for t in range(start, stop):
        c = sample_configuration(a.box, pr, SeedSpec(master, t, lane))
        hits += arms.detect_alternating_arms(c, a, j)
    return hits


def _front_chunk(spec: front.StripSpec, windows: tuple[Region, ...],
                 master: int, lane: tuple, start: int,
                 stop: int) -> list[tuple]:
    rows = []
    for t in range(start, stop):
        c = front.sample_strip(spec, SeedSpec(master, t, lane))
        path = front.extract_front(c)
        row: list = [int(front.verify_front(path, c)), path.edge_count]
        for w in windows:
            st = front.front_statistics(path, c, w)
            row += [st.max_abs_y, st.edge_count_in_window, st.max_backtrack,
                    st.boundary_black, st.boundary_white, int(st.degenerate)]
        rows.append(tuple(row))
    return rows


# --- parallel front ends ---------------------------------------------------

def crossing_probability(region: Region, pr: DensityProfile, orientation: str,
                         color: str, trials: int, master_seed: int,
                         lane: tuple = (), workers: int = 1) -> Estimate:
    parts = map_chunks(_crossing_chunk, trials,
                       (region, pr, orientation, color, master_seed, lane),
                       workers)
    return Estimate.bernoulli(sum(parts), trials)


def duality_counts(n: int, trials: int, master_seed: int, lane: tuple = (),
                   workers: int = 1) -> tuple[Estimate, Estimate, int]:
    parts = map_chunks(_duality_chunk, trials, (n, master_seed, lane), workers)
    hb = sum(p[0] for p in parts)
    vw = sum(p[1] for p in parts)
    broken = sum(p[2] for p in parts)
    return Estimate.bernoulli(hb, trials), Estimate.bernoulli(vw, trials), broken


def arm_probability(j: int, n1: int, n2: int, pr: DensityProfile, trials: int,
                    master_seed: int, lane: tuple = (),
                    workers: int = 1) -> Estimate:
    parts = map_chunks(_arm_chunk, trials, (j, n1, n2, pr, master_seed, lane),
                       workers)
    return Estimate.bernoulli(sum(parts), trials)


@dataclass(frozen=True)
class FrontEnsemble:
    """Column-wise per-strip results of a front ensemble.

    ``verify`` and ``edge_count_total`` have one entry per strip; the
    per-window statistics are keyed by the window's position in the request.
    """

    spec: front.StripSpec
    windows: tuple[Region, ...]
    verify: np.ndarray
    edge_count_total: np.ndarray
    max_abs_y: np.ndarray        # (strips, windows)
    edge_count: np.ndarray       # (strips, windows)
    max_backtrack: np.ndarray    # (strips, windows)
    boundary_black: np.ndarray   # (strips, windows)
    boundary_white: np.ndarray   # (strips, windows)
    degenerate: np.ndarray       # (strips, windows)

    @property
    def boundary_excess(self) -> np.ndarray:
        return self.boundary_black - self.boundary_white


def front_ensemble(spec: front.StripSpec, windows: Sequence[Region],
                   strips: int, master_seed: int, lane: tuple = (),
                   workers: int = 1) -> FrontEnsemble:
    windows = tuple(windows)
    parts = map_chunks(_front_chunk, strips, (spec, windows, master_seed, lane),
                       workers, chunk=STRIP_CHUNK)
    rows = [r for part in parts for r in part]
    arr = np.array(rows, dtype=float)
    k = len(windows)
    per_win = arr[:, 2:].reshape(len(rows), k, 6)
    return FrontEnsemble(
        spec=spec, windows=windows,
        verify=arr[:, 0].astype(bool),
        edge_count_total=arr[:, 1].astype(np.int64),
        max_abs_y=per_win[:, :, 0],
        edge_count=per_win[:, :, 1].astype(np.int64),
        max_backtrack=per_win[:, :, 2],
        boundary_black=per_win[:, :, 3].astype(np.int64),
        boundary_white=per_win[:, :, 4].astype(np.int64),
        degenerate=per_win[:, :, 5].astype(bool),
    )
