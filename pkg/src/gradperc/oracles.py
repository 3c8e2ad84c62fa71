"""Brute-force reference implementations for validating the fast detectors.

Everything here is deliberately independent of the production code paths: no
scipy labeling, no cyclic color-change criterion — just breadth-first path
search on explicit site sets, and, for disjoint arms, an exact two-vertex-
disjoint-paths test via unit-capacity max flow with node splitting (Menger).
Slow by design; meant for exhaustive sweeps of small regions and annuli and
for spot checks on random configurations.
"""

from __future__ import annotations

from collections import deque
from itertools import combinations

from gradperc.lattice import NEIGHBOR_OFFSETS, Annulus, Region, Site, \
    boundary_sites
from gradperc.profiles import Configuration

__all__ = ["oracle_has_crossing", "oracle_cluster_map", "oracle_cluster_count",
           "oracle_alternating_arms"]


def _reachable(allowed: set[Site], starts) -> set[Site]:
    seen = {s for s in starts if s in allowed}
    queue = deque(seen)
    while queue:
        i, j = queue.popleft()
        for di, dj in NEIGHBOR_OFFSETS:
            nxt = (i + di, j + dj)
            if nxt in allowed and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def _color_sites(c: Configuration, r: Region, color: str) -> set[Site]:
    want = color == "black"
    return {s for s in r.sites() if c.is_black(s) == want}


def oracle_has_crossing(c: Configuration, r: Region, orientation: str,
                        color: str) -> bool:
    sites = _color_sites(c, r, color)
    if orientation == "horizontal":
        a, b = boundary_sites(r, "left"), boundary_sites(r, "right")
    else:
        a, b = boundary_sites(r, "bottom"), boundary_sites(r, "top")
    reach = _reachable(sites, a)
    return any(s in reach for s in b)


def oracle_cluster_map(c: Configuration, r: Region,
                       color: str) -> dict[Site, int]:
    """site -> cluster id, ids numbered by first site in row-major order."""
    sites = _color_sites(c, r, color)
    out: dict[Site, int] = {}
    next_id = 1
    for s in r.sites():
        if s in sites and s not in out:
            for t in _reachable(sites, [s]):
                out[t] = next_id
            next_id += 1
    return out


def oracle_cluster_count(c: Configuration, r: Region, color: str) -> int:
    m = oracle_cluster_map(c, r, color)
    return max(m.values(), default=0)


def _two_disjoint_paths(allowed: set[Site], s1: Site, s2: Site,
                        targets: set[Site]) -> bool:
    """Two vertex-disjoint paths inside ``allowed`` from s1 and s2 to targets.

    Unit-capacity max flow on the node-split graph: each site becomes
    in -> out with capacity 1, so flow 2 from a super-source feeding s1 and
    s2 is exactly a pair of vertex-disjoint paths (Menger's theorem).
    """
    if s1 not in allowed or s2 not in allowed or s1 == s2:
        return False
    cap: dict[tuple, dict[tuple, int]] = {}

    def add(u, v, c=1):
        cap.setdefault(u, {})[v] = cap.get(u, {}).get(v, 0) + c
        cap.setdefault(v, {}).setdefault(u, 0)

    for v in allowed:
        add(("i", v), ("o", v))
        i, j = v
        for di, dj in NEIGHBOR_OFFSETS:
            u = (i + di, j + dj)
            if u in allowed:
                add(("o", v), ("i", u))
    add("S", ("i", s1))
    add("S", ("i", s2))
    for t in targets & allowed:
        add(("o", t), "T", 2)

    flow = 0
    for _ in range(2):  # need value 2; each augmentation adds exactly 1
        parent = {"S": None}
        queue = deque(["S"])
        while queue and "T" not in parent:
            u = queue.popleft()
            for v, c in cap.get(u, {}).items():
                if c > 0 and v not in parent:
                    parent[v] = u
                    queue.append(v)
        if "T" not in parent:
            break
        v = "T"
        while parent[v] is not None:
            u = parent[v]
            cap[u][v] -= 1
            cap[v][u] += 1
            v = u
        flow += 1
    return flow >= 2


def _interleaved(p: tuple[int, int], q: tuple[int, int]) -> bool:
    # do chords p and q of the ring cycle cross?
    (a, b), (c, d) = sorted(p), sorted(q)
    return (a < c < b) != (a < d < b)


def oracle_alternating_arms(c: Configuration, a: Annulus, j: int,
                            prune: bool = True) -> bool:
    """Exact j-arm detection by explicit disjoint-path search.

    j=2: a black and a white path from the inner ring to the outer frame
    (different colors cannot collide, so plain reachability suffices).
    j=4: some interleaved pair of black ring sites with two vertex-disjoint
    black paths to the outer frame, and likewise for white, the two chords
    crossing.  ``prune=False`` disables the necessary-condition shortcut
    (used to defend the shortcut itself on small sweeps).
    """
    if j not in (2, 4):
        raise ValueError(f"arm count must be 2 or 4, got {j}")
    box = a.box
    want_mask = a.site_mask()
    annulus_sites = {s for s in box.sites() if want_mask[box.index(s)]}
    black = {s for s in annulus_sites if c.is_black(s)}
    white = annulus_sites - black
    ring = a.inner_ring()
    outer = set(a.outer_ring())

    reach_black = _reachable(black, outer)
    reach_white = _reachable(white, outer)
    ring_black = [s for s in ring if s in reach_black]
    ring_white = [s for s in ring if s in reach_white]
    if not ring_black or not ring_white:
        return False
    if j == 2:
        return True

    if prune:
        # necessary condition: ring sites whose cluster reaches the outer
        # frame must change color >= 4 times around the ring
        seq = [1 if s in reach_black else -1
               for s in ring if s in reach_black or s in reach_white]
        changes = sum(seq[k] != seq[k - 1] for k in range(len(seq)))
        if changes < 4:
            return False

    pos = {s: k for k, s in enumerate(ring)}
    black_pairs = [pq for pq in combinations(ring_black, 2)
                   if _two_disjoint_paths(black, *pq, outer)]
    if not black_pairs:
        return False
    white_pairs = [pq for pq in combinations(ring_white, 2)
                   if _two_disjoint_paths(white, *pq, outer)]
    for pb in black_pairs:
        for pw in white_pairs:
            if _interleaved((pos[pb[0]], pos[pb[1]]),
                            (pos[pw[0]], pos[pw[1]])):
                return True
    return False
