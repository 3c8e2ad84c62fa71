import math

import numpy as np
import pytest

from gradperc.lattice import (SQRT3_2, Annulus, Region, boundary_sites, embed,
                              neighbors)


def test_embed_basics():
    assert embed((0, 0)) == (0.0, 0.0)
    assert embed((3, 0)) == (3.0, 0.0)
    x, y = embed((0, 1))
    assert x == pytest.approx(0.5)
    assert y == pytest.approx(SQRT3_2)


def test_embed_injective_on_box():
    pts = {embed((i, j)) for i in range(-6, 7) for j in range(-6, 7)}
    assert len(pts) == 13 * 13


@pytest.mark.parametrize("s", [(0, 0), (3, -2), (-7, 5)])
def test_six_unit_neighbors_symmetric(s):
    ns = neighbors(s)
    assert len(ns) == len(set(ns)) == 6
    x, y = embed(s)
    for t in ns:
        u, v = embed(t)
        assert math.hypot(u - x, v - y) == pytest.approx(1.0)
        assert s in neighbors(t)


def test_region_shape_and_indexing():
    r = Region(-2, 3, 1, 4)
    assert r.width == 6 and r.height == 4
    assert r.site_count == 24
    assert r.shape == (4, 6)
    seen = {r.index(s) for s in r.sites()}
    assert len(seen) == 24
    assert r.index((-2, 1)) == (0, 0)
    assert r.index((3, 4)) == (3, 5)
    assert r.contains((0, 2)) and not r.contains((0, 0))


def test_region_validation():
    with pytest.raises(ValueError):
        Region(2, 1, 0, 0)
    with pytest.raises(ValueError):
        Region(0, 1, 5, 4)


def test_region_contains_region():
    big, small = Region.box(4), Region.box(2)
    assert big.contains_region(small)
    assert not small.contains_region(big)


def test_square_and_box():
    assert Region.square(5) == Region(0, 5, 0, 5)
    assert Region.box(3) == Region(-3, 3, -3, 3)


@pytest.mark.parametrize("side,coord,value", [
    ("left", 0, 0), ("right", 0, 3), ("bottom", 1, 0), ("top", 1, 3)])
def test_boundary_sites(side, coord, value):
    r = Region.square(3)
    sites = boundary_sites(r, side)
    assert len(sites) == 4
    assert all(s[coord] == value for s in sites)


def test_annulus_validation():
    with pytest.raises(ValueError):
        Annulus(3, 3)
    with pytest.raises(ValueError):
        Annulus(-1, 2)


@pytest.mark.parametrize("n1,n2", [(0, 1), (0, 4), (1, 3), (2, 5)])
def test_inner_ring_is_adjacent_circuit(n1, n2):
    a = Annulus(n1, n2)
    ring = a.inner_ring()
    assert len(ring) == 8 * (n1 + 1) - 2
    assert len(set(ring)) == len(ring)
    for s, t in zip(ring, ring[1:] + ring[:1]):
        assert t in neighbors(s)


@pytest.mark.parametrize("n1", [0, 1, 2])
def test_inner_ring_is_exactly_the_hole_adjacency(n1):
    # the ring must be precisely the sites adjacent to the removed box
    a = Annulus(n1, n1 + 2)
    hole = {(i, j) for i in range(-n1, n1 + 1) for j in range(-n1, n1 + 1)}
    adjacent = {t for s in hole for t in neighbors(s)} - hole
    assert set(a.inner_ring()) == adjacent


def test_site_mask_counts():
    for n1, n2 in [(0, 2), (1, 3), (2, 6)]:
        a = Annulus(n1, n2)
        mask = a.site_mask()
        assert mask.shape == a.box.shape
        assert mask.sum() == (2 * n2 + 1) ** 2 - (2 * n1 + 1) ** 2
        box = a.box
        for s in a.inner_ring():
            assert mask[box.index(s)]
        for s in a.outer_ring():
            assert mask[box.index(s)]


def test_outer_ring_is_frame():
    a = Annulus(1, 4)
    out = set(a.outer_ring())
    assert len(out) == 8 * 4
    assert all(max(abs(i), abs(j)) == 4 for i, j in out)


def test_masked_interior_is_hole():
    a = Annulus(2, 4)
    mask = a.site_mask()
    box = a.box
    for i in range(-2, 3):
        for j in range(-2, 3):
            assert not mask[box.index((i, j))]
