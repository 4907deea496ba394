import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditherfeat import (
    DegenerateSpread,
    EmptyPointSet,
    OutOfRange,
    assign_bin,
    centroid,
    make_bins,
    squared_distance,
)
from ditherfeat.geometry import assign_bins


class TestCentroid:
    def test_symmetric_square(self):
        c = centroid([(0, 0), (2, 0), (0, 2), (2, 2)])
        assert (c.x, c.y) == (1, 1)

    def test_single_point(self):
        c = centroid([(7, 3)])
        assert (c.x, c.y) == (7, 3)

    def test_three_points(self):
        c = centroid([(1, 2), (3, 4), (5, 6)])
        assert (c.x, c.y) == (3, 4)

    def test_empty_raises(self):
        with pytest.raises(EmptyPointSet):
            centroid([])


class TestSquaredDistance:
    def test_three_four_five(self):
        assert squared_distance((3, 4), centroid([(0, 0)])) == 25

    def test_point_at_centroid(self):
        c = centroid([(1, 4)])
        assert squared_distance((1, 4), c) == 0

    def test_vertical(self):
        assert squared_distance((1, 1), centroid([(1, 4)])) == 9


class TestMakeBins:
    def test_edges_are_quarters_of_max(self):
        bins = make_bins([100.0, 10.0, 50.0], 4)
        assert np.allclose(bins.upper_edges, [25, 50, 75, 100])
        assert bins.max_sq == 100.0

    def test_single_bin(self):
        bins = make_bins([3.0, 7.0], 1)
        assert list(bins.upper_edges) == [7.0]

    def test_all_zero_raises(self):
        with pytest.raises(DegenerateSpread):
            make_bins([0.0, 0.0], 4)

    def test_last_edge_is_exact_max(self):
        # the max must land in bin k even when max/k is not representable
        d = [0.1, 0.037, 0.0999999]
        for k in (3, 7, 10):
            bins = make_bins(d, k)
            assert bins.max_sq == 0.1
            assert assign_bin(0.1, bins) == k


class TestAssignBin:
    def setup_method(self):
        self.bins = make_bins([100.0], 4)

    def test_interior(self):
        assert assign_bin(30.0, self.bins) == 2

    def test_upper_edge_inclusive(self):
        assert assign_bin(25.0, self.bins) == 1

    def test_max_goes_to_last(self):
        assert assign_bin(100.0, self.bins) == 4

    def test_zero_goes_to_first(self):
        assert assign_bin(0.0, self.bins) == 1

    def test_beyond_max_raises(self):
        with pytest.raises(OutOfRange):
            assign_bin(100.0001, self.bins)

    def test_vectorized_matches_scalar(self):
        d = np.linspace(0, 100, 33)
        expect = [assign_bin(float(v), self.bins) for v in d]
        assert list(assign_bins(d, self.bins)) == expect


@st.composite
def point_sets(draw, min_size=2, max_size=40):
    n = draw(st.integers(min_size, max_size))
    coords = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
    pts = [(draw(coords), draw(coords)) for _ in range(n)]
    return pts


@given(point_sets(), st.integers(1, 12))
@settings(max_examples=150, deadline=None)
def test_equal_width_edges(pts, k):
    c = centroid(pts)
    d = [squared_distance(p, c) for p in pts]
    if max(d) == 0:
        return
    bins = make_bins(d, k)
    widths = np.diff(np.concatenate([[0.0], bins.upper_edges]))
    assert np.allclose(widths, max(d) / k, rtol=1e-9, atol=0)


@given(point_sets(), st.integers(1, 10), st.floats(0, 2 * math.pi))
@settings(max_examples=150, deadline=None)
def test_rigid_rotation_preserves_assignments(pts, k, angle):
    c = centroid(pts)
    d = [squared_distance(p, c) for p in pts]
    if max(d) == 0:
        return
    bins = make_bins(d, k)
    original = [assign_bin(v, bins) for v in d]

    ca, sa = math.cos(angle), math.sin(angle)
    rotated = [(x * ca - y * sa, x * sa + y * ca) for x, y in pts]
    cr = centroid(rotated)
    dr = np.array([squared_distance(p, cr) for p in rotated])
    assert np.allclose(dr, d, rtol=1e-9, atol=1e-9 * max(max(d), 1.0))
    bins_r = make_bins(dr, k)
    # tolerate points that sit numerically on a bin edge
    edge_gap = np.min(np.abs(dr[:, None] - bins_r.upper_edges[None, :-1]), axis=1)
    stable = edge_gap > 1e-6 * bins_r.max_sq
    rotated_assign = np.array([assign_bin(float(v), bins_r) for v in dr])
    assert np.array_equal(rotated_assign[stable], np.array(original)[stable])


@pytest.mark.parametrize("s", [0.5, 2.0, 3.0])
def test_uniform_scaling_preserves_assignments(s):
    rng = np.random.default_rng(5)
    pts = rng.uniform(-50, 50, (30, 2))
    c = centroid(pts)
    d = [squared_distance(p, c) for p in pts]
    bins = make_bins(d, 6)
    scaled = pts * s
    cs = centroid(scaled)
    ds = [squared_distance(p, cs) for p in scaled]
    bins_s = make_bins(ds, 6)
    assert [assign_bin(v, bins) for v in d] == [assign_bin(v, bins_s) for v in ds]


def test_translation_changes_nothing():
    rng = np.random.default_rng(6)
    pts = rng.uniform(-10, 10, (25, 2))
    c = centroid(pts)
    d = [squared_distance(p, c) for p in pts]
    moved = pts + np.array([123.5, -77.25])
    cm = centroid(moved)
    dm = [squared_distance(p, cm) for p in moved]
    assert np.allclose(dm, d, rtol=0, atol=1e-9)


def test_equal_area_annuli():
    # edges equally spaced in squared distance partition the disc into
    # annuli of equal area: pi * (e[n] - e[n-1]) is constant
    bins = make_bins([64.0, 9.0, 33.0], 8)
    areas = math.pi * np.diff(np.concatenate([[0.0], bins.upper_edges]))
    assert np.allclose(areas, areas[0])
