"""Centroid distances and equal-area distance bins for point sets.

Working in squared distances keeps every operation square-root free: bins
spaced equally in squared distance cover annuli of equal area, and the
normalization by the largest squared distance makes assignments scale-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpread, EmptyPointSet, OutOfRange


@dataclass(frozen=True)
class Centroid:
    x: float
    y: float


@dataclass(frozen=True)
class DistanceBins:
    """k upper edges, equally spaced in squared distance, last edge == max."""

    upper_edges: np.ndarray

    @property
    def k(self) -> int:
        return self.upper_edges.shape[0]

    @property
    def max_sq(self) -> float:
        return float(self.upper_edges[-1])


def centroid(points) -> Centroid:
    """Arithmetic mean of a nonempty set of (x, y) coordinates."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.size == 0:
        raise EmptyPointSet("centroid of an empty point set is undefined")
    pts = pts.reshape(-1, 2)
    return Centroid(x=float(pts[:, 0].mean()), y=float(pts[:, 1].mean()))


def squared_distance(point, c: Centroid) -> float:
    x, y = point
    return (float(x) - c.x) ** 2 + (float(y) - c.y) ** 2


def make_bins(sq_distances, k: int) -> DistanceBins:
    """Equal-width bins in squared distance, upper edges n * max / k.

    The last edge is pinned to the exact maximum so that the maximal point
    always lands in bin k. All-zero distances raise DegenerateSpread; the
    caller maps every point to bin 1 in that case.
    """
    if k < 1:
        raise ValueError(f"bin count must be >= 1, got {k}")
    d = np.asarray(sq_distances, dtype=np.float64).ravel()
    if d.size == 0:
        raise EmptyPointSet("cannot bin an empty distance set")
    if np.any(d < 0):
        raise ValueError("squared distances must be nonnegative")
    m = float(d.max())
    if m == 0.0:
        raise DegenerateSpread("all points coincide with the centroid")
    edges = (np.arange(1, k + 1, dtype=np.float64) / k) * m
    edges[-1] = m
    return DistanceBins(upper_edges=edges)


def assign_bin(d_sq: float, bins: DistanceBins) -> int:
    """1-based index of the first bin whose upper edge reaches d_sq."""
    if d_sq < 0:
        raise ValueError(f"squared distance must be nonnegative, got {d_sq}")
    if d_sq > bins.max_sq:
        raise OutOfRange(f"{d_sq} exceeds the largest bin edge {bins.max_sq}")
    return int(np.searchsorted(bins.upper_edges, d_sq, side="left")) + 1


def assign_bins(sq_distances, bins: DistanceBins) -> np.ndarray:
    """Vectorized assign_bin over an array of squared distances."""
    d = np.asarray(sq_distances, dtype=np.float64)
    if np.any(d < 0):
        raise ValueError("squared distances must be nonnegative")
    if np.any(d > bins.max_sq):
        raise OutOfRange("a squared distance exceeds the largest bin edge")
    return np.searchsorted(bins.upper_edges, d, side="left").astype(np.int64) + 1
