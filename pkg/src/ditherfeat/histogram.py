"""The spatial-chromatic histogram descriptor.

A k x L matrix: rows are equal-area centroid-distance bins, columns are
quantized color bins. Every feature point deposits one count per pattern
element color into its distance row; the full matrix is then divided by its
maximum so the largest cell is exactly 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .chroma import QuantizerConfig, quantize_array
from .errors import DegenerateSpread, ShapeMismatch
from .geometry import assign_bins, make_bins


@dataclass(frozen=True)
class SpatialChromaticHistogram:
    values: np.ndarray  # (k, levels) float64 in [0, 1]
    feature_count: int

    @property
    def k(self) -> int:
        return self.values.shape[0]

    @property
    def levels(self) -> int:
        return self.values.shape[1]


def build_histogram(
    positions, element_colors, k: int, quantizer: QuantizerConfig
) -> SpatialChromaticHistogram:
    """Assemble the descriptor from raw point data.

    positions: (n, 2) real (x, y) coordinates of the feature points.
    element_colors: (n, 4, 3) RGB triples, four pattern elements per point.

    An empty point set yields the all-zero matrix; a set whose points all
    coincide with their centroid concentrates in distance bin 1.
    """
    if k < 1:
        raise ValueError(f"distance bin count must be >= 1, got {k}")
    pts = np.asarray(positions, dtype=np.float64).reshape(-1, 2)
    n = pts.shape[0]
    counts = np.zeros((k, quantizer.levels), dtype=np.float64)
    if n == 0:
        return SpatialChromaticHistogram(values=counts, feature_count=0)

    colors = np.asarray(element_colors, dtype=np.float64).reshape(n, 4, 3)
    center = pts.mean(axis=0)
    d_sq = ((pts - center) ** 2).sum(axis=1)
    try:
        bins = make_bins(d_sq, k)
        rows = assign_bins(d_sq, bins) - 1
    except DegenerateSpread:
        rows = np.zeros(n, dtype=np.int64)

    cols = quantize_array(colors, quantizer)  # (n, 4)
    np.add.at(counts, (np.repeat(rows, 4), cols.ravel()), 1.0)
    counts /= counts.max()
    return SpatialChromaticHistogram(values=counts, feature_count=n)


def build_descriptor(
    features, k: int, quantizer: QuantizerConfig
) -> SpatialChromaticHistogram:
    """Descriptor of a detected feature-point list (possibly empty)."""
    positions = np.array(
        [(f.grid_x, f.grid_y) for f in features], dtype=np.float64
    ).reshape(-1, 2)
    colors = np.array(
        [f.elements for f in features], dtype=np.float64
    ).reshape(-1, 4, 3)
    return build_histogram(positions, colors, k, quantizer)


def descriptor_distance(
    a: SpatialChromaticHistogram, b: SpatialChromaticHistogram
) -> float:
    """L1 distance between two descriptors of identical shape."""
    if a.values.shape != b.values.shape:
        raise ShapeMismatch(
            f"histogram shapes differ: {a.values.shape} vs {b.values.shape}"
        )
    return float(np.abs(a.values - b.values).sum())


def flatten(h: SpatialChromaticHistogram) -> np.ndarray:
    """Row-major (distance-bin-major) vector of length k * levels."""
    return h.values.reshape(-1).copy()


def to_json(h: SpatialChromaticHistogram) -> str:
    return json.dumps(
        {
            "k": h.k,
            "levels": h.levels,
            "feature_count": h.feature_count,
            "values": [[float(v) for v in row] for row in h.values],
        }
    )


def from_json(text: str) -> SpatialChromaticHistogram:
    d = json.loads(text)
    values = np.asarray(d["values"], dtype=np.float64)
    if values.shape != (d["k"], d["levels"]):
        raise ShapeMismatch(
            f"values shape {values.shape} does not match (k={d['k']}, levels={d['levels']})"
        )
    return SpatialChromaticHistogram(
        values=values, feature_count=int(d["feature_count"])
    )


def to_csv(h: SpatialChromaticHistogram) -> str:
    """Row-major CSV with a header, one row per distance bin."""
    header = "bin," + ",".join(f"c{j}" for j in range(h.levels))
    lines = [header]
    for i, row in enumerate(h.values, start=1):
        lines.append(f"{i}," + ",".join(repr(float(v)) for v in row))
    return "\n".join(lines) + "\n"
