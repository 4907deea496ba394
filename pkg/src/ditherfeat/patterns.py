"""Salient dither pattern detection.

A dither pattern is a 2x2 arrangement of block-average colors. A pattern is
salient when its summed absolute RGB distance to each of its eight
surrounding, non-overlapping patterns exceeds a threshold; surviving
candidates are thinned by non-maximal suppression on their total strength.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import maximum_filter

from .errors import DomainError, ImageTooSmall, OutOfBounds
from .validation import check_rgb_image

DEFAULT_BLOCK_SIZE = 2

# Frozen output of calibrate_saliency_threshold() at its defaults (seed 0):
# noisy step edges peak at a per-pattern minimum neighbor distance of 85,
# the weakest calibrated corner scores 288, and 186 is the band midpoint.
# Re-derive via the calibrate-threshold CLI subcommand to audit.
DEFAULT_THRESHOLD = 186.0

DEFAULT_NMS_WINDOW = 5

# Offsets to the 8 neighbor patterns: a 3x3 tiling of disjoint 2x2-block
# patterns, so each neighbor sits exactly one pattern-size away.
_NEIGHBOR_OFFSETS = tuple(
    (dx, dy) for dy in (-2, 0, 2) for dx in (-2, 0, 2) if (dx, dy) != (0, 0)
)


def cdpc_pattern_count(z: int) -> int:
    """Count distinct order-free four-element patterns over ``z`` colors.

    Element order inside the 2x2 grid is discarded (codes are kept sorted),
    so the count is over multisets of size 4:
    C(z,4) + C(z,2) + sum_{r=0..2} C(z,r) * (z - r).
    """
    if z < 4:
        raise DomainError(f"pattern count requires z >= 4, got {z}")
    return (
        math.comb(z, 4)
        + math.comb(z, 2)
        + sum(math.comb(z, r) * (z - r) for r in range(3))
    )


@dataclass(frozen=True)
class BlockImage:
    """Block-averaged image: each cell is the mean color of an l x l tile."""

    blocks: np.ndarray  # (bheight, bwidth, 3) uint8
    block_size: int

    @property
    def bwidth(self) -> int:
        return self.blocks.shape[1]

    @property
    def bheight(self) -> int:
        return self.blocks.shape[0]


@dataclass(frozen=True)
class DitherPattern:
    """Four block colors forming a 2x2 grid at (grid_x, grid_y)."""

    grid_x: int
    grid_y: int
    elements: tuple  # 4 RGB triples, row-major

    def __post_init__(self):
        if len(self.elements) != 4:
            raise ValueError("a dither pattern has exactly 4 elements")


@dataclass(frozen=True)
class FeaturePoint:
    """A salient pattern that survived thresholding and suppression."""

    grid_x: int
    grid_y: int
    strength: float
    elements: tuple  # 4 RGB triples, row-major


@dataclass(frozen=True)
class DetectorConfig:
    block_size: int = DEFAULT_BLOCK_SIZE
    threshold: float = DEFAULT_THRESHOLD
    nms_window: int = DEFAULT_NMS_WINDOW

    def __post_init__(self):
        if self.block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {self.block_size}")
        if self.threshold < 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")
        if self.nms_window < 1 or self.nms_window % 2 == 0:
            raise ValueError(
                f"nms_window must be an odd integer >= 1, got {self.nms_window}"
            )


def block_average(img, block_size: int = DEFAULT_BLOCK_SIZE) -> BlockImage:
    """Average each l x l pixel tile into one block color.

    Channel means are rounded half-up; trailing pixel rows/columns that do
    not fill a block are discarded. Raises ImageTooSmall unless at least one
    2x2-block pattern fits.
    """
    arr = check_rgb_image(img)
    l = int(block_size)
    if l < 1:
        raise ValueError(f"block_size must be >= 1, got {block_size}")
    h, w = arr.shape[:2]
    if w < 2 * l or h < 2 * l:
        raise ImageTooSmall(
            f"{w}x{h} image cannot host a 2x2 pattern of {l}px blocks"
        )
    bh, bw = h // l, w // l
    sums = (
        arr[: bh * l, : bw * l]
        .astype(np.int64)
        .reshape(bh, l, bw, l, 3)
        .sum(axis=(1, 3))
    )
    # floor(mean + 1/2) without touching floats
    blocks = ((2 * sums + l * l) // (2 * l * l)).astype(np.uint8)
    return BlockImage(blocks=blocks, block_size=l)


def pattern_at(blocks: BlockImage, gx: int, gy: int) -> DitherPattern:
    """The 2x2 pattern whose top-left block is (gx, gy)."""
    b = blocks.blocks
    if not (0 <= gx <= blocks.bwidth - 2 and 0 <= gy <= blocks.bheight - 2):
        raise OutOfBounds(
            f"pattern ({gx}, {gy}) outside grid "
            f"{blocks.bwidth - 1}x{blocks.bheight - 1}"
        )
    elements = tuple(
        tuple(int(v) for v in b[gy + ey, gx + ex])
        for ey in (0, 1)
        for ex in (0, 1)
    )
    return DitherPattern(grid_x=gx, grid_y=gy, elements=elements)


def pattern_distance(a: DitherPattern, b: DitherPattern) -> int:
    """Summed absolute channel difference over the four element pairs."""
    total = 0
    for ea, eb in zip(a.elements, b.elements):
        for ca, cb in zip(ea, eb):
            total += abs(int(ca) - int(cb))
    return total


def _pattern_tensor(blocks: np.ndarray) -> np.ndarray:
    """Stack the 4 element colors of every pattern: (GH, GW, 12) int64."""
    b = blocks.astype(np.int64)
    return np.concatenate(
        [b[:-1, :-1], b[:-1, 1:], b[1:, :-1], b[1:, 1:]], axis=2
    )


def _neighbor_distances(pattern_colors: np.ndarray) -> np.ndarray:
    """Distances to the 8 disjoint neighbor patterns.

    Input is the (GH, GW, 12) pattern tensor; output is (8, GH-4, GW-4)
    covering the grid positions that own a complete neighborhood.
    """
    gh, gw = pattern_colors.shape[:2]
    if gh < 5 or gw < 5:
        raise ImageTooSmall(
            "no pattern position owns a complete 8-neighborhood"
        )
    center = pattern_colors[2 : gh - 2, 2 : gw - 2]
    out = np.empty((8, gh - 4, gw - 4), dtype=np.int64)
    for p, (dx, dy) in enumerate(_NEIGHBOR_OFFSETS):
        neighbor = pattern_colors[2 + dy : gh - 2 + dy, 2 + dx : gw - 2 + dx]
        out[p] = np.abs(center - neighbor).sum(axis=2)
    return out


def detect_features(img, cfg: DetectorConfig = DetectorConfig()) -> list[FeaturePoint]:
    """Run the full salient-pattern detector on an RGB image.

    Pipeline: block averaging, per-pattern distances to the 8 surrounding
    disjoint patterns, all-neighbors thresholding, strength accumulation,
    then windowed non-maximal suppression over the pattern grid (ties go to
    the smaller (gy, gx)). The result is sorted by (gy, gx).
    """
    bi = block_average(img, cfg.block_size)
    colors = _pattern_tensor(bi.blocks)
    gh, gw = colors.shape[:2]
    dists = _neighbor_distances(colors)

    candidate = (dists > cfg.threshold).all(axis=0)
    strength = dists.sum(axis=0)

    # Composite key so one maximum_filter pass resolves both the strength
    # comparison and the lexicographic tie-break.
    npos = gh * gw
    key = np.full((gh, gw), -1, dtype=np.int64)
    inner = np.zeros((gh, gw), dtype=bool)
    inner[2 : gh - 2, 2 : gw - 2] = candidate
    gy_idx, gx_idx = np.nonzero(inner)
    lin = gy_idx * gw + gx_idx
    key[gy_idx, gx_idx] = (
        strength[gy_idx - 2, gx_idx - 2] * npos + (npos - 1 - lin)
    )
    filt = maximum_filter(key, size=cfg.nms_window, mode="constant", cval=-1)
    keep = (key >= 0) & (key == filt)

    features = []
    for gy, gx in np.argwhere(keep):
        elements = tuple(
            tuple(int(v) for v in colors[gy, gx, 3 * i : 3 * i + 3])
            for i in range(4)
        )
        features.append(
            FeaturePoint(
                grid_x=int(gx),
                grid_y=int(gy),
                strength=float(strength[gy - 2, gx - 2]),
                elements=elements,
            )
        )
    return features


def features_to_jsonl(features) -> str:
    """Serialize feature points, one JSON object per line."""
    lines = []
    for f in features:
        lines.append(
            json.dumps(
                {
                    "gx": f.grid_x,
                    "gy": f.grid_y,
                    "strength": f.strength,
                    "elements": [list(e) for e in f.elements],
                }
            )
        )
    return "\n".join(lines) + ("\n" if lines else "")


def features_from_jsonl(text: str) -> list[FeaturePoint]:
    """Inverse of features_to_jsonl."""
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        out.append(
            FeaturePoint(
                grid_x=int(d["gx"]),
                grid_y=int(d["gy"]),
                strength=float(d["strength"]),
                elements=tuple(tuple(int(v) for v in e) for e in d["elements"]),
            )
        )
    return out


# ---------------------------------------------------------------------------
# Threshold calibration


def _min_neighbor_distance(img, block_size: int) -> int:
    """Largest per-pattern minimum neighbor distance in an image.

    A threshold below this value lets at least one pattern pass the
    all-neighbors test; a threshold at or above it rejects every pattern.
    """
    bi = block_average(img, block_size)
    dists = _neighbor_distances(_pattern_tensor(bi.blocks))
    return int(dists.min(axis=0).max())


def _edge_card(size: int, lo: int, hi: int, vertical: bool) -> np.ndarray:
    img = np.full((size, size, 3), lo, dtype=np.uint8)
    if vertical:
        img[:, size // 2 :] = hi
    else:
        img[size // 2 :, :] = hi
    return img


def _corner_card(size: int, lo: int, hi: int) -> np.ndarray:
    img = np.full((size, size, 3), lo, dtype=np.uint8)
    img[size // 2 :, size // 2 :] = hi
    return img


def calibrate_saliency_threshold(
    contrasts=(96, 160, 223),
    noise_sigmas=(0.0, 4.0, 8.0),
    block_size: int = DEFAULT_BLOCK_SIZE,
    trials_per_case: int = 8,
    size: int = 64,
    seed: int = 0,
):
    """Reconstruct a threshold that rejects step edges but keeps corners.

    Scans synthetic test cards: straight step edges (optionally noisy) must
    produce zero candidates, while clean axis-aligned corners must keep at
    least one. Returns (edge_ceiling, corner_floor, recommended) where
    recommended is the rounded midpoint of the feasible band.
    """
    rng = np.random.default_rng(seed)
    base = 32
    edge_ceiling = 0
    corner_floor = None
    for delta in contrasts:
        lo, hi = base, min(255, base + delta)
        for vertical in (True, False):
            clean = _edge_card(size, lo, hi, vertical)
            for sigma in noise_sigmas:
                trials = 1 if sigma == 0 else trials_per_case
                for _ in range(trials):
                    card = clean
                    if sigma > 0:
                        noise = rng.normal(0.0, sigma, clean.shape)
                        card = np.clip(
                            clean.astype(np.float64) + noise, 0, 255
                        ).astype(np.uint8)
                    edge_ceiling = max(
                        edge_ceiling, _min_neighbor_distance(card, block_size)
                    )
        score = _min_neighbor_distance(_corner_card(size, lo, hi), block_size)
        corner_floor = score if corner_floor is None else min(corner_floor, score)
    recommended = int(round((edge_ceiling + corner_floor) / 2))
    return edge_ceiling, corner_floor, recommended
