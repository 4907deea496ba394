"""RGB to HSV conversion and quantization into discrete color bins.

The quantizer reserves bin 0 for dark colors and bin 1 for the gray axis,
then splits the hue circle into L-2 equal sectors, so grayscale content
maps as cleanly as chromatic content.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class HsvColor:
    h: float  # degrees in [0, 360)
    s: float  # [0, 1]
    v: float  # [0, 1]


@dataclass(frozen=True)
class QuantizerConfig:
    levels: int = 12
    v_black: float = 0.2
    s_gray: float = 0.2

    def __post_init__(self):
        if self.levels < 3:
            raise ValueError(
                f"need at least 3 levels (2 achromatic + 1 hue), got {self.levels}"
            )


def rgb_to_hsv_array(rgb) -> np.ndarray:
    """Hexcone conversion of (..., 3) integer RGB to (..., 3) float HSV.

    h is in degrees [0, 360); s and v in [0, 1]. h is 0 whenever s is 0.
    """
    arr = np.asarray(rgb, dtype=np.float64)
    r, g, b = arr[..., 0], arr[..., 1], arr[..., 2]
    mx = arr.max(axis=-1)
    mn = arr.min(axis=-1)
    chroma_span = mx - mn

    v = mx / 255.0
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(mx > 0, chroma_span / np.where(mx > 0, mx, 1.0), 0.0)
        h = np.zeros_like(mx)
        nz = chroma_span > 0
        span = np.where(nz, chroma_span, 1.0)
        h = np.where(nz & (mx == r), ((g - b) / span) % 6.0, h)
        h = np.where(nz & (mx == g) & (mx != r), (b - r) / span + 2.0, h)
        h = np.where(nz & (mx == b) & (mx != r) & (mx != g), (r - g) / span + 4.0, h)
    h = (h * 60.0) % 360.0
    return np.stack([h, s, v], axis=-1)


def rgb_to_hsv(c) -> HsvColor:
    """Convert one RGB triple to HsvColor."""
    h, s, v = rgb_to_hsv_array(np.asarray(c, dtype=np.float64))
    return HsvColor(h=float(h), s=float(s), v=float(v))


def quantize_array(rgb, cfg: QuantizerConfig) -> np.ndarray:
    """Map (..., 3) RGB to integer color bins in [0, levels-1].

    Bin 0: dark (v below v_black). Bin 1: gray (s below s_gray).
    Bins 2..levels-1: equal hue sectors, half-open below, with the h -> 360
    limit clamped into the last sector.
    """
    hsv = rgb_to_hsv_array(rgb)
    h, s, v = hsv[..., 0], hsv[..., 1], hsv[..., 2]
    n_sectors = cfg.levels - 2
    sector = np.floor(h / (360.0 / n_sectors)).astype(np.int64)
    sector = np.minimum(sector, n_sectors - 1)
    out = 2 + sector
    out = np.where(s < cfg.s_gray, 1, out)
    out = np.where(v < cfg.v_black, 0, out)
    return out


def quantize(c, cfg: QuantizerConfig) -> int:
    """Color bin of a single RGB triple."""
    return int(quantize_array(np.asarray(c, dtype=np.float64), cfg))
