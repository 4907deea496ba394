"""Synthetic desk-scale image corpora and dataset directory ingestion.

The generator draws bright shapes on a black field, grouped into categories
that share a color palette; individual images vary in layout and in which
palette colors they use. Black backgrounds match the default rotation fill,
so experiment stimuli gain no spurious boundary content.

Directory layout follows the numeric id convention: image ``217.ppm``
belongs to category ``217 // 100 == 2``.
"""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InsufficientData
from .image import load_image, save_image

_IMAGE_SUFFIXES = (".ppm", ".png")


@dataclass(frozen=True)
class Dataset:
    entries: tuple  # ((path, category), ...) sorted by numeric id

    @property
    def categories(self) -> tuple:
        return tuple(sorted({c for _, c in self.entries}))

    def load_images(self):
        """Materialize [(image, category), ...] in entry order."""
        return [(load_image(p), c) for p, c in self.entries]


def category_palette(seed: int, n_colors: int = 6) -> np.ndarray:
    """Bright, saturated palette with evenly spread hues for one category."""
    rng = np.random.default_rng(seed)
    base = rng.uniform(0.0, 1.0)
    hues = (base + np.arange(n_colors) / n_colors + rng.uniform(-0.04, 0.04, n_colors)) % 1.0
    colors = []
    for h in hues:
        s = rng.uniform(0.8, 1.0)
        v = rng.uniform(0.75, 1.0)
        r, g, b = colorsys.hsv_to_rgb(float(h), float(s), float(v))
        colors.append((round(r * 255), round(g * 255), round(b * 255)))
    return np.array(colors, dtype=np.uint8)


def synthesize_image(
    rng: np.random.Generator,
    palette: np.ndarray,
    size: int = 96,
    n_shapes=(5, 9),
    shape_px=(12, 32),
) -> np.ndarray:
    """One random scene: filled rectangles and disks on a black field."""
    img = np.zeros((size, size, 3), dtype=np.uint8)
    n_colors = int(rng.integers(3, min(5, len(palette)) + 1))
    subset = palette[rng.choice(len(palette), size=n_colors, replace=False)]
    count = int(rng.integers(n_shapes[0], n_shapes[1] + 1))
    margin = shape_px[1] // 2 + 2
    yy, xx = np.mgrid[0:size, 0:size]
    for _ in range(count):
        color = subset[int(rng.integers(len(subset)))]
        cx = int(rng.integers(margin, size - margin))
        cy = int(rng.integers(margin, size - margin))
        extent = int(rng.integers(shape_px[0], shape_px[1] + 1))
        if rng.integers(2) == 0:
            half_w = max(3, extent // 2)
            half_h = max(3, int(rng.integers(shape_px[0], shape_px[1] + 1)) // 2)
            img[cy - half_h : cy + half_h, cx - half_w : cx + half_w] = color
        else:
            radius = max(4, extent // 2)
            mask = (xx - cx) ** 2 + (yy - cy) ** 2 <= radius**2
            img[mask] = color
    return img


def generate_category(
    seed: int,
    count: int,
    size: int = 96,
    n_shapes=(5, 9),
    shape_px=(12, 32),
) -> list:
    """Deterministic list of images sharing one category palette."""
    palette = category_palette(seed)
    rng = np.random.default_rng((seed, 0xD17))
    return [
        synthesize_image(rng, palette, size=size, n_shapes=n_shapes, shape_px=shape_px)
        for _ in range(count)
    ]


def write_corpus(
    root,
    categories: int = 2,
    per_category: int = 100,
    size: int = 96,
    seed: int = 0,
) -> Dataset:
    """Write a synthetic corpus in the numeric-id directory layout."""
    if per_category > 100:
        raise ValueError("per_category is capped at 100 by the id convention")
    rootp = Path(root)
    rootp.mkdir(parents=True, exist_ok=True)
    entries = []
    for cat in range(categories):
        for i, img in enumerate(
            generate_category(seed + cat, per_category, size=size)
        ):
            path = rootp / f"{cat * 100 + i}.ppm"
            save_image(img, path)
            entries.append((path, cat))
    return Dataset(entries=tuple(entries))


def load_corel_layout(root) -> Dataset:
    """Scan a directory of numerically named images into a Dataset."""
    rootp = Path(root)
    if not rootp.is_dir():
        raise InsufficientData(f"{rootp} is not a directory")
    found = []
    for p in rootp.iterdir():
        if p.suffix.lower() not in _IMAGE_SUFFIXES:
            continue
        try:
            img_id = int(p.stem)
        except ValueError:
            continue
        found.append((img_id, p))
    if not found:
        raise InsufficientData(f"no numerically named images under {rootp}")
    found.sort()
    return Dataset(entries=tuple((p, img_id // 100) for img_id, p in found))
