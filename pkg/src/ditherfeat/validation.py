"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch


def check_rgb_image(img, name: str = "img") -> np.ndarray:
    """Coerce `img` to a (H, W, 3) uint8 array, validating shape and range."""
    arr = np.asarray(img)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValueError(f"{name} must have shape (H, W, 3), got {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must be at least 1x1, got {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"{name} must hold integer channels, got {arr.dtype}")
        if arr.min() < 0 or arr.max() > 255:
            raise ValueError(f"{name} channels must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


def check_rgb_triple(c, name: str = "color") -> tuple[int, int, int]:
    """Validate a single (r, g, b) triple with channels in [0, 255]."""
    t = tuple(int(v) for v in c)
    if len(t) != 3:
        raise ValueError(f"{name} must have 3 channels, got {len(t)}")
    if any(v < 0 or v > 255 for v in t):
        raise ValueError(f"{name} channels must lie in [0, 255], got {t}")
    return t


def check_vector(x, dim: int | None = None, name: str = "x") -> np.ndarray:
    """Coerce to a 1-D float64 vector, optionally enforcing its length."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionMismatch(f"{name} must be 1-D, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimensionMismatch(f"{name} has length {v.shape[0]}, expected {dim}")
    return v


def check_matrix(X, dim: int | None = None, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 matrix of row vectors with a common width."""
    m = np.asarray(X, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {m.shape}")
    if dim is not None and m.shape[1] != dim:
        raise DimensionMismatch(f"{name} has width {m.shape[1]}, expected {dim}")
    return m
