"""Image loading, saving, and the geometric transforms used by the experiments.

Images are plain NumPy arrays of shape (H, W, 3), dtype uint8, RGB order.
PPM P6 (maxval 255) is the interchange format and round-trips bit-exactly;
PNG is optional sugar via Pillow.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import DegenerateOutput, DomainError, FormatError
from .validation import check_rgb_image, check_rgb_triple

NEAREST = "nearest"
BILINEAR = "bilinear"

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _check_interp(interp: str) -> str:
    if interp not in (NEAREST, BILINEAR):
        raise ValueError(f"interp must be '{NEAREST}' or '{BILINEAR}', got {interp!r}")
    return interp


# ---------------------------------------------------------------------------
# File I/O


def _parse_ppm(data: bytes) -> np.ndarray:
    pos = 0

    def next_token() -> bytes:
        nonlocal pos
        while pos < len(data):
            c = data[pos : pos + 1]
            if c.isspace():
                pos += 1
            elif c == b"#":
                while pos < len(data) and data[pos : pos + 1] not in (b"\r", b"\n"):
                    pos += 1
            else:
                break
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise FormatError("unexpected end of PPM header")
        return data[start:pos]

    magic = next_token()
    if magic != b"P6":
        raise FormatError(f"not a P6 PPM (magic {magic!r})")
    try:
        width = int(next_token())
        height = int(next_token())
        maxval = int(next_token())
    except ValueError as e:
        raise FormatError(f"non-numeric PPM header field: {e}") from None
    if width < 1 or height < 1:
        raise FormatError(f"invalid PPM dimensions {width}x{height}")
    if maxval != 255:
        raise FormatError(f"unsupported PPM maxval {maxval} (only 255)")
    # exactly one whitespace byte separates the header from the pixel bytes
    pos += 1
    need = width * height * 3
    payload = data[pos : pos + need]
    if len(payload) < need:
        raise FormatError(
            f"truncated PPM payload: need {need} bytes, have {len(payload)}"
        )
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3).copy()


def load_image(path) -> np.ndarray:
    """Load an image file into a (H, W, 3) uint8 RGB array.

    PPM P6 is decoded bit-exactly by the built-in codec; PNG files are
    decoded through Pillow when it is installed.

    Raises OSError for missing/unreadable files and FormatError for
    malformed or unsupported content.
    """
    p = Path(path)
    data = p.read_bytes()
    if data[:2] == b"P6":
        return _parse_ppm(data)
    if data[: len(_PNG_MAGIC)] == _PNG_MAGIC:
        try:
            from PIL import Image
        except ImportError:
            raise FormatError("PNG support requires Pillow") from None
        with Image.open(p) as im:
            return np.asarray(im.convert("RGB"), dtype=np.uint8).copy()
    raise FormatError(f"{p}: unrecognized image format")


def save_image(img, path) -> None:
    """Write an image to disk, PPM P6 by default.

    A `.png` suffix selects PNG output via Pillow; everything else is
    written as binary PPM so that load_image inverts it exactly.
    """
    arr = check_rgb_image(img)
    p = Path(path)
    if p.suffix.lower() == ".png":
        try:
            from PIL import Image
        except ImportError:
            raise FormatError("PNG support requires Pillow") from None
        Image.fromarray(arr, mode="RGB").save(p)
        return
    h, w = arr.shape[:2]
    header = f"P6\n{w} {h}\n255\n".encode("ascii")
    p.write_bytes(header + arr.tobytes())


# ---------------------------------------------------------------------------
# Geometric transforms


def _round_half_up(x: np.ndarray) -> np.ndarray:
    return np.floor(x + 0.5)


def rotate(img, angle: float, interp: str = BILINEAR, fill=(0, 0, 0)) -> np.ndarray:
    """Rotate an image about its center, expanding the canvas to the
    bounding box of the rotated rectangle.

    Positive angles rotate the content counterclockwise in the usual
    display orientation. Samples that fall outside the source take the
    `fill` color. Multiples of 90 degrees are exact pixel permutations;
    arbitrary angles resample with the requested interpolation.
    """
    arr = check_rgb_image(img)
    _check_interp(interp)
    fill = check_rgb_triple(fill, "fill")
    a = float(angle) % 360.0
    if a == 0.0:
        return arr.copy()
    if a in (90.0, 180.0, 270.0):
        return np.rot90(arr, int(a // 90)).copy()

    h, w = arr.shape[:2]
    theta = math.radians(a)
    c, s = math.cos(theta), math.sin(theta)
    w_out = max(1, int(math.floor(abs(c) * w + abs(s) * h + 0.5)))
    h_out = max(1, int(math.floor(abs(s) * w + abs(c) * h + 0.5)))

    # inverse map: output pixel centers back into source coordinates
    u = np.arange(w_out, dtype=np.float64) - (w_out - 1) / 2.0
    v = np.arange(h_out, dtype=np.float64) - (h_out - 1) / 2.0
    du, dv = np.meshgrid(u, v)
    sx = du * c - dv * s + (w - 1) / 2.0
    sy = du * s + dv * c + (h - 1) / 2.0

    fill_px = np.array(fill, dtype=np.float64)
    if interp == NEAREST:
        xi = np.floor(sx + 0.5).astype(np.int64)
        yi = np.floor(sy + 0.5).astype(np.int64)
        valid = (xi >= 0) & (xi < w) & (yi >= 0) & (yi < h)
        out = np.empty((h_out, w_out, 3), dtype=np.uint8)
        out[:] = np.asarray(fill, dtype=np.uint8)
        out[valid] = arr[yi[valid], xi[valid]]
        return out

    x0 = np.floor(sx).astype(np.int64)
    y0 = np.floor(sy).astype(np.int64)
    fx = sx - x0
    fy = sy - y0
    acc = np.zeros((h_out, w_out, 3), dtype=np.float64)
    src = arr.astype(np.float64)
    for dy_tap, dx_tap, wgt in (
        (0, 0, (1 - fx) * (1 - fy)),
        (0, 1, fx * (1 - fy)),
        (1, 0, (1 - fx) * fy),
        (1, 1, fx * fy),
    ):
        xt = x0 + dx_tap
        yt = y0 + dy_tap
        ok = (xt >= 0) & (xt < w) & (yt >= 0) & (yt < h)
        vals = np.where(
            ok[..., None],
            src[np.clip(yt, 0, h - 1), np.clip(xt, 0, w - 1)],
            fill_px,
        )
        acc += wgt[..., None] * vals
    return np.clip(_round_half_up(acc), 0, 255).astype(np.uint8)


def scale(img, factor: float, interp: str = BILINEAR) -> np.ndarray:
    """Resample an image by a positive factor.

    Output dimensions are round(w * factor) x round(h * factor); a factor
    of 1 is the identity and integer nearest-neighbor upscales replicate
    each pixel into a block. Raises DegenerateOutput when either rounded
    dimension falls below 1.
    """
    arr = check_rgb_image(img)
    _check_interp(interp)
    if not (factor > 0):
        raise DomainError(f"scale factor must be > 0, got {factor}")
    h, w = arr.shape[:2]
    w_out = int(math.floor(w * factor + 0.5))
    h_out = int(math.floor(h * factor + 0.5))
    if w_out < 1 or h_out < 1:
        raise DegenerateOutput(
            f"scaling {w}x{h} by {factor} yields {w_out}x{h_out}"
        )
    if w_out == w and h_out == h and factor == 1.0:
        return arr.copy()

    sx = (np.arange(w_out, dtype=np.float64) + 0.5) * (w / w_out) - 0.5
    sy = (np.arange(h_out, dtype=np.float64) + 0.5) * (h / h_out) - 0.5
    if interp == NEAREST:
        xi = np.clip(np.floor(sx + 0.5).astype(np.int64), 0, w - 1)
        yi = np.clip(np.floor(sy + 0.5).astype(np.int64), 0, h - 1)
        return arr[np.ix_(yi, xi)].copy()

    x0 = np.floor(sx).astype(np.int64)
    y0 = np.floor(sy).astype(np.int64)
    fx = (sx - x0)[None, :, None]
    fy = (sy - y0)[:, None, None]
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    src = arr.astype(np.float64)
    top = src[np.ix_(y0c, x0c)] * (1 - fx) + src[np.ix_(y0c, x1c)] * fx
    bot = src[np.ix_(y1c, x0c)] * (1 - fx) + src[np.ix_(y1c, x1c)] * fx
    out = top * (1 - fy) + bot * fy
    return np.clip(_round_half_up(out), 0, 255).astype(np.uint8)
