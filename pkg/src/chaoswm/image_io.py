"""Binary PGM (P5, maxval 255) and a synthetic stand-in test image."""

import re
from pathlib import Path

import numpy as np

from .errors import MalformedHeader, TruncatedRaster, UnsupportedMaxval
from .transform import as_image

_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def read_pgm(data: bytes) -> np.ndarray:
    data = bytes(data)
    pos = 0
    fields = []
    for _ in range(4):
        m = _TOKEN.match(data, pos)
        if not m:
            raise MalformedHeader("incomplete PGM header")
        fields.append(m.group(1))
        pos = m.end()
    if fields[0] != b"P5":
        raise MalformedHeader(f"expected magic P5, got {fields[0]!r}")
    try:
        width, height, maxval = (int(f) for f in fields[1:])
    except ValueError:
        raise MalformedHeader("non-numeric PGM header field") from None
    if width <= 0 or height <= 0:
        raise MalformedHeader("image dimensions must be positive")
    if maxval != 255:
        raise UnsupportedMaxval(f"maxval {maxval} (only 255 is supported)")
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise MalformedHeader("missing whitespace after maxval")
    raster = data[pos + 1:pos + 1 + width * height]
    if len(raster) < width * height:
        raise TruncatedRaster(f"expected {width * height} raster bytes, got {len(raster)}")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img) -> bytes:
    img = as_image(img)
    h, w = img.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def load_pgm(path) -> np.ndarray:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img) -> None:
    Path(path).write_bytes(write_pgm(img))


def _box_blur(x: np.ndarray, r: int) -> np.ndarray:
    """Integer separable box sum with wrap-around."""
    for axis in (0, 1):
        acc = np.zeros_like(x)
        for k in range(-r, r + 1):
            acc += np.roll(x, k, axis=axis)
        x = acc
    return x


def synth_test_image(width: int, height: int, seed: int = 0) -> np.ndarray:
    """Deterministic natural-looking grayscale image.

    Multi-scale smoothed integer noise plus diagonal gradients, stretched to
    the full [0, 255] range with integer arithmetic only.
    """
    if width <= 0 or height <= 0:
        raise ValueError("dimensions must be positive")
    gen = np.random.Generator(np.random.PCG64(seed))
    total = np.zeros((height, width), dtype=np.int64)
    for radius, weight in ((1, 1), (4, 6), (12, 10)):
        noise = gen.integers(0, 256, size=(height, width), dtype=np.int64)
        blurred = _box_blur(_box_blur(noise, radius), radius)
        total += weight * blurred // (2 * radius + 1) ** 4
    rows = np.arange(height, dtype=np.int64)[:, None]
    cols = np.arange(width, dtype=np.int64)[None, :]
    total += 1200 * rows // height + 800 * cols // width
    lo, hi = total.min(), total.max()
    if hi == lo:
        return np.zeros((height, width), dtype=np.uint8)
    return ((total - lo) * 255 // (hi - lo)).astype(np.uint8)
