"""Distortion metrics and deterministic attack simulators.

Coordinates follow the embedding convention: ``x`` is the row, ``y`` the column.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OutOfBounds
from .transform import as_image

PEAK = 255.0


def rms(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.sqrt(np.mean((a - b) ** 2)))


def psnr(a, b) -> float:
    """Peak signal-to-noise ratio in dB with peak 255; ``math.inf`` for identical inputs."""
    err = rms(a, b)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK ** 2 / err ** 2)


def _check_rect(img, x, y, h, w):
    rows, cols = img.shape
    if min(x, y, h, w) < 0 or x + h > rows or y + w > cols:
        raise OutOfBounds(f"rectangle ({x}, {y}, {h}x{w}) outside a {rows}x{cols} image")


def attack_zero_square(img, x: int, y: int, size: int) -> np.ndarray:
    img = as_image(img)
    _check_rect(img, x, y, size, size)
    out = img.copy()
    out[x:x + size, y:y + size] = 0
    return out


def attack_gaussian(img, sigma: float, seed: int) -> np.ndarray:
    """Add N(0, sigma^2) noise, Box-Muller over a Philox counter stream."""
    img = as_image(img)
    if sigma < 0:
        raise ValueError("sigma must be non-negative")
    if sigma == 0:
        return img.copy()
    gen = np.random.Generator(np.random.Philox(seed))
    u1 = 1.0 - gen.random(img.shape)
    u2 = gen.random(img.shape)
    noise = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    return np.clip(np.floor(img + sigma * noise + 0.5), 0, 255).astype(np.uint8)


def attack_crop_pad(img, x: int, y: int, height: int, width: int) -> np.ndarray:
    """Keep the rectangle, zero everything else; dimensions are preserved."""
    img = as_image(img)
    _check_rect(img, x, y, height, width)
    out = np.zeros_like(img)
    out[x:x + height, y:y + width] = img[x:x + height, y:y + width]
    return out


@dataclass(frozen=True)
class AttackSpec:
    kind: str  # "zero-square", "gaussian-noise" or "crop-pad"
    x: int = 0
    y: int = 0
    size: int = 40
    height: int = 0
    width: int = 0
    sigma: float = 0.0
    seed: int = 0

    def apply(self, img) -> np.ndarray:
        if self.kind == "zero-square":
            return attack_zero_square(img, self.x, self.y, self.size)
        if self.kind == "gaussian-noise":
            return attack_gaussian(img, self.sigma, self.seed)
        if self.kind == "crop-pad":
            return attack_crop_pad(img, self.x, self.y, self.height, self.width)
        raise ValueError(f"unknown attack kind {self.kind!r}")
