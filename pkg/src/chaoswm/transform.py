"""Orthonormal 2-D Haar pyramid and bit-plane (MSC/LSC) views.

For a 2x2 pixel block ``[[a, b], [c, d]]`` one analysis step gives::

    LL = (a + b + c + d) / 2    approximation
    HL = (a + b - c - d) / 2    horizontal detail
    LH = (a - b + c - d) / 2    vertical detail
    HH = (a - b - c + d) / 2    diagonal detail

which equals the separable pair map ``(a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2)``
applied to rows then columns, but stays exact in floating point for integer
input.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    BadBitIndex,
    BadSelector,
    DimensionNotDyadic,
    InconsistentPyramid,
    SizeMismatch,
)

BANDS = ("LL", "LH", "HL", "HH")


def as_image(img) -> np.ndarray:
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ValueError("grayscale images are 2-D arrays")
    if arr.dtype != np.uint8:
        if arr.size and (arr.min() < 0 or arr.max() > 255):
            raise ValueError("pixel values must lie in [0, 255]")
        arr = arr.astype(np.uint8)
    return arr


@dataclass
class DwtPyramid:
    ll: np.ndarray
    details: list = field(default_factory=list)  # [(lh, hl, hh)] for level 1, 2, ...

    @property
    def levels(self) -> int:
        return len(self.details)

    def band(self, name: str, level: int) -> np.ndarray:
        if not 1 <= level <= self.levels:
            raise BadSelector(f"level {level} outside a {self.levels}-level pyramid")
        if name == "LL":
            if level != self.levels:
                raise BadSelector(f"LL{level} is not stored in a {self.levels}-level pyramid")
            return self.ll
        if name not in BANDS:
            raise BadSelector(f"unknown band {name!r}")
        return self.details[level - 1][BANDS.index(name) - 1]

    def with_band(self, name: str, level: int, values) -> "DwtPyramid":
        old = self.band(name, level)
        values = np.asarray(values, dtype=np.float64)
        if values.shape != old.shape:
            raise SizeMismatch(f"band {name}{level} is {old.shape}, got {values.shape}")
        if name == "LL":
            return replace(self, ll=values.copy(), details=list(self.details))
        details = list(self.details)
        trio = list(details[level - 1])
        trio[BANDS.index(name) - 1] = values.copy()
        details[level - 1] = tuple(trio)
        return replace(self, details=details)

    def energy(self) -> float:
        total = float(np.sum(self.ll ** 2))
        for trio in self.details:
            total += sum(float(np.sum(m ** 2)) for m in trio)
        return total


def haar_step(x: np.ndarray):
    a, b = x[0::2, 0::2], x[0::2, 1::2]
    c, d = x[1::2, 0::2], x[1::2, 1::2]
    ll = (a + b + c + d) / 2
    lh = (a - b + c - d) / 2
    hl = (a + b - c - d) / 2
    hh = (a - b - c + d) / 2
    return ll, (lh, hl, hh)


def haar_step_inverse(ll, lh, hl, hh) -> np.ndarray:
    h, w = ll.shape
    out = np.empty((2 * h, 2 * w), dtype=np.float64)
    out[0::2, 0::2] = (ll + lh + hl + hh) / 2
    out[0::2, 1::2] = (ll - lh + hl - hh) / 2
    out[1::2, 0::2] = (ll + lh - hl - hh) / 2
    out[1::2, 1::2] = (ll - lh - hl + hh) / 2
    return out


def dwt_forward(img, levels: int) -> DwtPyramid:
    x = np.asarray(img, dtype=np.float64)
    if x.ndim != 2 or levels < 1:
        raise ValueError("need a 2-D image and at least one level")
    step = 1 << levels
    if x.shape[0] % step or x.shape[1] % step:
        raise DimensionNotDyadic(f"{x.shape} is not divisible by 2^{levels}")
    details = []
    for _ in range(levels):
        x, trio = haar_step(x)
        details.append(trio)
    return DwtPyramid(x, details)


def synthesize(pyr: DwtPyramid) -> np.ndarray:
    """Real-valued inverse transform, no rounding."""
    x = np.asarray(pyr.ll, dtype=np.float64)
    for level in range(pyr.levels, 0, -1):
        lh, hl, hh = pyr.details[level - 1]
        if not (x.shape == lh.shape == hl.shape == hh.shape):
            raise InconsistentPyramid(f"level {level} bands disagree in shape with {x.shape}")
        x = haar_step_inverse(x, lh, hl, hh)
    return x


def to_pixels(x: np.ndarray) -> np.ndarray:
    """Round half up and saturate to 8 bits."""
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def dwt_inverse(pyr: DwtPyramid) -> np.ndarray:
    return to_pixels(synthesize(pyr))


# --- bit-plane views -----------------------------------------------------

@dataclass(frozen=True)
class LscSelector:
    domain: str = "dwt"  # "dwt" or "pixel"
    band: str = "HH"
    level: int = 2
    bit: int = 1

    def __post_init__(self):
        if self.domain not in ("dwt", "pixel"):
            raise BadSelector(f"unknown domain {self.domain!r}")
        if not 0 <= self.bit <= 3:
            raise BadSelector(f"LSC bit index must lie in [0, 3], got {self.bit}")
        if self.domain == "dwt":
            if self.band not in BANDS:
                raise BadSelector(f"unknown band {self.band!r}")
            if self.level < 1:
                raise BadSelector("decomposition level must be >= 1")

    @property
    def label(self) -> str:
        return "pixel" if self.domain == "pixel" else f"{self.band}{self.level}"

    @classmethod
    def parse(cls, label: str, bit: int = 1) -> "LscSelector":
        """``"HH2"`` -> dwt selector, ``"pixel"`` -> pixel selector."""
        if label.lower() == "pixel":
            return cls("pixel", bit=bit)
        band, level = label[:2].upper(), label[2:]
        if not level.isdigit():
            raise BadSelector(f"cannot parse selector {label!r}")
        return cls("dwt", band, int(level), bit)


def coefficient_integers(c: np.ndarray) -> np.ndarray:
    """Integral value of each coefficient, rounding half up."""
    return np.floor(np.asarray(c, dtype=np.float64) + 0.5).astype(np.int64)


def _selected(target, sel: LscSelector):
    if sel.domain == "pixel":
        if isinstance(target, DwtPyramid):
            raise BadSelector("pixel selector needs an image")
        return as_image(target)
    pyr = target if isinstance(target, DwtPyramid) else dwt_forward(target, sel.level)
    return pyr.band(sel.band, sel.level)


def read_lsc(target, sel: LscSelector) -> np.ndarray:
    """Selected bit of every element, raster order.

    Coefficients contribute the bit of their two's-complement integral value,
    so adding or subtracting ``2**bit`` always toggles it and is undone exactly
    by the opposite correction.
    """
    m = _selected(target, sel)
    if sel.domain == "pixel":
        return ((m >> sel.bit) & 1).astype(np.uint8).ravel()
    return ((coefficient_integers(m) >> sel.bit) & 1).astype(np.uint8).ravel()


def write_lsc(target, sel: LscSelector, state):
    """Return a copy of ``target`` whose selected bits equal ``state``."""
    state = np.asarray(state, dtype=np.uint8).ravel()
    m = _selected(target, sel)
    if state.size != m.size:
        raise SizeMismatch(f"state has {state.size} cells, selection has {m.size}")
    current = read_lsc(m if sel.domain == "pixel" else target, sel).reshape(m.shape)
    want = state.reshape(m.shape)
    if sel.domain == "pixel":
        mask = np.uint8(1 << sel.bit)
        return np.where(want == 1, m | mask, m & ~mask).astype(np.uint8)
    step = float(1 << sel.bit)
    delta = np.where(current == want, 0.0, np.where(current == 0, step, -step))
    if isinstance(target, DwtPyramid):
        return target.with_band(sel.band, sel.level, m + delta)
    pyr = dwt_forward(target, sel.level)
    return dwt_inverse(pyr.with_band(sel.band, sel.level, m + delta))


def read_msc(img, msb_set=(4, 5, 6, 7)) -> np.ndarray:
    """High bits of every pixel, raster order, ``msb_set`` order within a pixel."""
    img = as_image(img)
    msb_set = list(msb_set)
    if not msb_set or any(not 4 <= b <= 7 for b in msb_set):
        raise BadBitIndex(f"MSC bit indices must lie in [4, 7], got {msb_set}")
    planes = [(img >> b) & 1 for b in msb_set]
    return np.stack(planes, axis=-1).astype(np.uint8).ravel()
