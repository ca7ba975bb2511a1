"""Non-blind switch-mode watermarking in the Haar domain, with RMS detection.

The selected coefficient bits are negated along the strategy ``U`` derived
from the encryption strategy. Negating the same cells again restores them,
so re-running the embedding on a watermarked image reproduces the original
coefficients; detection measures how far from that it lands.
"""

from dataclasses import dataclass, replace

import numpy as np

from .attacks import rms
from .chaos import Strategy, iterate, negation
from .errors import BadSelector, DimensionMismatch
from .keystream import ChaosKey, authenticated_key, encryption_strategy, u_strategy
from .payload import as_bits
from .spatial import mix
from .transform import LscSelector, as_image, dwt_forward, dwt_inverse, read_lsc, read_msc, write_lsc

DEFAULT_THRESHOLD = 0.5


def _strategies(wm_bits, key: ChaosKey, cells: int):
    wm = as_bits(wm_bits)
    if wm.size == 0:
        raise ValueError("watermark must contain at least one bit")
    s = encryption_strategy(key, wm.size)
    if len(s) == 0:
        return wm.copy(), Strategy([], cells)
    encrypted = mix(wm, s, len(s))
    u = u_strategy(s, key.u0, cells, len(s) - 1)
    return encrypted, u


def switch_steps(wm_bits, key: ChaosKey) -> int:
    """Number of coefficient negations one embedding performs."""
    return len(encryption_strategy(key, as_bits(wm_bits).size))


def embed_switch(img, wm_bits, key: ChaosKey, sel: LscSelector = LscSelector(),
                 authenticate: bool = False) -> np.ndarray:
    img = as_image(img)
    if sel.domain != "dwt":
        raise BadSelector("switch-mode embedding needs a wavelet-domain selector")
    if authenticate:
        key = authenticated_key(key, read_msc(img, key.msb_set))
    pyr = dwt_forward(img, sel.level)
    state = read_lsc(pyr, sel)
    _, u = _strategies(wm_bits, key, state.size)
    switched = iterate(state, u, negation, len(u))
    return dwt_inverse(write_lsc(pyr, sel, switched))


@dataclass(frozen=True)
class DetectionReport:
    rms: float
    threshold: float
    selector: str
    key_fingerprint: str

    @property
    def watermarked(self) -> bool:
        return self.rms <= self.threshold

    @property
    def verdict(self) -> str:
        return "watermarked" if self.watermarked else "not-watermarked"

    def to_text(self) -> str:
        return (
            f"rms={self.rms:.6f}\nthreshold={self.threshold:g}\nverdict={self.verdict}\n"
            f"selector={self.selector}\nkey={self.key_fingerprint}\n"
        )


def detect(candidate, original, wm_bits, key: ChaosKey, sel: LscSelector = LscSelector(),
           threshold: float = DEFAULT_THRESHOLD, authenticate: bool = False) -> DetectionReport:
    """Re-apply the embedding to ``candidate`` and compare the selected band with ``original``'s.

    In authenticated mode the MSC digest comes from ``original``, the image
    the owner watermarked.
    """
    candidate = as_image(candidate)
    original = as_image(original)
    if candidate.shape != original.shape:
        raise DimensionMismatch(f"candidate {candidate.shape} vs original {original.shape}")
    if authenticate:
        key = authenticated_key(key, read_msc(original, key.msb_set))
    restored = embed_switch(candidate, wm_bits, key, sel)
    ref = dwt_forward(original, sel.level).band(sel.band, sel.level)
    got = dwt_forward(restored, sel.level).band(sel.band, sel.level)
    return DetectionReport(rms(ref, got), threshold, sel.label, key.fingerprint())


@dataclass(frozen=True)
class SweepRow:
    label: str
    rms: float


def sweep_cases(key: ChaosKey, sel: LscSelector, authenticate: bool = False):
    """``(label, key, selector, authenticate)`` for the reference and each single perturbation."""
    return [
        ("reference", key, sel, authenticate),
        ("mu=3.99987", replace(key, mu=3.99987), sel, authenticate),
        ("x0=0.64", replace(key, x0=0.64), sel, authenticate),
        ("iterations=19950", replace(key, iterations=19950), sel, authenticate),
        ("msb=[5,6,7]", replace(key, msb_set=(5, 6, 7)), sel, True),
        ("band=HH1", key, replace(sel, band="HH", level=1), authenticate),
        ("s0=2", replace(key, u0=2), sel, authenticate),
        ("lsb=[1]", key, replace(sel, bit=0), authenticate),
    ]


def wrong_parameter_sweep(candidate, original, wm_bits, key: ChaosKey, sel: LscSelector = LscSelector(),
                          authenticate: bool = False) -> list[SweepRow]:
    """Detection RMS for the correct parameters and for each single wrong one.

    ``lsb=[1]`` counts bits from one, i.e. the least significant bit.
    """
    return [
        SweepRow(label, detect(candidate, original, wm_bits, k, s, authenticate=auth).rms)
        for label, k, s, auth in sweep_cases(key, sel, authenticate)
    ]
