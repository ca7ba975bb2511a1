"""Blind spatial-domain scheme with a CIRC-protected payload.

Embedding: text -> 7-bit codes -> 32-bit length frame -> byte padding ->
chaotic-iteration mixing -> CIRC frame -> substitution into the two lowest
bit planes at key-derived pixel positions.
"""

from dataclasses import dataclass

import numpy as np

from .chaos import Strategy, iterate, negation
from .circ import DEFAULT_CIRC, CircConfig, circ_decode, circ_encode, circ_peek_length
from .errors import CapacityExceeded, MalformedFrame, PlanExhausted, WatermarkError
from .keystream import ChaosKey, authenticated_key, encryption_strategy, iter_triplets, plan_strategy
from .payload import bits_to_bytes, bits_to_text, bytes_to_bits, frame_payload, text_to_bits, unframe_payload
from .transform import as_image, read_msc

DRAW_CAP = 64  # draws allowed per requested placement


@dataclass(frozen=True)
class SpatialEmbedPlan:
    rows: np.ndarray
    cols: np.ndarray
    planes: np.ndarray  # 1 = least significant bit, 2 = the next one

    def __len__(self):
        return int(self.rows.size)

    @property
    def placements(self) -> list[tuple[int, int, int]]:
        return list(zip(self.rows.tolist(), self.cols.tolist(), self.planes.tolist()))


def mix(bits, s: Strategy, steps: int) -> np.ndarray:
    """Chaotic iterations with negation over the bit string; self-inverse."""
    return iterate(bits, s, negation, steps)


def capacity(width: int, height: int) -> int:
    return 2 * min(width, 255) * min(height, 255)


def build_plan(key: ChaosKey, width: int, height: int, nbits: int) -> SpatialEmbedPlan:
    """First ``nbits`` distinct in-image slots drawn from the triplet stream.

    Repeated or out-of-image triplets are skipped, so every plan is a prefix
    of any longer plan from the same key.
    """
    if nbits > capacity(width, height):
        raise CapacityExceeded(f"{nbits} bits exceed the {capacity(width, height)} available slots")
    rows = np.empty(nbits, dtype=np.int64)
    cols = np.empty(nbits, dtype=np.int64)
    planes = np.empty(nbits, dtype=np.int64)
    if nbits == 0:
        return SpatialEmbedPlan(rows, cols, planes)
    taken = set()
    count = 0
    for draw, (x, y, z) in enumerate(iter_triplets(plan_strategy(key), key.triplet_seeds)):
        if draw >= DRAW_CAP * nbits:
            raise PlanExhausted(f"only {count} of {nbits} placements after {draw} draws")
        if x >= height or y >= width or (x, y, z) in taken:
            continue
        taken.add((x, y, z))
        rows[count], cols[count], planes[count] = x, y, z
        count += 1
        if count == nbits:
            break
    return SpatialEmbedPlan(rows, cols, planes)


def _effective_key(img, key: ChaosKey, authenticate: bool) -> ChaosKey:
    return authenticated_key(key, read_msc(img, key.msb_set)) if authenticate else key


def _mix_bytes(data: bytes, key: ChaosKey) -> bytes:
    bits = bytes_to_bits(data)
    s = encryption_strategy(key, bits.size)
    return bits_to_bytes(mix(bits, s, len(s)))


def encode_message(text: str, key: ChaosKey, circ: CircConfig = DEFAULT_CIRC) -> bytes:
    """Coded byte stream for ``text`` (before placement)."""
    framed = frame_payload(text_to_bits(text))
    return circ_encode(_mix_bytes(bits_to_bytes(framed), key), circ)


def decode_message(stream: bytes, key: ChaosKey, circ: CircConfig = DEFAULT_CIRC) -> str:
    mixed = circ_decode(stream, circ)
    if not mixed:
        raise MalformedFrame("empty frame")
    framed = bytes_to_bits(_mix_bytes(mixed, key))
    bits = unframe_payload(framed)
    if bits.size % 7:
        raise MalformedFrame(f"payload of {bits.size} bits is not 7-bit text")
    return bits_to_text(bits)


def embed(img, text: str, key: ChaosKey, authenticate: bool = False,
          circ: CircConfig = DEFAULT_CIRC) -> np.ndarray:
    img = as_image(img)
    h, w = img.shape
    key = _effective_key(img, key, authenticate)
    coded = bytes_to_bits(encode_message(text, key, circ))
    plan = build_plan(key, w, h, coded.size)
    out = img.copy()
    # slots are distinct, so within one plane no pixel is written twice
    for plane in (1, 2):
        sel = plan.planes == plane
        r, c, b = plan.rows[sel], plan.cols[sel], coded[sel]
        mask = np.uint8(1 << (plane - 1))
        out[r, c] = np.where(b == 1, out[r, c] | mask, out[r, c] & ~mask)
    return out


def read_plan(img, plan: SpatialEmbedPlan) -> np.ndarray:
    return ((img[plan.rows, plan.cols] >> (plan.planes - 1)) & 1).astype(np.uint8)


def extract(img, key: ChaosKey, authenticate: bool = False, circ: CircConfig = DEFAULT_CIRC) -> str:
    """Recover the text using only the stego image and the key."""
    img = as_image(img)
    h, w = img.shape
    key = _effective_key(img, key, authenticate)
    head_bits = circ.header_blocks() * circ.inner.n * 8
    if head_bits > capacity(w, h):
        raise MalformedFrame("image too small to hold a frame")
    head = read_plan(img, build_plan(key, w, h, head_bits))
    length = circ_peek_length(bits_to_bytes(head), circ)
    total_bits = circ.encoded_size(length) * 8
    if total_bits > capacity(w, h):
        raise MalformedFrame(f"frame announces {length} bytes, more than the image can hold")
    try:
        plan = build_plan(key, w, h, total_bits)
    except PlanExhausted as exc:
        raise MalformedFrame(str(exc)) from None
    return decode_message(bits_to_bytes(read_plan(img, plan)), key, circ)


__all__ = [
    "SpatialEmbedPlan", "mix", "capacity", "build_plan", "embed", "extract",
    "encode_message", "decode_message", "read_plan", "WatermarkError",
]
