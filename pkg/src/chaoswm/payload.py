"""Text <-> 7-bit payload conversion and the 32-bit length frame.

Bit strings are ``uint8`` numpy arrays holding 0/1 values.
"""

import numpy as np

from .errors import LengthNotMultipleOf7, MalformedFrame, NonAsciiCharacter, PayloadTooLarge

HEADER_BITS = 32
_WEIGHTS7 = 1 << np.arange(6, -1, -1)


def as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8).ravel()
    if arr.size and arr.max() > 1:
        raise ValueError("bit strings may only contain 0 and 1")
    return arr


def text_to_bits(text: str) -> np.ndarray:
    """Encode each character as 7 bits, most significant first."""
    for pos, ch in enumerate(text):
        if ord(ch) >= 128:
            raise NonAsciiCharacter(pos, ch)
    codes = np.frombuffer(text.encode("ascii"), dtype=np.uint8)
    return ((codes[:, None] >> np.arange(6, -1, -1)) & 1).astype(np.uint8).ravel()


def bits_to_text(bits) -> str:
    bits = as_bits(bits)
    if bits.size % 7:
        raise LengthNotMultipleOf7(f"{bits.size} bits is not a whole number of 7-bit characters")
    codes = bits.reshape(-1, 7) @ _WEIGHTS7
    return bytes(codes.astype(np.uint8)).decode("ascii")


def bits_to_bytes(bits) -> bytes:
    """Pack MSB-first; the tail byte is zero-padded."""
    return np.packbits(as_bits(bits)).tobytes()


def bytes_to_bits(data: bytes, nbits: int | None = None) -> np.ndarray:
    bits = np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8))
    return bits if nbits is None else bits[:nbits]


def frame_payload(bits) -> np.ndarray:
    """Prepend a 32-bit big-endian bit count."""
    bits = as_bits(bits)
    if bits.size >= 1 << HEADER_BITS:
        raise PayloadTooLarge(f"{bits.size} bits does not fit a 32-bit length header")
    header = (bits.size >> np.arange(HEADER_BITS - 1, -1, -1)) & 1
    return np.concatenate([header.astype(np.uint8), bits])


def unframe_payload(framed) -> np.ndarray:
    """Inverse of :func:`frame_payload`; trailing padding after the payload is ignored."""
    framed = as_bits(framed)
    if framed.size < HEADER_BITS:
        raise MalformedFrame("frame shorter than its length header")
    length = int("".join(map(str, framed[:HEADER_BITS])), 2)
    if length > framed.size - HEADER_BITS:
        raise MalformedFrame(f"header announces {length} bits, only {framed.size - HEADER_BITS} present")
    return framed[HEADER_BITS:HEADER_BITS + length].copy()
