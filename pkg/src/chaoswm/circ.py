"""Reed-Solomon codes over GF(256), a 3-branch convolutional interleaver, and
their composition into a two-layer cross-interleaved frame.

Frame layout (encode order)::

    [len_hi len_lo payload... zero pad] -> blocks of 24 -> RS(32,24) each
    -> interleave3 (adds 6*delay flush bytes) -> zero pad to a multiple of 16
    -> RS(24,16) each

Decoding runs the reverse: inner RS(24,16), deinterleave, outer RS(32,24).
An inner block that cannot be corrected is passed through uncorrected so the
outer layer gets a chance; only an outer failure is fatal.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf256 as gf
from .errors import MalformedFrame, PayloadTooLarge, UncorrectableBlock, WrongBlockLength

log = logging.getLogger(__name__)

BRANCHES = 3
MAX_PAYLOAD = 0xFFFF


@dataclass(frozen=True)
class RsCode:
    n: int
    k: int
    fcr: int = 1  # generator roots are alpha^fcr ... alpha^(fcr + n - k - 1)

    def __post_init__(self):
        if not 0 < self.k < self.n <= 255:
            raise ValueError(f"invalid RS parameters ({self.n},{self.k})")
        if (self.n - self.k) % 2:
            raise ValueError("n - k must be even")

    @property
    def nsym(self) -> int:
        return self.n - self.k

    @property
    def t(self) -> int:
        return self.nsym // 2


OUTER = RsCode(32, 24)
INNER = RsCode(24, 16)


@lru_cache(maxsize=None)
def generator_poly(nsym: int, fcr: int = 1) -> tuple[int, ...]:
    g = [1]
    for i in range(nsym):
        g = gf.poly_mul(g, [1, gf.pow_(2, fcr + i)])
    return tuple(g)


def rs_encode(code: RsCode, data) -> bytes:
    """Systematic encoding: data followed by n - k parity bytes."""
    data = bytes(data)
    if len(data) != code.k:
        raise WrongBlockLength(f"expected {code.k} data bytes, got {len(data)}")
    gen = generator_poly(code.nsym, code.fcr)
    # remainder of data(x) * x^nsym divided by gen(x)
    rem = [0] * code.nsym
    for byte in data:
        coef = byte ^ rem[0]
        rem = rem[1:] + [0]
        if coef:
            lc = gf.LOG[coef]
            for j in range(code.nsym):
                g = gen[j + 1]
                if g:
                    rem[j] ^= gf.EXP[lc + gf.LOG[g]]
    return data + bytes(rem)


def syndromes(code: RsCode, word) -> list[int]:
    return [gf.poly_eval(list(word), gf.pow_(2, code.fcr + i)) for i in range(code.nsym)]


@lru_cache(maxsize=None)
def _parity_matrix(code: RsCode) -> np.ndarray:
    """Row j holds the parity bytes of the unit message e_j."""
    rows = [list(rs_encode(code, bytes(j == i for i in range(code.k)))[code.k:]) for j in range(code.k)]
    return np.array(rows, dtype=np.uint8)


@lru_cache(maxsize=None)
def _syndrome_matrix(code: RsCode) -> np.ndarray:
    """Entry (j, i) is alpha^((fcr + i) * (n - 1 - j))."""
    return np.array(
        [[gf.pow_(2, (code.fcr + i) * (code.n - 1 - j)) for i in range(code.nsym)] for j in range(code.n)],
        dtype=np.uint8,
    )


def _xor_products(symbols: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """For each row r: XOR over j of symbols[r, j] * coeffs[j, :]."""
    prods = gf.mul_table()[symbols[:, :, None], coeffs[None, :, :]]
    return np.bitwise_xor.reduce(prods, axis=1)


def rs_encode_blocks(code: RsCode, data: np.ndarray) -> np.ndarray:
    """Vectorised :func:`rs_encode` over the rows of a ``(blocks, k)`` uint8 array."""
    data = np.asarray(data, dtype=np.uint8)
    if data.ndim != 2 or data.shape[1] != code.k:
        raise WrongBlockLength(f"expected rows of {code.k} bytes, got shape {data.shape}")
    if data.shape[0] == 0:
        return np.zeros((0, code.n), dtype=np.uint8)
    return np.concatenate([data, _xor_products(data, _parity_matrix(code))], axis=1)


def syndromes_blocks(code: RsCode, words: np.ndarray) -> np.ndarray:
    words = np.asarray(words, dtype=np.uint8)
    if words.shape[0] == 0:
        return np.zeros((0, code.nsym), dtype=np.uint8)
    return _xor_products(words, _syndrome_matrix(code))


def rs_decode_blocks(code: RsCode, words: np.ndarray, layer: str = "rs", strict: bool = True):
    """Decode every row; returns ``(data, failed_rows)``.

    With ``strict`` the first uncorrectable row raises; otherwise its data
    bytes are passed through unchanged and its index reported.
    """
    words = np.asarray(words, dtype=np.uint8)
    data = words[:, :code.k].copy()
    failed = []
    dirty = np.flatnonzero(syndromes_blocks(code, words).any(axis=1))
    for i in dirty.tolist():
        try:
            data[i] = np.frombuffer(rs_decode(code, words[i].tobytes())[0], dtype=np.uint8)
        except UncorrectableBlock as exc:
            if strict:
                raise UncorrectableBlock(layer, i, str(exc)) from None
            failed.append(i)
    return data, failed


def _berlekamp_massey(synd: list[int]) -> list[int]:
    """Error locator Lambda(x), lowest degree first, Lambda[0] = 1."""
    lam = [1]
    prev = [1]
    ell = 0
    m = 1
    b = 1
    for r, s in enumerate(synd):
        delta = s
        for i in range(1, ell + 1):
            if i < len(lam):
                delta ^= gf.mul(lam[i], synd[r - i])
        if delta == 0:
            m += 1
            continue
        coef = gf.div(delta, b)
        shifted = [0] * m + [gf.mul(coef, c) for c in prev]
        new = lam + [0] * max(0, len(shifted) - len(lam))
        for i, c in enumerate(shifted):
            new[i] ^= c
        if 2 * ell <= r:
            prev, b, ell, m = lam, delta, r + 1 - ell, 1
        else:
            m += 1
        lam = new
    while len(lam) > 1 and lam[-1] == 0:
        lam.pop()
    return lam


def rs_decode(code: RsCode, received) -> tuple[bytes, int]:
    """Correct up to ``t`` byte errors; return ``(data, corrections)``.

    Raises :class:`UncorrectableBlock` when the locator has the wrong number
    of roots inside the (shortened) codeword or the corrected word still has a
    nonzero syndrome.
    """
    word = list(bytes(received))
    if len(word) != code.n:
        raise WrongBlockLength(f"expected {code.n} bytes, got {len(word)}")
    synd = syndromes(code, word)
    if not any(synd):
        return bytes(word[:code.k]), 0

    lam = _berlekamp_massey(synd)
    nerr = len(lam) - 1
    if nerr > code.t:
        raise UncorrectableBlock(reason=f"locator degree {nerr} exceeds capability {code.t}")

    # Chien search: position p (from the start) has locator X = alpha^(n-1-p)
    positions = []
    for p in range(code.n):
        xinv = gf.pow_(2, (255 - (code.n - 1 - p)) % 255)
        val = 0
        for c in reversed(lam):
            val = gf.mul(val, xinv) ^ c
        if val == 0:
            positions.append(p)
    if len(positions) != nerr:
        raise UncorrectableBlock(reason=f"found {len(positions)} roots for {nerr} errors")

    # Forney: Omega(x) = S(x) Lambda(x) mod x^nsym, lowest degree first
    omega = [0] * code.nsym
    for i, s in enumerate(synd):
        for j, lj in enumerate(lam):
            if i + j < code.nsym:
                omega[i + j] ^= gf.mul(s, lj)
    for p in positions:
        x = gf.pow_(2, code.n - 1 - p)
        xinv = gf.inv(x)
        num = 0
        for c in reversed(omega):
            num = gf.mul(num, xinv) ^ c
        # formal derivative of Lambda: odd-degree terms survive
        den = 0
        for j in range(1, len(lam), 2):
            den ^= gf.mul(lam[j], gf.pow_(xinv, j - 1))
        if den == 0:
            raise UncorrectableBlock(reason="zero Forney denominator")
        mag = gf.mul(gf.pow_(x, 1 - code.fcr), gf.div(num, den))
        word[p] ^= mag

    if any(syndromes(code, word)):
        raise UncorrectableBlock(reason="nonzero syndrome after correction")
    return bytes(word[:code.k]), nerr


# --- interleaver ---------------------------------------------------------

@dataclass(frozen=True)
class InterleaverConfig:
    """Symbol ``t`` goes to branch ``t % 3`` and leaves ``3 * delay * branch`` positions later.

    The output is ``6 * delay`` symbols longer than the input; unused slots
    hold zero.
    """

    delay: int = 20

    def __post_init__(self):
        if self.delay < 0:
            raise ValueError("interleaver delay must be non-negative")

    @property
    def flush(self) -> int:
        return (BRANCHES - 1) * BRANCHES * self.delay

    def offset(self, t: int) -> int:
        return BRANCHES * self.delay * (t % BRANCHES)


def _positions(cfg: InterleaverConfig, n: int) -> np.ndarray:
    t = np.arange(n)
    return t + BRANCHES * cfg.delay * (t % BRANCHES)


def interleave3(cfg: InterleaverConfig, data) -> bytes:
    src = np.frombuffer(bytes(data), dtype=np.uint8)
    out = np.zeros(src.size + cfg.flush, dtype=np.uint8)
    out[_positions(cfg, src.size)] = src
    return out.tobytes()


def deinterleave3(cfg: InterleaverConfig, data) -> bytes:
    src = np.frombuffer(bytes(data), dtype=np.uint8)
    if src.size < cfg.flush:
        raise MalformedFrame(f"interleaved stream shorter than its {cfg.flush}-symbol flush")
    return src[_positions(cfg, src.size - cfg.flush)].tobytes()


# --- two-layer frame -----------------------------------------------------

@dataclass(frozen=True)
class CircConfig:
    outer: RsCode = OUTER
    inner: RsCode = INNER
    interleaver: InterleaverConfig = field(default_factory=InterleaverConfig)

    def outer_blocks(self, payload_len: int) -> int:
        return -(-(payload_len + 2) // self.outer.k)

    def inner_blocks(self, outer_blocks: int) -> int:
        return -(-(outer_blocks * self.outer.n + self.interleaver.flush) // self.inner.k)

    def encoded_size(self, payload_len: int) -> int:
        return self.inner_blocks(self.outer_blocks(payload_len)) * self.inner.n

    def header_blocks(self) -> int:
        """Inner codewords needed before the first outer block can be decoded."""
        last = max(t + self.interleaver.offset(t) for t in range(self.outer.n))
        return -(-(last + 1) // self.inner.k)


DEFAULT_CIRC = CircConfig()


def circ_encode(payload, cfg: CircConfig = DEFAULT_CIRC) -> bytes:
    payload = bytes(payload)
    if len(payload) > MAX_PAYLOAD:
        raise PayloadTooLarge(f"{len(payload)} bytes exceeds {MAX_PAYLOAD}")
    nout = cfg.outer_blocks(len(payload))
    framed = len(payload).to_bytes(2, "big") + payload
    framed += bytes(nout * cfg.outer.k - len(framed))
    outer = rs_encode_blocks(cfg.outer, np.frombuffer(framed, dtype=np.uint8).reshape(nout, cfg.outer.k))
    mixed = interleave3(cfg.interleaver, outer.tobytes())
    nin = cfg.inner_blocks(nout)
    mixed += bytes(nin * cfg.inner.k - len(mixed))
    inner = rs_encode_blocks(cfg.inner, np.frombuffer(mixed, dtype=np.uint8).reshape(nin, cfg.inner.k))
    return inner.tobytes()


def _inner_decode(stream: bytes, cfg: CircConfig, nblocks: int) -> bytes:
    words = np.frombuffer(stream[:nblocks * cfg.inner.n], dtype=np.uint8).reshape(nblocks, cfg.inner.n)
    data, failed = rs_decode_blocks(cfg.inner, words, "inner", strict=False)
    if failed:
        log.debug("inner blocks %s passed through uncorrected", failed)
    return data.tobytes()


def circ_peek_length(prefix, cfg: CircConfig = DEFAULT_CIRC) -> int:
    """Payload length announced by a frame, read from its first ``header_blocks()`` inner codewords."""
    prefix = bytes(prefix)
    nblk = cfg.header_blocks()
    if len(prefix) < nblk * cfg.inner.n:
        raise MalformedFrame(f"need {nblk * cfg.inner.n} bytes to read the frame length")
    mixed = np.frombuffer(_inner_decode(prefix, cfg, nblk), dtype=np.uint8)
    first = mixed[_positions(cfg.interleaver, cfg.outer.n)]
    data, _ = rs_decode_blocks(cfg.outer, first[None, :], "outer")
    return int.from_bytes(data[0, :2].tobytes(), "big")


def circ_decode(stream, cfg: CircConfig = DEFAULT_CIRC) -> bytes:
    stream = bytes(stream)
    if not stream or len(stream) % cfg.inner.n:
        raise MalformedFrame(f"stream length {len(stream)} is not a positive multiple of {cfg.inner.n}")
    nin = len(stream) // cfg.inner.n
    # exactly one outer block count maps onto nin inner blocks, if any
    nout = (nin * cfg.inner.k - cfg.interleaver.flush) // cfg.outer.n
    if nout < 1 or cfg.inner_blocks(nout) != nin:
        raise MalformedFrame(f"{nin} inner blocks do not match any frame geometry")
    mixed = _inner_decode(stream, cfg, nin)
    outer = deinterleave3(cfg.interleaver, mixed[:nout * cfg.outer.n + cfg.interleaver.flush])
    words = np.frombuffer(outer, dtype=np.uint8).reshape(nout, cfg.outer.n)
    data = rs_decode_blocks(cfg.outer, words, "outer")[0].tobytes()
    length = int.from_bytes(data[:2], "big")
    if length > len(data) - 2:
        raise MalformedFrame(f"frame announces {length} bytes but holds {len(data) - 2}")
    return data[2:2 + length]
