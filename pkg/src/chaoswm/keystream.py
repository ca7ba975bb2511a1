"""Key material and every strategy derived from it.

All strategies come from one logistic-map orbit ``x <- mu*x*(1-x)`` evaluated
in IEEE double precision; each iterate yields the bit ``x >= 0.5``.
"""

import math
import struct
from dataclasses import dataclass, replace
from itertools import islice
from typing import Iterator

import numpy as np

from .chaos import Strategy
from .errors import KeyFormatError, LengthNotMultipleOfGroup, StrategyExhausted
from .payload import as_bits

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
PLAN_GROUP = 10  # bits per placement-strategy term, i.e. terms in [0, 1024)


@dataclass(frozen=True)
class ChaosKey:
    mu: float = 3.999999
    x0: float = 0.65
    discard: int = 0
    iterations: int = 20000  # logistic bits feeding the encryption strategy
    u0: int | None = 1
    triplet_seeds: tuple[int, int, int] = (11, 23, 1)
    msb_set: tuple[int, ...] = (4, 5, 6, 7)
    auth_msc_digest: int | None = None

    def __post_init__(self):
        if not 0.0 < self.mu <= 4.0:
            raise ValueError(f"mu must lie in (0, 4], got {self.mu}")
        if not 0.0 < self.x0 < 1.0:
            raise ValueError(f"x0 must lie strictly inside (0, 1), got {self.x0}")
        if self.discard < 0 or self.iterations < 0:
            raise ValueError("discard and iterations must be non-negative")
        if self.triplet_seeds[2] not in (1, 2):
            raise ValueError("bit-plane seed must be 1 or 2")

    def fingerprint(self) -> str:
        """Short stable identifier, safe to print in reports."""
        return f"{fnv1a64(dump_key(self).encode()):016x}"


def iter_logistic_bits(key: ChaosKey) -> Iterator[int]:
    mu, x = key.mu, key.x0
    for _ in range(key.discard):
        x = mu * x * (1.0 - x)
    while True:
        x = mu * x * (1.0 - x)
        yield 1 if x >= 0.5 else 0


def logistic_bits(key: ChaosKey, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError("bit count must be non-negative")
    return np.fromiter(islice(iter_logistic_bits(key), n), dtype=np.uint8, count=n)


def group_width(n: int) -> int:
    """Bits per strategy term for a domain of size ``n``; ceil(log2 n), at least 1."""
    return max(1, math.ceil(math.log2(n))) if n > 1 else 1


def bits_to_strategy(bits, n: int) -> Strategy:
    """Read MSB-first groups of ``group_width(n)`` bits, reduce each modulo ``n``."""
    bits = as_bits(bits)
    g = group_width(n)
    if bits.size % g:
        raise LengthNotMultipleOfGroup(f"{bits.size} bits is not a multiple of the group width {g}")
    values = bits.reshape(-1, g).astype(np.int64) @ (1 << np.arange(g - 1, -1, -1))
    return Strategy(values % n, n)


def encryption_strategy(key: ChaosKey, n: int) -> Strategy:
    """Strategy over ``n`` cells from ``key.iterations`` logistic bits (trimmed to whole groups)."""
    g = group_width(n)
    usable = key.iterations - key.iterations % g
    return bits_to_strategy(logistic_bits(key, usable), n)


def plan_strategy(key: ChaosKey) -> Strategy:
    """Unbounded stream of 10-bit groups of the same orbit, used for pixel placement."""

    def terms():
        bits = iter_logistic_bits(key)
        while True:
            v = 0
            for b in islice(bits, PLAN_GROUP):
                v = (v << 1) | b
            yield v

    return Strategy(terms, 1 << PLAN_GROUP)


def iter_triplets(s: Strategy, seeds=(11, 23, 1)) -> Iterator[tuple[int, int, int]]:
    """Yield ``(row, column, plane)`` with plane in {1, 2}.

    Triplet 0 is the seed itself; every later triplet consumes three terms.
    The bit-plane seed is given in its reported form {1, 2}.
    """
    x, y, z = seeds[0] % 255, seeds[1] % 255, (seeds[2] - 1) % 2
    terms = iter(s)
    n = 0
    while True:
        yield x, y, z + 1
        chunk = list(islice(terms, 3))
        if len(chunk) < 3:
            return
        a, b, c = chunk
        x = (2 * x + a + n) % 255
        y = (2 * y + b + n) % 255
        z = (2 * z + c + n) % 2
        n += 1


def triplet_stream(s: Strategy, key: ChaosKey, n: int) -> list[tuple[int, int, int]]:
    if s.finite and len(s) < 3 * n:
        raise StrategyExhausted(len(s) // 3)
    return list(islice(iter_triplets(s, key.triplet_seeds), n))


def u_strategy(s: Strategy, u0: int | None, m: int, n: int) -> Strategy:
    """Embedding strategy ``U[k+1] = S[k+1] + 2 U[k] + k (mod m)``; returns ``n + 1`` terms.

    ``U[0]`` is ``S[0]`` when ``u0`` is None.
    """
    terms = s.take(n + 1).tolist()
    u = np.empty(n + 1, dtype=np.int64)
    cur = (terms[0] if u0 is None else u0) % m
    u[0] = cur
    for k in range(n):
        cur = (terms[k + 1] + 2 * cur + k) % m
        u[k + 1] = cur
    return Strategy(u, m)


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def authenticated_key(key: ChaosKey, msc_bits) -> ChaosKey:
    """Fold a digest of the cover's most significant bits into ``x0``.

    Bits are packed MSB-first before hashing, so empty input hashes to the
    FNV-1a offset basis.
    """
    digest = fnv1a64(np.packbits(as_bits(msc_bits)).tobytes())
    x0 = math.fmod(key.x0 + digest / 2.0**64, 1.0)
    x0 = min(max(x0, 2.0**-53), 1.0 - 2.0**-53)
    return replace(key, x0=x0, auth_msc_digest=digest)


# --- key file ------------------------------------------------------------

_REAL_FIELDS = ("mu", "x0")


def _float_to_hex(v: float) -> str:
    return f"0x{struct.unpack('>Q', struct.pack('>d', v))[0]:016x}"


def _hex_to_float(s: str) -> float:
    return struct.unpack(">d", struct.pack(">Q", int(s, 16)))[0]


def dump_key(key: ChaosKey) -> str:
    lines = []
    for name in _REAL_FIELDS:
        v = getattr(key, name)
        lines.append(f"{name} = {v!r}")
        lines.append(f"{name}.hex = {_float_to_hex(v)}")
    lines += [
        f"discard = {key.discard}",
        f"iterations = {key.iterations}",
        f"u0 = {'none' if key.u0 is None else key.u0}",
        f"triplet_seeds = {','.join(map(str, key.triplet_seeds))}",
        f"msb_set = {','.join(map(str, key.msb_set))}",
        "auth_msc_digest = " + ("none" if key.auth_msc_digest is None else f"0x{key.auth_msc_digest:016x}"),
    ]
    return "\n".join(lines) + "\n"


def load_key(text: str) -> ChaosKey:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise KeyFormatError(f"line {lineno}: expected 'name = value'")
        name, value = (p.strip() for p in line.split("=", 1))
        raw[name] = value
    try:
        kw = {}
        for name in _REAL_FIELDS:
            if f"{name}.hex" in raw:
                kw[name] = _hex_to_float(raw[f"{name}.hex"])
            elif name in raw:
                kw[name] = float(raw[name])
        for name in ("discard", "iterations"):
            if name in raw:
                kw[name] = int(raw[name])
        if "u0" in raw:
            kw["u0"] = None if raw["u0"].lower() == "none" else int(raw["u0"])
        if "triplet_seeds" in raw:
            kw["triplet_seeds"] = tuple(int(v) for v in raw["triplet_seeds"].split(","))
        if "msb_set" in raw:
            kw["msb_set"] = tuple(int(v) for v in raw["msb_set"].split(","))
        if "auth_msc_digest" in raw:
            v = raw["auth_msc_digest"]
            kw["auth_msc_digest"] = None if v.lower() == "none" else int(v, 0)
        return ChaosKey(**kw)
    except (ValueError, TypeError) as exc:
        raise KeyFormatError(str(exc)) from None
