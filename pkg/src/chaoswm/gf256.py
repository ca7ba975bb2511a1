"""GF(2^8) arithmetic over x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator alpha = 2."""

PRIM = 0x11D

EXP = [0] * 512
LOG = [0] * 256
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= PRIM
for _i in range(255, 512):
    EXP[_i] = EXP[_i - 255]
del _x, _i


def mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a] + LOG[b]]


def div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(256)")
    if a == 0:
        return 0
    return EXP[(LOG[a] - LOG[b]) % 255]


def inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(256)")
    return EXP[255 - LOG[a]]


def pow_(a: int, e: int) -> int:
    if a == 0:
        return 0 if e else 1
    return EXP[(LOG[a] * e) % 255]


# Polynomials are lists of coefficients, highest degree first.

def poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for j, qj in enumerate(q):
        if qj == 0:
            continue
        lq = LOG[qj]
        for i, pi in enumerate(p):
            if pi:
                out[i + j] ^= EXP[LOG[pi] + lq]
    return out


def poly_eval(p: list[int], x: int) -> int:
    y = 0
    for c in p:
        y = mul(y, x) ^ c
    return y


_MUL_TABLE = None


def mul_table():
    """256x256 numpy product table, built on first use."""
    global _MUL_TABLE
    if _MUL_TABLE is None:
        import numpy as np

        exp = np.array(EXP, dtype=np.uint8)
        log = np.array(LOG, dtype=np.int64)
        a = np.arange(256)
        table = exp[(log[:, None] + log[None, :]) % 255]
        table[a == 0, :] = 0
        table[:, a == 0] = 0
        _MUL_TABLE = table
    return _MUL_TABLE
