"""GF(256) arithmetic via log/antilog tables.

Addition is bitwise XOR.  Multiplication uses logarithm tables built once at
import time from generator 0x02 under the reduction polynomial
x^8 + x^4 + x^3 + x^2 + 1 (0x11D).  Any irreducible degree-8 polynomial would
work, but both peers must agree on it for coefficients to interoperate.

All functions are pure and the tables are immutable after import, so the
module is safe to use from any number of threads.
"""

REDUCTION_POLY = 0x11D
GENERATOR = 0x02


def _build_tables() -> tuple[list[int], list[int]]:
    # exp is doubled so mul can skip the mod-255 on the summed logs.
    exp = [0] * 510
    log = [0] * 256
    x = 1
    for i in range(255):
        exp[i] = x
        log[x] = i
        x <<= 1  # multiply by the generator 0x02
        if x & 0x100:
            x ^= REDUCTION_POLY
    for i in range(255, 510):
        exp[i] = exp[i - 255]
    return exp, log


_EXP, _LOG = _build_tables()


def add(a: int, b: int) -> int:
    """Field addition: XOR of the two bytes (self-inverse)."""
    return a ^ b


def mul(a: int, b: int) -> int:
    """Field multiplication through the log/antilog tables."""
    if a == 0 or b == 0:
        return 0
    return _EXP[_LOG[a] + _LOG[b]]


def inv(a: int) -> int:
    """Multiplicative inverse of a nonzero element.

    Raises ZeroDivisionError for 0, which has no inverse.
    """
    if a == 0:
        raise ZeroDivisionError("0 has no multiplicative inverse in GF(256)")
    return _EXP[255 - _LOG[a]]


# One 256-byte product row per coefficient lets axpy run the multiply through
# bytes.translate (C speed) instead of a per-byte Python loop.
_MUL_ROWS = [bytes(mul(c, v) for v in range(256)) for c in range(256)]


def axpy(dst: bytes, src: bytes, coeff: int) -> bytes:
    """Return dst[i] XOR coeff*src[i] for all i.

    dst and src must have equal length.  This is the only bulk primitive;
    callers combine whole packets through it rather than looping over mul.
    """
    if len(dst) != len(src):
        raise ValueError(f"length mismatch: {len(dst)} != {len(src)}")
    if coeff == 0 or not src:
        return bytes(dst)
    prod = bytes(src).translate(_MUL_ROWS[coeff])
    n = len(dst)
    return (int.from_bytes(dst, "big") ^ int.from_bytes(prod, "big")).to_bytes(n, "big")
