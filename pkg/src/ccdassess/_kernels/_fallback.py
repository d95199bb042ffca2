"""Pure numpy versions of the compiled kernels.

Each function performs the same floating-point operations in the same order
as its counterpart in ``_core.pyx``, so both backends agree bit-for-bit.
"""

import numpy as np

_M32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_PHILOX_M0 = np.uint64(0xD2E7470EE14C6C93)
_PHILOX_M1 = np.uint64(0xCA5A826395121157)
_PHILOX_W0 = np.uint64(0x9E3779B97F4A7C15)
_PHILOX_W1 = np.uint64(0xBB67AE8584CAA73B)


def _window_pass(src, h, axis, compensated):
    """Shifted accumulation along ``axis`` over offsets -h..h in ascending order."""
    n = src.shape[axis]
    s = np.zeros_like(src)
    c = np.zeros_like(src) if compensated else None
    for k in range(-h, h + 1):
        lo, hi = max(0, -k), min(n, n - k)
        if lo >= hi:
            continue
        if axis == 1:
            dst, x = (slice(None), slice(lo, hi)), src[:, lo + k:hi + k]
        else:
            dst, x = (slice(lo, hi), slice(None)), src[lo + k:hi + k, :]
        if compensated:
            sv = s[dst]
            t = sv + x
            big = np.abs(sv) >= np.abs(x)
            c[dst] += np.where(big, (sv - t) + x, (x - t) + sv)
            s[dst] = t
        else:
            s[dst] += x
    if compensated:
        return s + c
    return s


def box_sum(arr, half_rows, half_cols, compensated=False):
    src = np.ascontiguousarray(arr, dtype=np.float64)
    tmp = _window_pass(src, half_cols, 1, compensated)
    return _window_pass(tmp, half_rows, 0, compensated)


def _mulhilo(a, b):
    a_lo, a_hi = a & _M32, a >> _S32
    b_lo, b_hi = b & _M32, b >> _S32
    p0 = a_lo * b_lo
    p1 = a_lo * b_hi
    p2 = a_hi * b_lo
    p3 = a_hi * b_hi
    mid = (p0 >> _S32) + (p1 & _M32) + (p2 & _M32)
    hi = p3 + (p1 >> _S32) + (p2 >> _S32) + (mid >> _S32)
    return hi, a * b


def philox4x64(n, draw, key0, key1):
    c0 = np.arange(n, dtype=np.uint64)
    c1 = np.full(n, draw, dtype=np.uint64)
    c2 = np.zeros(n, dtype=np.uint64)
    c3 = np.zeros(n, dtype=np.uint64)
    k0, k1 = np.uint64(key0), np.uint64(key1)
    with np.errstate(over="ignore"):
        for r in range(10):
            if r > 0:
                k0 = k0 + _PHILOX_W0
                k1 = k1 + _PHILOX_W1
            hi0, lo0 = _mulhilo(_PHILOX_M0, c0)
            hi1, lo1 = _mulhilo(_PHILOX_M1, c2)
            c0, c1, c2, c3 = hi1 ^ c1 ^ k0, lo1, hi0 ^ c3 ^ k1, lo0
    return np.stack([c0, c1, c2, c3], axis=1)


def points_in_ring(px, py, xs, ys, tol):
    x = np.ascontiguousarray(px, dtype=np.float64)
    y = np.ascontiguousarray(py, dtype=np.float64)
    vx = np.asarray(xs, dtype=np.float64)
    vy = np.asarray(ys, dtype=np.float64)
    inside = np.zeros(x.shape, dtype=bool)
    edge = np.zeros(x.shape, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        for e in range(len(vx) - 1):
            x1, y1, x2, y2 = vx[e], vy[e], vx[e + 1], vy[e + 1]
            dx = x2 - x1
            dy = y2 - y1
            cross = dx * (y - y1) - dy * (x - x1)
            seglen = np.sqrt(dx * dx + dy * dy)
            edge |= ((np.abs(cross) <= tol * seglen)
                     & (x >= min(x1, x2) - tol) & (x <= max(x1, x2) + tol)
                     & (y >= min(y1, y2) - tol) & (y <= max(y1, y2) + tol))
            straddle = (y1 > y) != (y2 > y)
            if straddle.any():
                xint = x1 + (y - y1) * dx / dy
                inside ^= straddle & (x < xint)
    return (inside | edge).astype(np.uint8)
