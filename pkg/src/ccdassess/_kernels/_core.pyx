# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Arithmetic order mirrors ``_fallback`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt
from libc.stdint cimport uint64_t

cnp.import_array()

cdef uint64_t M32 = 0xFFFFFFFFULL
cdef uint64_t PHILOX_M0 = 0xD2E7470EE14C6C93ULL
cdef uint64_t PHILOX_M1 = 0xCA5A826395121157ULL
cdef uint64_t PHILOX_W0 = 0x9E3779B97F4A7C15ULL
cdef uint64_t PHILOX_W1 = 0xBB67AE8584CAA73BULL


cdef void _hsum(const double[:, ::1] src, double[:, ::1] dst, Py_ssize_t h,
                bint compensated) noexcept nogil:
    cdef Py_ssize_t ny = src.shape[0], nx = src.shape[1]
    cdef Py_ssize_t i, j, k, k0, k1
    cdef double s, c, t, x
    for i in range(ny):
        for j in range(nx):
            k0 = j - h
            if k0 < 0:
                k0 = 0
            k1 = j + h + 1
            if k1 > nx:
                k1 = nx
            s = 0.0
            c = 0.0
            if compensated:
                for k in range(k0, k1):
                    x = src[i, k]
                    t = s + x
                    if fabs(s) >= fabs(x):
                        c = c + ((s - t) + x)
                    else:
                        c = c + ((x - t) + s)
                    s = t
                dst[i, j] = s + c
            else:
                for k in range(k0, k1):
                    s = s + src[i, k]
                dst[i, j] = s


cdef void _vsum(const double[:, ::1] src, double[:, ::1] dst, Py_ssize_t h,
                bint compensated) noexcept nogil:
    cdef Py_ssize_t ny = src.shape[0], nx = src.shape[1]
    cdef Py_ssize_t i, j, k, k0, k1
    cdef double s, c, t, x
    for i in range(ny):
        k0 = i - h
        if k0 < 0:
            k0 = 0
        k1 = i + h + 1
        if k1 > ny:
            k1 = ny
        for j in range(nx):
            s = 0.0
            c = 0.0
            if compensated:
                for k in range(k0, k1):
                    x = src[k, j]
                    t = s + x
                    if fabs(s) >= fabs(x):
                        c = c + ((s - t) + x)
                    else:
                        c = c + ((x - t) + s)
                    s = t
                dst[i, j] = s + c
            else:
                for k in range(k0, k1):
                    s = s + src[k, j]
                dst[i, j] = s


def box_sum(arr, Py_ssize_t half_rows, Py_ssize_t half_cols, bint compensated=False):
    """Clipped-window sum: row pass (cols) first, then column pass (rows)."""
    cdef double[:, ::1] src = np.ascontiguousarray(arr, dtype=np.float64)
    tmp = np.empty_like(np.asarray(src))
    out = np.empty_like(tmp)
    cdef double[:, ::1] t = tmp
    cdef double[:, ::1] o = out
    with nogil:
        _hsum(src, t, half_cols, compensated)
        _vsum(t, o, half_rows, compensated)
    return out


cdef inline void _mulhilo(uint64_t a, uint64_t b, uint64_t* hi, uint64_t* lo) noexcept nogil:
    cdef uint64_t a_lo = a & M32, a_hi = a >> 32
    cdef uint64_t b_lo = b & M32, b_hi = b >> 32
    cdef uint64_t p0 = a_lo * b_lo
    cdef uint64_t p1 = a_lo * b_hi
    cdef uint64_t p2 = a_hi * b_lo
    cdef uint64_t p3 = a_hi * b_hi
    cdef uint64_t mid = (p0 >> 32) + (p1 & M32) + (p2 & M32)
    hi[0] = p3 + (p1 >> 32) + (p2 >> 32) + (mid >> 32)
    lo[0] = a * b


def philox4x64(Py_ssize_t n, uint64_t draw, uint64_t key0, uint64_t key1):
    """Philox4x64-10 blocks for counters ``(i, draw, 0, 0)``, ``i in range(n)``."""
    out = np.empty((n, 4), dtype=np.uint64)
    cdef uint64_t[:, ::1] o = out
    cdef Py_ssize_t i
    cdef int r
    cdef uint64_t c0, c1, c2, c3, k0, k1, hi0, lo0, hi1, lo1
    with nogil:
        for i in range(n):
            c0 = <uint64_t>i
            c1 = draw
            c2 = 0
            c3 = 0
            k0 = key0
            k1 = key1
            for r in range(10):
                if r > 0:
                    k0 = k0 + PHILOX_W0
                    k1 = k1 + PHILOX_W1
                _mulhilo(PHILOX_M0, c0, &hi0, &lo0)
                _mulhilo(PHILOX_M1, c2, &hi1, &lo1)
                c0 = hi1 ^ c1 ^ k0
                c1 = lo1
                c2 = hi0 ^ c3 ^ k1
                c3 = lo0
            o[i, 0] = c0
            o[i, 1] = c1
            o[i, 2] = c2
            o[i, 3] = c3
    return out


def points_in_ring(px, py, xs, ys, double tol):
    """Even-odd membership of points; points within ``tol`` of an edge count as inside."""
    cdef const double[::1] X = np.ascontiguousarray(px, dtype=np.float64)
    cdef const double[::1] Y = np.ascontiguousarray(py, dtype=np.float64)
    cdef const double[::1] vx = np.ascontiguousarray(xs, dtype=np.float64)
    cdef const double[::1] vy = np.ascontiguousarray(ys, dtype=np.float64)
    cdef Py_ssize_t n = X.shape[0], m = vx.shape[0] - 1
    out = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t p, e
    cdef double x, y, x1, y1, x2, y2, dx, dy, cross, seglen, xint
    cdef bint inside, edge
    with nogil:
        for p in range(n):
            x = X[p]
            y = Y[p]
            inside = False
            edge = False
            for e in range(m):
                x1 = vx[e]
                y1 = vy[e]
                x2 = vx[e + 1]
                y2 = vy[e + 1]
                dx = x2 - x1
                dy = y2 - y1
                cross = dx * (y - y1) - dy * (x - x1)
                seglen = sqrt(dx * dx + dy * dy)
                if (fabs(cross) <= tol * seglen
                        and x >= min(x1, x2) - tol and x <= max(x1, x2) + tol
                        and y >= min(y1, y2) - tol and y <= max(y1, y2) + tol):
                    edge = True
                    break
                if (y1 > y) != (y2 > y):
                    xint = x1 + (y - y1) * dx / dy
                    if x < xint:
                        inside = not inside
            o[p] = 1 if (inside or edge) else 0
    return out
