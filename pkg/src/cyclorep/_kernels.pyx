# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: bounded form sieving and residue images."""

cdef extern from *:
    bint mul_ovf "__builtin_mul_overflow"(long long a, long long b, long long *res) nogil
    bint add_ovf "__builtin_add_overflow"(long long a, long long b, long long *res) nogil


cdef inline int _horner(const long long[::1] c, int d, long long x, long long y,
                        long long *res) noexcept nogil:
    cdef long long h = c[d], yp = 1, t
    cdef int j
    for j in range(d - 1, -1, -1):
        if mul_ovf(yp, y, &yp):
            return 1
        if mul_ovf(h, x, &h):
            return 1
        if mul_ovf(c[j], yp, &t):
            return 1
        if add_ovf(h, t, &h):
            return 1
    res[0] = h
    return 0


def sieve_box(coeffs, long long x_lo, long long x_hi, long long radius, long long cap,
              bint height2, unsigned char[::1] out, long long fast_radius, slow_eval):
    cdef long long[::1] c
    cdef int d = len(coeffs) - 1
    cdef long long x, y, ax, ay, m, v
    cdef long long pairs = 0
    cdef int ovf
    import numpy as np
    c = np.ascontiguousarray(coeffs, dtype=np.int64)
    with nogil:
        for x in range(x_lo, x_hi + 1):
            ax = x if x >= 0 else -x
            for y in range(-radius, radius + 1):
                ay = y if y >= 0 else -y
                m = ax if ax > ay else ay
                if height2 and m < 2:
                    continue
                pairs += 1
                ovf = 1
                if m <= fast_radius:
                    ovf = _horner(c, d, x, y, &v)
                if ovf:
                    with gil:
                        pv = slow_eval(x, y)
                        if 0 <= pv <= cap:
                            out[pv] = 1
                    continue
                if 0 <= v <= cap:
                    out[v] = 1
    return pairs


def residue_image(coeffs_mod, long long modulus, unsigned char[::1] out):
    cdef long long[::1] c
    cdef int d = len(coeffs_mod) - 1
    cdef int j
    cdef long long a, b, h, yp
    import numpy as np
    c = np.ascontiguousarray(coeffs_mod, dtype=np.int64)
    with nogil:
        for a in range(modulus):
            for b in range(modulus):
                h = c[d]
                yp = 1
                for j in range(d - 1, -1, -1):
                    yp = yp * b % modulus
                    h = (h * a + c[j] * yp) % modulus
                out[h] = 1
