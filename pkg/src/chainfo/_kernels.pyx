# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled transform kernels: spherical Bessel j_l (l = 0..4) and the
amplitude contraction out[i] = sum_j f[j] * j_l(p[i] * r[j]).

Mirrors _kernels_py exactly: power series below x = max(0.5, l) where the
closed trig forms start to cancel, trig forms above.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

BACKEND = "cython"

cdef double[5] _DFACT = [1.0, 3.0, 15.0, 105.0, 945.0]


cdef inline double _jl(int l, double x) noexcept nogil:
    cdef double s, c, inv, inv2, term, total, x2, cutoff
    cdef int k
    cutoff = 0.5 if l == 0 else <double>l
    if x < cutoff:
        x2 = x * x
        term = 1.0
        for k in range(l):
            term *= x
        term /= _DFACT[l]
        total = term
        for k in range(1, 19):
            term *= -0.5 * x2 / (k * (2 * l + 2 * k + 1))
            total += term
        return total
    s = sin(x)
    c = cos(x)
    inv = 1.0 / x
    if l == 0:
        return s * inv
    if l == 1:
        return (s * inv - c) * inv
    if l == 2:
        return (3.0 * inv * inv - 1.0) * s * inv - 3.0 * c * inv * inv
    inv2 = inv * inv
    if l == 3:
        return (15.0 * inv2 - 6.0) * s * inv2 - (15.0 * inv2 - 1.0) * c * inv
    return (105.0 * inv2 * inv2 - 45.0 * inv2 + 1.0) * s * inv - \
        (105.0 * inv2 - 10.0) * c * inv2


def sph_bessel_j_array(int l, x):
    """j_l over an array of non-negative arguments."""
    cdef cnp.ndarray[double, ndim=1] xa = \
        np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(xa)
    cdef Py_ssize_t i, n = xa.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _jl(l, xa[i])
    return out


def transform_contract(int l, p, r, f):
    """out[i] = sum_j f[j] * j_l(p[i] * r[j])."""
    cdef cnp.ndarray[double, ndim=1] pa = \
        np.ascontiguousarray(p, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ra = \
        np.ascontiguousarray(r, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] fa = \
        np.ascontiguousarray(f, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] out = np.empty_like(pa)
    cdef Py_ssize_t i, j, np_ = pa.shape[0], nr = ra.shape[0]
    cdef double acc, pi
    with nogil:
        for i in range(np_):
            pi = pa[i]
            acc = 0.0
            for j in range(nr):
                acc += fa[j] * _jl(l, pi * ra[j])
            out[i] = acc
    return out
