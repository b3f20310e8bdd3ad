# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops.

Every function here has a numpy twin in :mod:`bnineq._kernels_py` with the
same signature; :mod:`bnineq._backend` picks one at import time.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, fabs, M_PI

cnp.import_array()


def eval_trig(const double complex[::1] coeffs, const double[::1] xs):
    """Evaluate sum_k c_k exp(i k x) for k = -n..n at each x."""
    cdef Py_ssize_t ncoef = coeffs.shape[0]
    cdef Py_ssize_t n = (ncoef - 1) // 2
    cdef Py_ssize_t npts = xs.shape[0]
    cdef Py_ssize_t i, k
    cdef double complex z, zc, zk, zkc, acc
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] res = out
    for i in range(npts):
        z = cos(xs[i]) + 1j * sin(xs[i])
        zc = z.conjugate()
        acc = coeffs[n]
        zk = 1.0
        zkc = 1.0
        for k in range(1, n + 1):
            # re-anchor every 64 steps to keep the recurrence error flat
            if k % 64 == 0:
                zk = cos(k * xs[i]) + 1j * sin(k * xs[i])
                zkc = zk.conjugate()
            else:
                zk = zk * z
                zkc = zkc * zc
            acc = acc + coeffs[n + k] * zk + coeffs[n - k] * zkc
        res[i] = acc
    return out


def hilbert_window(const double complex[::1] values, long offset,
                   long m_lo, long m_hi, double shift):
    """sum_k a_k / (m - k + shift) for m in [m_lo, m_hi]; k == m skipped when shift == 0."""
    cdef Py_ssize_t L = values.shape[0]
    cdef long m, k
    cdef Py_ssize_t j
    cdef double d
    cdef double complex acc
    out = np.empty(m_hi - m_lo + 1, dtype=np.complex128)
    cdef double complex[::1] res = out
    for m in range(m_lo, m_hi + 1):
        acc = 0.0
        for j in range(L):
            k = offset + j
            d = <double>(m - k) + shift
            if d == 0.0:
                continue
            acc = acc + values[j] / d
        res[m - m_lo] = acc
    return out


def sinc_synth(const double complex[::1] values, long offset, const double[::1] xs):
    """f(x) = sum_k (-1)^k a_k sinc(x - pi k)."""
    cdef Py_ssize_t L = values.shape[0]
    cdef Py_ssize_t npts = xs.shape[0]
    cdef Py_ssize_t i, j
    cdef long k
    cdef double x, t, sgn
    cdef double complex acc
    out = np.empty(npts, dtype=np.complex128)
    cdef double complex[::1] res = out
    for i in range(npts):
        x = xs[i]
        acc = 0.0
        for j in range(L):
            k = offset + j
            t = x - M_PI * k
            sgn = -1.0 if (k & 1) else 1.0
            if fabs(t) < 1e-6:
                acc = acc + values[j] * sgn * (1.0 - t * t / 6.0)
            else:
                acc = acc + values[j] * sgn * sin(t) / t
        res[i] = acc
    return out
