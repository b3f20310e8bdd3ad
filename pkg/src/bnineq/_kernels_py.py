"""Pure numpy versions of the compiled kernels in ``_ckernels.pyx``."""

import numpy as np

_CHUNK = 1 << 20


def eval_trig(coeffs, xs):
    coeffs = np.ascontiguousarray(coeffs, dtype=np.complex128)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    n = (coeffs.size - 1) // 2
    ks = np.arange(-n, n + 1)
    out = np.empty(xs.size, dtype=np.complex128)
    step = max(1, _CHUNK // max(1, coeffs.size))
    for lo in range(0, xs.size, step):
        x = xs[lo:lo + step]
        out[lo:lo + step] = np.exp(1j * np.outer(x, ks)) @ coeffs
    return out


def hilbert_window(values, offset, m_lo, m_hi, shift):
    values = np.ascontiguousarray(values, dtype=np.complex128)
    ks = offset + np.arange(values.size)
    ms = np.arange(m_lo, m_hi + 1)
    out = np.empty(ms.size, dtype=np.complex128)
    step = max(1, _CHUNK // max(1, values.size))
    for lo in range(0, ms.size, step):
        d = (ms[lo:lo + step, None] - ks[None, :]).astype(np.float64) + shift
        zero = d == 0.0
        d[zero] = 1.0
        w = 1.0 / d
        w[zero] = 0.0
        out[lo:lo + step] = w @ values
    return out


def sinc_synth(values, offset, xs):
    values = np.ascontiguousarray(values, dtype=np.complex128)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ks = offset + np.arange(values.size)
    sgn = np.where(ks % 2 == 0, 1.0, -1.0)
    out = np.empty(xs.size, dtype=np.complex128)
    step = max(1, _CHUNK // max(1, values.size))
    for lo in range(0, xs.size, step):
        t = xs[lo:lo + step, None] - np.pi * ks[None, :]
        near = np.abs(t) < 1e-6
        safe = np.where(near, 1.0, t)
        sc = np.where(near, 1.0 - t * t / 6.0, np.sin(safe) / safe)
        out[lo:lo + step] = (sc * sgn) @ values
    return out
