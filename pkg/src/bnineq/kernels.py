"""Named kernels: Dirichlet, Jackson, the Nikolskii pairing polynomial.

Also the Hardy-Littlewood proxy ``(sum a_k^p (1+k)^{p-2})^{1/p}`` for the
L_p norm of a cosine series with monotone coefficients.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .trigpoly import TrigPoly, make_poly

# exact integer convolution is used up to this output degree
JACKSON_EXACT_MAX_DEGREE = 1 << 20


def dirichlet(n: int) -> TrigPoly:
    """``D_n(x) = 1 + 2 sum_{k=1}^n cos kx``: all coefficients one on ``|k| <= n``."""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    return make_poly(np.ones(2 * n + 1))


@lru_cache(maxsize=256)
def jackson_coefficients(r: int, N: int) -> tuple[int, ...]:
    """Exact integer coefficients of ``J_{r,N}`` on ``m = -rN..rN``.

    ``r``-fold self-convolution of the all-ones window of length ``2N+1``.
    """
    if r < 1 or N < 1:
        raise DomainError(f"Jackson kernel needs r, N >= 1, got r={r}, N={N}")
    if r * N > JACKSON_EXACT_MAX_DEGREE:
        raise DomainError(f"degree rN={r * N} exceeds exact-convolution limit")
    window = np.ones(2 * N + 1, dtype=np.int64)
    # largest coefficient is below (2N+1)^(r-1); switch to Python ints on overflow risk
    wide = (r - 1) * math.log2(2 * N + 1) > 62
    acc = window.astype(object) if wide else window.copy()
    for _ in range(r - 1):
        acc = np.convolve(acc, window.astype(object) if wide else window)
    return tuple(int(v) for v in acc)


def jackson(r: int, N: int) -> TrigPoly:
    """Jackson kernel ``J_{r,N} = (sin((N+1/2)x) / sin(x/2))^r = D_N^r``, degree ``rN``."""
    coeffs = jackson_coefficients(r, N)
    return make_poly(np.array([float(v) for v in coeffs]))


def jackson_plateau_ratio(r: int, N: int, lam: float | None = None) -> float:
    """``min_{|m| <= lam N} J^_{r,N}(m) / N^{r-1}``.

    ``lam`` defaults to ``1/(2r)``.
    """
    if lam is None:
        lam = 1.0 / (2 * r)
    if not 0 < lam <= 1:
        raise DomainError(f"lambda must lie in (0, 1], got {lam}")
    width = math.floor(lam * N)
    if width < 1:
        raise DomainError(f"plateau floor(lambda N) = {width} is empty; increase N")
    coeffs = jackson_coefficients(r, N)
    center = r * N
    plateau = coeffs[center - width:center + width + 1]
    # exact integer min, then a single rounding
    return min(plateau) / float(N) ** (r - 1)


def jackson_plateau_width(r: int, N: int, fraction: float = 0.5) -> int:
    """Largest ``w`` with ``J^_{r,N}(m) >= fraction * J^_{r,N}(0)`` for all ``|m| <= w``."""
    coeffs = jackson_coefficients(r, N)
    center = r * N
    peak = coeffs[center]
    w = 0
    while w + 1 <= center and coeffs[center + w + 1] >= fraction * peak:
        w += 1
    return w


def nikolskii_q(n: int) -> TrigPoly:
    """Nikolskii pairing polynomial of degree ``2n+1``.

    ``1/(2(n+1)) + sum_{k=1}^n cos(kx)/(n-k+1) - sum_{k=1}^n cos((k+n+1)x)/k``,
    equivalently ``1/(2(n+1)) + 2 sin((n+1)x) sum_{k=1}^n sin(kx)/k``.
    Uniformly bounded in ``n``.
    """
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    d = 2 * n + 1
    c = np.zeros(2 * d + 1)
    c[d] = 1.0 / (2 * (n + 1))
    for k in range(1, n + 1):
        c[d + k] = c[d - k] = 0.5 / (n - k + 1)
        c[d + k + n + 1] = c[d - k - n - 1] = -0.5 / k
    return make_poly(c)


def nikolskii_pairing(c) -> float:
    """``int T_n Q_{2n+1}`` for ``T_n = c_0 + 2 sum c_k cos kx``, in coefficient space.

    Equals ``pi (c_0/(n+1) + 2 sum_{k=1}^n c_k/(n-k+1))``.
    """
    c = np.asarray(c, dtype=np.float64)
    n = c.size - 1
    k = np.arange(1, n + 1)
    return float(np.pi * (c[0] / (n + 1) + 2 * np.sum(c[1:] / (n - k + 1))))


def hl_norm_proxy(a, p: float) -> float:
    """``(sum_k a_k^p (1+k)^{p-2})^{1/p}`` for a nonincreasing nonnegative ``a``."""
    a = np.asarray(a, dtype=np.float64)
    if a.size == 0:
        raise DomainError("empty coefficient sequence")
    if np.any(a < 0) or np.any(np.diff(a) > 0):
        raise DomainError("coefficients must be nonnegative and nonincreasing")
    if not 0 < p < math.inf:
        raise DomainError(f"p must lie in (0, inf), got {p}")
    k = np.arange(a.size)
    return float(np.sum(a ** p * (1.0 + k) ** (p - 2)) ** (1.0 / p))
