"""Concave coefficient sequences and the extremal basis ``V_l``.

A sequence ``c_0..c_n`` (with ``c_{n+1} := 0``) is concave when it is
nonincreasing, nonnegative and its first differences ``Dc_j = c_j - c_{j+1}``
are nondecreasing in ``j``.  Every concave sequence is a nonnegative
combination of

    v_l(k) = min(1 - (k-1)/n, 1 - (l-1)/n),    l = 0..n.

Sequences built from floats are validated with a small slack and snapped to
an exactly concave rational sequence, so that order checks stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .trigpoly import TrigPoly, from_cosine

SNAP_TOL = 1e-12
# sup of |T(x)| x / c_{n - floor(1/x + 1)} tends to 4 (V_0 near x = pi/n)
TAIL_K = 5.0
H_GRID_POINTS = 10_000


@dataclass(frozen=True, eq=False)
class ConcaveSeq:
    """Validated concave sequence; ``exact`` holds the rational values."""

    values: np.ndarray
    exact: tuple

    @property
    def n(self) -> int:
        return self.values.size - 1

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class VBasisElement(ConcaveSeq):
    """``V_l = (v_l(0), ..., v_l(n))``."""

    l: int = 0


def _as_fractions(c) -> list[Fraction]:
    if isinstance(c, ConcaveSeq):
        return list(c.exact)
    out = []
    for v in c:
        if isinstance(v, Fraction):
            out.append(v)
        elif isinstance(v, (int, np.integer)):
            out.append(Fraction(int(v)))
        else:
            out.append(Fraction(float(v)))
    return out


def is_concave(c, tol: float = 0.0) -> bool:
    """Check both chains of the definition.

    With ``tol = 0`` (default) comparisons are exact on the given numbers:
    floats are converted to their exact binary rationals first.
    """
    if isinstance(c, ConcaveSeq):
        vals = list(c.exact)
    elif tol == 0.0:
        vals = _as_fractions(c)
    else:
        vals = [float(v) for v in c]
    if len(vals) == 0:
        raise DomainError("empty sequence")
    ext = vals + [vals[0] * 0]
    diffs = [ext[j] - ext[j + 1] for j in range(len(vals))]
    scale = tol * max(1.0, max(abs(float(v)) for v in vals)) if tol else 0
    if any(d < -scale for d in diffs):
        return False
    return all(diffs[j + 1] - diffs[j] >= -scale for j in range(len(diffs) - 1))


def _from_exact(exact) -> ConcaveSeq:
    exact = tuple(exact)
    vals = np.array([float(v) for v in exact])
    vals.setflags(write=False)
    return ConcaveSeq(vals, exact)


def _reconstruct_exact(g, n: int) -> list[Fraction]:
    # Dc_j = (1/n) sum_{l<=j} g_l ;  c_k = sum_{j>=k} Dc_j
    g = [x if isinstance(x, Fraction) else Fraction(float(x)) for x in g]
    inv_n = Fraction(1, n)
    dc, run = [], Fraction(0)
    for gl in g:
        run += gl
        dc.append(run * inv_n)
    c, acc = [Fraction(0)] * (n + 1), Fraction(0)
    for k in range(n, -1, -1):
        acc += dc[k]
        c[k] = acc
    return c


def concave_seq(values, tol: float = SNAP_TOL) -> ConcaveSeq:
    """Validate ``values`` as concave within ``tol`` (relative) and snap it.

    Snapping recomputes the basis weights, clamps round-off negatives to
    zero and rebuilds the sequence in rational arithmetic.
    """
    if isinstance(values, ConcaveSeq):
        return values
    vals = list(values)
    if len(vals) == 0:
        raise DomainError("empty sequence")
    if all(isinstance(v, (Fraction, int, np.integer)) for v in vals):
        exact = _as_fractions(vals)
        if not is_concave(exact):
            raise DomainError("sequence is not concave")
        return _from_exact(exact)
    arr = np.asarray(vals, dtype=np.float64)
    if not is_concave(arr, tol=tol):
        raise DomainError("sequence is not concave (beyond snapping tolerance)")
    n = arr.size - 1
    if n == 0:
        return _from_exact([Fraction(max(0.0, float(arr[0])))])
    g = np.maximum(_weights_float(arr), 0.0)
    return _from_exact(_reconstruct_exact(g, n))


def v_basis(n: int, l: int) -> VBasisElement:
    """Basis element ``V_l`` for degree ``n`` (``0 <= l <= n``, ``n >= 1``)."""
    if n < 1:
        raise DomainError(f"V basis needs n >= 1, got {n}")
    if not 0 <= l <= n:
        raise DomainError(f"l must satisfy 0 <= l <= n, got l={l}, n={n}")
    cap = 1 - Fraction(l - 1, n)
    exact = tuple(min(1 - Fraction(k - 1, n), cap) for k in range(n + 1))
    vals = np.array([float(v) for v in exact])
    vals.setflags(write=False)
    return VBasisElement(vals, exact, l)


def _weights_float(c: np.ndarray) -> np.ndarray:
    n = c.size - 1
    dc = c - np.append(c[1:], 0.0)
    g = np.empty(n + 1)
    g[0] = n * dc[0]
    g[1:] = n * np.diff(dc)
    return g


def decompose(c) -> np.ndarray:
    """Nonnegative weights ``g`` with ``c = sum_l g_l V_l``.

    ``g_0 = n Dc_0`` and ``g_l = n (Dc_l - Dc_{l-1})``.  Computed exactly
    when the sequence carries rational values.
    """
    seq = concave_seq(c)
    n = seq.n
    if n < 1:
        raise DomainError("decomposition needs n >= 1")
    ex = list(seq.exact) + [Fraction(0)]
    dc = [ex[j] - ex[j + 1] for j in range(n + 1)]
    g = [n * dc[0]] + [n * (dc[l] - dc[l - 1]) for l in range(1, n + 1)]
    if any(x < 0 for x in g):
        raise DomainError("sequence is not concave")
    return np.array([float(x) for x in g])


def reconstruct(g, n: int) -> np.ndarray:
    """``sum_l g_l v_l(k)`` for ``k = 0..n`` (float)."""
    g = np.asarray(g, dtype=np.float64)
    k = np.arange(n + 1)
    out = np.zeros(n + 1)
    for l in range(n + 1):
        out += g[l] * np.minimum(1 - (k - 1) / n, 1 - (l - 1) / n)
    return out


def random_concave(n: int, rng: np.random.Generator, density: float | None = None) -> ConcaveSeq:
    """Random nonnegative combination of ``V_0..V_n`` (exact, via the weights)."""
    if density is None:
        density = rng.uniform(0.02, 1.0)
    mask = rng.random(n + 1) < density
    if not mask.any():
        mask[rng.integers(0, n + 1)] = True
    g = np.where(mask, rng.exponential(1.0, n + 1), 0.0)
    return _from_exact(_reconstruct_exact(g, n))


# -- functionals -------------------------------------------------------------

def s_functional(c) -> float:
    """``sum_{k=0}^n c_k / (n-k+1)``."""
    c = np.asarray(c.values if isinstance(c, ConcaveSeq) else c, dtype=np.float64)
    n = c.size - 1
    return float(np.sum(c / (n - np.arange(n + 1) + 1)))


def v_weighted_sum_fraction(n: int, l: int) -> Fraction:
    """Closed form of ``sum_k v_l(k)/(n-k+1)`` as an exact rational."""
    if not 0 <= l <= n or n < 1:
        raise DomainError(f"need 0 <= l <= n, n >= 1; got l={l}, n={n}")
    harm = sum((Fraction(1, m) for m in range(n - l + 1, n + 2)), Fraction(0))
    return (1 - Fraction(l - 1, n)) * (harm + 1) - Fraction(1, n)


def v_weighted_sum_exact(n: int, l: int) -> float:
    return float(v_weighted_sum_fraction(n, l))


def h_ns(n: int, s: float, tau):
    """``tau^{s+1} / (1 - log(1 + 1/n - tau))``."""
    tau = np.asarray(tau, dtype=np.float64)
    return tau ** (s + 1) / (1.0 - np.log1p(1.0 / n - tau))


def h_ns_sup(n: int, s: float) -> float:
    """Supremum of ``h_ns(n, s, .)`` over ``[0, 1]``.

    Uniform grid plus a geometric cluster toward ``tau = 1`` (where the
    function peaks for large ``s``), then golden-section refinement.
    """
    if n < 1 or s < 1:
        raise DomainError("n and s must be >= 1")
    uni = np.linspace(0.0, 1.0, H_GRID_POINTS)
    top = 1.0 - 0.1 * np.geomspace(1.0, 1e-14, 2000)
    tau = np.unique(np.concatenate([uni, top, [1.0]]))
    vals = h_ns(n, s, tau)
    j = int(np.argmax(vals))
    best = float(vals[j])
    a = tau[max(j - 1, 0)]
    b = tau[min(j + 1, tau.size - 1)]
    g = (math.sqrt(5) - 1) / 2
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = float(h_ns(n, s, c)), float(h_ns(n, s, d))
    for _ in range(100):
        if b - a < 1e-16:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = float(h_ns(n, s, c))
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = float(h_ns(n, s, d))
    return max(best, fc, fd)


def build_poly(c) -> TrigPoly:
    """``T_n(x) = c_0 + 2 sum_{k>=1} c_k cos kx``, i.e. ``c_{+-k} = c_k``."""
    vals = np.asarray(c.values if isinstance(c, ConcaveSeq) else c, dtype=np.float64)
    a = vals.copy()
    a[1:] *= 2
    return from_cosine(a)


def tail_index(n: int, x: float) -> int:
    """``n - floor(1/x + 1)``."""
    return n - math.floor(1.0 / x + 1.0)


def pointwise_tail_bound_check(c, x: float, K: float = TAIL_K) -> tuple[bool, float]:
    """Compare ``|T_n(x)|`` with ``K x^{-1} c_{n - floor(1/x+1)}`` for ``x`` in ``(1/n, pi)``.

    Returns ``(holds, ratio)`` with ``ratio = |T_n(x)| x / c_{n - floor(1/x+1)}``.
    """
    seq = concave_seq(c)
    n = seq.n
    if not (1.0 / n < x < math.pi):
        raise DomainError(f"x must lie in (1/n, pi), got {x}")
    T = build_poly(seq)
    idx = tail_index(n, x)
    ref = seq.values[idx]
    val = abs(complex(T(np.array([x]))[0]))
    if ref == 0.0:
        ratio = 0.0 if val == 0.0 else math.inf
    else:
        ratio = val * x / ref
    return ratio <= K, ratio


def tail_integral(c) -> float:
    """``int_{1/n}^{pi} x^{-1} c_{n - floor(1/x+1)} dx`` as an exact breakpoint sum.

    On ``(1/(j+1), 1/j]`` the index is ``n - j - 1``; the piece ``x > 1``
    (``j = 0``) runs up to ``pi``.
    """
    seq = concave_seq(c)
    n = seq.n
    v = seq.values
    total = v[n - 1] * math.log(math.pi) if n >= 1 else 0.0
    for j in range(1, n):
        total += v[n - j - 1] * math.log((j + 1) / j)
    return float(total)


def mean_tail_sum(c) -> float:
    """``(1/n) sum c_k + int_{1/n}^{pi} x^{-1} c_{n-floor(1/x+1)} dx``."""
    seq = concave_seq(c)
    return float(np.sum(seq.values) / seq.n + tail_integral(seq))


def moment_sum(c, s: float) -> float:
    """``sum_{k=0}^n k^s c_k``."""
    vals = np.asarray(c.values if isinstance(c, ConcaveSeq) else c, dtype=np.float64)
    k = np.arange(vals.size, dtype=np.float64)
    return float(np.sum(k ** s * vals))


def concave_envelope(n: int, s: float) -> float:
    """``(n^s + n^{s+1}/(s+1)) (1/log(s+2) + 1/log(n+2))``."""
    return (n ** s + n ** (s + 1) / (s + 1)) * (1 / math.log(s + 2) + 1 / math.log(n + 2))


def moment_ratio(c, s: float) -> float:
    """``moment_sum(c, s) / (concave_envelope(n, s) * s_functional(c))`` without overflow.

    Both sides are divided by ``n^s`` before forming the quotient, so the
    value is finite for large ``n`` and ``s``.
    """
    vals = np.asarray(c.values if isinstance(c, ConcaveSeq) else c, dtype=np.float64)
    n = vals.size - 1
    if n < 1:
        raise DomainError("need n >= 1")
    k = np.arange(n + 1, dtype=np.float64)
    num = float(np.sum((k / n) ** s * vals))
    env = (1.0 + n / (s + 1)) * (1 / math.log(s + 2) + 1 / math.log(n + 2))
    return num / (env * s_functional(vals))
