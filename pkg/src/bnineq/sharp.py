"""Reference values for the sharp constant ``sup ||T^{(s)}||_q / ||T||_p``.

``constant_2_inf_closed_form`` is exact for ``p = 2``, ``q = inf``.
``estimate_constant`` gives a certified-from-below estimate for any
``(p, q)`` by multi-start gradient ascent on the log-ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .concave import build_poly, v_basis
from .errors import DomainError, PreconditionError
from .kernels import jackson
from .trigpoly import TrigPoly, is_integer, make_poly, monomial, quasinorm, weyl_derivative, weyl_multiplier
from .witnesses import concave_index, jackson_order

__all__ = [
    "constant_2_inf_closed_form", "random_max_ratio_2_inf", "EstimateOptions", "Estimate",
    "estimate_constant", "entire_limit_scan", "log_ratio_and_grad",
]


def constant_2_inf_closed_form(n: int, s: float) -> float:
    """``(sum_{|k|<=n} |k|^{2s})^{1/2} / sqrt(2 pi)`` (``0^0 = 1`` when ``s = 0``)."""
    if n < 1 or s < 0:
        raise DomainError(f"need n >= 1 and s >= 0, got n={n}, s={s}")
    k = np.arange(1, n + 1, dtype=np.float64)
    total = 2.0 * np.sum(k ** (2 * s)) + (1.0 if s == 0 else 0.0)
    return float(math.sqrt(total / (2 * math.pi)))


def random_max_ratio_2_inf(n: int, s: float, samples: int = 10 ** 6, population: int = 1000,
                           seed: int = 0) -> float:
    """Best ``|T^{(s)}(0)| / ||T||_2^*`` seen in a population random search.

    By translation invariance the sup over ``x`` may be placed at 0. Each
    generation draws ``population`` Gaussian perturbations of the incumbent
    (complex coefficients) and the step size follows the one-fifth rule.
    ``||T||_2^*`` is the trapezoid rule on ``4(n+1)`` nodes, exact for
    ``|T|^2`` of degree ``2n``.
    """
    rng = np.random.default_rng(seed)
    d = 2 * n + 1
    k = np.arange(-n, n + 1)
    mult = weyl_multiplier(k, s) if s > 0 else np.ones(d, dtype=np.complex128)
    M = 4 * (n + 1)
    x = -np.pi + 2 * np.pi * np.arange(M) / M
    E = np.exp(1j * np.outer(k, x))  # (d, M)

    def ratio(C):
        num = np.abs(C @ mult)
        den = np.sqrt(np.sum(np.abs(C @ E) ** 2, axis=1) * (2 * np.pi / M))
        return num / den

    best_c = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    best = float(ratio(best_c[None, :])[0])
    sigma = 1.0
    for _ in range(max(1, samples // population)):
        noise = rng.standard_normal((population, d)) + 1j * rng.standard_normal((population, d))
        scale = np.linalg.norm(best_c)
        C = best_c[None, :] + sigma * scale / math.sqrt(2 * d) * noise
        r = ratio(C)
        j = int(np.argmax(r))
        success = float(np.mean(r > best))
        if r[j] > best:
            best, best_c = float(r[j]), C[j] / np.linalg.norm(C[j])
        sigma *= 1.5 if success > 0.2 else 0.8
        sigma = min(max(sigma, 1e-9), 2.0)
    return best


@dataclass(frozen=True)
class EstimateOptions:
    """Controls for :func:`estimate_constant`.

    ``starts`` counts random starts in addition to the witness starts;
    ``extra_starts`` are caller-provided TrigPolys (e.g. a previous argmax).
    """

    starts: int = 32
    seed: int = 0
    iters: int = 400
    tol: float = 1e-13
    extra_starts: tuple = ()


@dataclass(frozen=True, eq=False)
class Estimate:
    value: float
    poly: TrigPoly
    start_label: str
    seed: int


def _opt_grid(n: int, p: float, q: float) -> int:
    e = max(1.0, p if not math.isinf(p) else 1.0, q if not math.isinf(q) else 1.0)
    m = max(64, 32 * (n + 1) * math.ceil(e))
    return 1 << (m - 1).bit_length()


def _samples(c: np.ndarray, n: int, M: int) -> np.ndarray:
    buf = np.zeros(M, dtype=np.complex128)
    k = np.arange(-n, n + 1)
    buf[k % M] = c * np.where(k % 2 == 0, 1.0, -1.0)
    return np.fft.ifft(buf) * M


def _adjoint(y: np.ndarray, n: int, M: int) -> np.ndarray:
    """``sum_j y_j e^{-ik x_j}`` for ``k = -n..n`` (adjoint of :func:`_samples`)."""
    k = np.arange(-n, n + 1)
    Y = np.fft.fft(y)
    return Y[k % M] * np.where(k % 2 == 0, 1.0, -1.0)


def _log_norm_and_grad(c: np.ndarray, n: int, p: float, M: int, mult=None):
    """``log ||T||_p`` on the grid and its gradient as a complex vector (Re + i Im parts)."""
    cc = c if mult is None else c * mult
    v = _samples(cc, n, M)
    a = np.abs(v)
    if math.isinf(p):
        j = int(np.argmax(a))
        if a[j] == 0.0:
            return -math.inf, np.zeros_like(c)
        y = np.zeros(M, dtype=np.complex128)
        y[j] = v[j] / a[j] ** 2
        g = _adjoint(y, n, M)
        val = math.log(a[j])
    else:
        scale = float(a.max())
        if scale == 0.0:
            return -math.inf, np.zeros_like(c)
        an = a / scale
        live = an > 1e-14
        wp = np.zeros(M)
        wp[live] = an[live] ** (p - 2)
        S = float(np.sum(an ** p))
        y = wp * (v / scale) / S / scale
        g = _adjoint(y, n, M)
        val = math.log(scale) + math.log(S * 2 * math.pi / M) / p
    if mult is not None:
        g = g * np.conj(mult)
    return val, g


def log_ratio_and_grad(c: np.ndarray, n: int, s: float, p: float, q: float, M: int):
    """``log(||T^{(s)}||_q / ||T||_p)`` on an ``M``-grid and its gradient."""
    mult = weyl_multiplier(np.arange(-n, n + 1), s) if s > 0 else None
    num, gnum = _log_norm_and_grad(c, n, q, M, mult)
    den, gden = _log_norm_and_grad(c, n, p, M)
    return num - den, gnum - gden


def _ascend(c: np.ndarray, n: int, s: float, p: float, q: float, M: int, iters: int, tol: float):
    c = c / np.linalg.norm(c)
    f, g = log_ratio_and_grad(c, n, s, p, q, M)
    step = 0.1
    stall = 0
    for _ in range(iters):
        gn = np.linalg.norm(g)
        if not np.isfinite(f) or gn == 0.0:
            break
        improved = False
        while step > 1e-12:
            trial = c + step * g / gn
            trial /= np.linalg.norm(trial)
            ft, gt = log_ratio_and_grad(trial, n, s, p, q, M)
            if ft > f:
                gain = ft - f
                c, f, g = trial, ft, gt
                step = min(step * 1.5, 1.0)
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        stall = stall + 1 if gain < tol else 0
        if stall >= 10:
            break
    return c


def _witness_starts(n: int, s: float, p: float) -> list[tuple[str, np.ndarray]]:
    out = [("exponential", monomial(n).coeffs)]
    r = jackson_order(p)
    if s > 0 and n > 4 * r * s:
        N = int(n // (r * s))
        out.append(("modulated_jackson", jackson(r, N).modulate(n - r * N).padded(n).coeffs))
    if is_integer(s) and s >= 1:
        se = int(s) if int(s) % 2 == 0 else int(s) + 1
        out.append(("concave_tnl", build_poly(v_basis(n, concave_index(n, se))).coeffs))
    return out


def estimate_constant(n: int, s: float, p: float, q: float,
                      opts: EstimateOptions = EstimateOptions()) -> Estimate:
    """Lower estimate of ``sup ||T^{(s)}||_q / ||T||_p`` over degree ``n``.

    Starts: the exponential, Jackson and concave witnesses (where
    admissible), ``opts.extra_starts``, and ``opts.starts`` seeded random
    complex polynomials. The reported value is re-evaluated with the
    default grids of :func:`bnineq.trigpoly.quasinorm`.
    """
    if not (p > 0 and q > 0 and p < q):
        raise DomainError(f"need 0 < p < q, got p={p}, q={q}")
    if n < 1 or s < 0:
        raise DomainError(f"need n >= 1, s >= 0, got n={n}, s={s}")
    rng = np.random.default_rng(opts.seed)
    starts = _witness_starts(n, s, p)
    for j, T in enumerate(opts.extra_starts):
        if T.degree > n:
            raise PreconditionError(f"extra start {j} has degree {T.degree} > n = {n}")
        starts.append((f"extra{j}", T.padded(n).coeffs))
    for j in range(opts.starts):
        d = 2 * n + 1
        starts.append((f"random{j}", rng.standard_normal(d) + 1j * rng.standard_normal(d)))
    M = _opt_grid(n, p, q)
    best = None
    for label, c0 in starts:
        c = _ascend(np.asarray(c0, dtype=np.complex128), n, s, p, q, M, opts.iters, opts.tol)
        # keep the start itself if ascent did not help on the fine grid
        for cand in (c, np.asarray(c0, dtype=np.complex128)):
            T = make_poly(cand)
            num = quasinorm(weyl_derivative(T, s), q) if s > 0 else quasinorm(T, q)
            val = num / quasinorm(T, p)
            if best is None or val > best.value:
                best = Estimate(float(val), T, label, opts.seed)
    return best


def entire_limit_scan(s: float, p: float, q: float, n_list,
                      opts: EstimateOptions = EstimateOptions()) -> list[float]:
    """``n^{-s-1/p+1/q}`` times :func:`estimate_constant` along ``n_list``.

    Each estimate is seeded with the previous argmax, so the underlying
    estimates are nondecreasing in ``n``.
    """
    n_list = list(n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise DomainError("n_list must be increasing")
    out = []
    prev = None
    for n in n_list:
        o = opts if prev is None else EstimateOptions(opts.starts, opts.seed, opts.iters, opts.tol,
                                                      tuple(opts.extra_starts) + (prev,))
        est = estimate_constant(n, s, p, q, o)
        prev = est.poly
        out.append(n ** (-s - 1.0 / p + 1.0 / q) * est.value)
    return out
