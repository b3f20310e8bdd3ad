"""Plateau bump, its Fourier transform, and L_p norms on the real line.

The bump is ``phi(x) = S(2(1-|x|))`` with the smooth step
``S(t) = psi(t) / (psi(t) + psi(1-t))``, ``psi(t) = exp(-1/t)`` for ``t > 0``.
It equals one on ``|x| <= 1/2`` and vanishes outside ``[-1, 1]``.

Fourier transform convention: ``g^(xi) = int g(x) exp(-i x xi) dx``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.optimize import brentq

from .errors import AccuracyError

_GL_X, _GL_W = leggauss(16)


@dataclass(frozen=True)
class QuadOptions:
    """Quadrature controls for the real-line norms.

    ``xi_start`` is the first truncation (in units of the bump's own
    frequency scale); it doubles until the norm moves by less than
    ``rel_tol`` or ``xi_max`` is exceeded.
    """

    xi_start: float = 64.0
    xi_max: float = 4096.0
    rel_tol: float = 1e-8
    sample_step: float = 0.25


def psi(t):
    t = np.asarray(t, dtype=np.float64)
    out = np.zeros_like(t)
    pos = t > 0
    out[pos] = np.exp(-1.0 / t[pos])
    return out


def smooth_step(t):
    a = psi(t)
    return a / (a + psi(1.0 - t))


def phi(x):
    return smooth_step(2.0 * (1.0 - np.abs(np.asarray(x, dtype=np.float64))))


def phi_s(x, s: float):
    """``s phi(s x - s + 1)``, supported on ``[1 - 2/s, 1]``."""
    x = np.asarray(x, dtype=np.float64)
    return s * phi(s * x - s + 1.0)


def _panels(a: float, b: float, count: int):
    edges = np.linspace(a, b, count + 1)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = (lo + hi) / 2 + (hi - lo) / 2 * _GL_X[None, :]
    weights = (hi - lo) / 2 * _GL_W[None, :]
    return nodes.ravel(), weights.ravel()


def phi_hat(eta):
    """Fourier transform of the bump (real and even).

    The plateau ``[-1/2, 1/2]`` contributes ``2 sin(eta/2)/eta`` exactly;
    the two ramps go through composite Gauss-Legendre.
    """
    eta = np.atleast_1d(np.asarray(eta, dtype=np.float64))
    out = np.empty_like(eta)
    step = 4096
    for lo in range(0, eta.size, step):
        e = eta[lo:lo + step]
        emax = float(np.max(np.abs(e))) if e.size else 0.0
        u, w = _panels(0.5, 1.0, max(16, math.ceil(emax / 4)))
        plateau = np.where(e == 0.0, 1.0, 2.0 * np.sin(e / 2) / np.where(e == 0.0, 1.0, e))
        out[lo:lo + step] = plateau + 2.0 * (np.cos(np.outer(e, u)) * phi(u)) @ w
    return out


def bump_transform(xi, s: float, order: int = 0, centered: bool = False):
    """``int phi_s(x) (-ix)^order exp(-i x xi) dx`` by x-quadrature on the support.

    With ``centered`` the phase ``exp(i x_c xi)`` (``x_c = 1 - 1/s``, the
    centre of the support) is removed; the modulus is unchanged and the
    result varies on the scale ``s`` instead of oscillating at unit rate.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=np.float64))
    a, b = 1.0 - 2.0 / s, 1.0
    xc = 1.0 - 1.0 / s
    out = np.empty(xi.size, dtype=np.complex128)
    step = 2048
    for lo in range(0, xi.size, step):
        e = xi[lo:lo + step]
        emax = float(np.max(np.abs(e))) if e.size else 0.0
        x, w = _panels(a, b, max(16, math.ceil(emax * (b - a) / 4)))
        weight = phi_s(x, s) * w
        if order:
            weight = weight * (-1j * x) ** order
        shift = xc if centered else 0.0
        out[lo:lo + step] = np.exp(-1j * np.outer(e, x - shift)) @ weight
    return out


def _integrate_abs_pow_real(func, a: float, b: float, p: float, step: float,
                            unit: float = 1.0) -> float:
    """``int_a^b |func|^p`` for a real ``func``, splitting at its sign changes.

    Values below ``1e-14`` of the sampled maximum are treated as zero; they
    are at the roundoff floor and for ``p < 1`` would otherwise accumulate.
    """
    grid = np.arange(a, b + step, step)
    grid[-1] = b
    vals = func(grid)
    floor = 1e-14 * float(np.max(np.abs(vals)))
    roots = [a]

    def scalar(t):
        return float(func(np.array([t]))[0])

    live = np.abs(vals) >= floor
    for j in np.nonzero((np.sign(vals[:-1]) * np.sign(vals[1:]) < 0) & live[:-1] & live[1:])[0]:
        lo, hi = grid[j], grid[j + 1]
        if scalar(lo) * scalar(hi) >= 0:
            continue
        roots.append(brentq(scalar, lo, hi, xtol=1e-14, rtol=1e-15))
    roots.append(b)
    # the dead region past the last live sample contributes nothing
    last = grid[np.nonzero(live)[0][-1]] if live.any() else a
    total = 0.0
    grading = (1e-6, 1e-3, 0.1) if p < 1 else (0.1,)
    for lo, hi in zip(roots[:-1], roots[1:]):
        if hi <= lo or lo > last + step:
            continue
        length = hi - lo
        mids = max(1, math.ceil(0.8 * length / unit))
        # geometric grading toward the zeros at both ends
        edges = np.unique(np.concatenate([
            [lo], [lo + length * f for f in grading],
            np.linspace(lo + 0.1 * length, hi - 0.1 * length, mids + 1),
            [hi - length * f for f in grading[::-1]], [hi]]))
        lo_e, hi_e = edges[:-1, None], edges[1:, None]
        nodes = ((lo_e + hi_e) / 2 + (hi_e - lo_e) / 2 * _GL_X[None, :]).ravel()
        weights = ((hi_e - lo_e) / 2 * _GL_W[None, :]).ravel()
        v = np.abs(func(nodes))
        v[v < floor] = 0.0
        total += float(np.sum(v ** p * weights))
    return total


def _truncated_norm(integral, p: float, opts: QuadOptions, scale: float):
    """Double the truncation until the p-norm is stable to ``rel_tol``."""
    xi = opts.xi_start
    prev = integral(xi * scale) ** (1.0 / p)
    history = [(xi, prev)]
    while True:
        xi *= 2
        if xi > opts.xi_max:
            raise AccuracyError("truncation did not converge", {"history": history})
        cur = integral(xi * scale) ** (1.0 / p)
        history.append((xi, cur))
        if abs(cur - prev) <= opts.rel_tol * abs(cur):
            return cur, xi * scale, history
        prev = cur


@lru_cache(maxsize=64)
def phi_hat_norm(p: float, opts: QuadOptions = QuadOptions()) -> float:
    """``||phi^||_p`` over the real line (``p`` finite)."""
    if math.isinf(p):
        return 1.5  # phi^(0) = int phi, attained since phi >= 0
    val, _, _ = _truncated_norm(
        lambda X: 2.0 * _integrate_abs_pow_real(phi_hat, 0.0, X, p, opts.sample_step), p, opts, 1.0)
    return val


def bump_norm_direct(s: float, p: float, opts: QuadOptions = QuadOptions()) -> float:
    """``||phi_s^||_p`` from x-quadrature of ``phi_s`` itself (no scaling identity)."""
    if math.isinf(p):
        return float(np.max(np.abs(bump_transform(np.array([0.0]), s))))

    def real_part(xi):
        # phi_s is symmetric about x_c, so the centred transform is real
        return bump_transform(xi, s, centered=True).real

    val, _, _ = _truncated_norm(
        lambda X: 2.0 * _integrate_abs_pow_real(real_part, 0.0, X, p, opts.sample_step * s, float(s)),
        p, opts, float(s))
    return val


def derivative_norm(s: int, q: float, opts: QuadOptions = QuadOptions()) -> tuple[float, float]:
    """``||(phi_s^)^{(s)}||_q`` and the truncation used.

    For ``q = inf`` the maximum is searched on a grid and refined; the
    integrand ``phi_s(x) x^s`` is nonnegative, so it sits at ``xi = 0``.
    """
    if math.isinf(q):
        xi = np.linspace(-4.0 * s, 4.0 * s, 801)
        mags = np.abs(bump_transform(xi, s, order=s, centered=True))
        j = int(np.argmax(mags))
        lo, hi = xi[max(j - 1, 0)], xi[min(j + 1, xi.size - 1)]
        g = (math.sqrt(5) - 1) / 2

        def f(t):
            return float(np.abs(bump_transform(np.array([t]), s, order=s, centered=True))[0])

        c, d = hi - g * (hi - lo), lo + g * (hi - lo)
        fc, fd = f(c), f(d)
        for _ in range(60):
            if fc >= fd:
                hi, d, fd = d, c, fc
                c = hi - g * (hi - lo)
                fc = f(c)
            else:
                lo, c, fc = c, d, fd
                d = lo + g * (hi - lo)
                fd = f(d)
        return max(float(mags[j]), fc, fd), 4.0 * s

    def integral(X):
        panels = max(16, math.ceil(2 * X / max(1.0, s / 4)))
        nodes, weights = _panels(-X, X, panels)
        vals = np.abs(bump_transform(nodes, s, order=s, centered=True))
        return float(np.sum(vals ** q * weights))

    val, X, _ = _truncated_norm(integral, q, opts, float(s))
    return val, X


def sampled_norm(s: float, p: float, m_max: int | None = None) -> float:
    """``(sum_m |phi_s^(pi m)|^p)^{1/p}`` with the sum cut where terms are negligible."""
    if m_max is None:
        m_max = int(math.ceil(800.0 * s / math.pi))
    m = np.arange(-m_max, m_max + 1)
    vals = np.abs(bump_transform(np.pi * m, s, centered=True))
    if math.isinf(p):
        return float(vals.max())
    return float(np.sum(vals ** p) ** (1.0 / p))
