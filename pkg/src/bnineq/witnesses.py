"""Lower-bound witnesses for Bernstein-Nikolskii ratios.

Each witness is a concrete function whose ratio ``||f^{(s)}||_q / ||f||_p``
is computed numerically and then divided by the envelope it should track:

* trigonometric witnesses use ``n^s (1 + (n/s)^{1/p - 1/q})``;
* the concave witness uses :func:`bnineq.concave.concave_envelope`;
* the entire-function bump uses ``s^{1/q - 1/p}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from . import _bump
from ._bump import QuadOptions
from .concave import build_poly, concave_envelope, v_basis
from .errors import DomainError, PreconditionError
from .kernels import jackson
from .trigpoly import default_grid, is_integer, monomial, quasinorm, weyl_derivative

__all__ = [
    "WITNESS_IDS", "RatioReport", "QuadOptions", "trig_envelope", "entire_envelope",
    "jackson_order", "exponential_witness", "modulated_jackson_witness",
    "concave_witness", "concave_index", "entire_bump_witness", "normalize_ratio",
    "trig_witnesses", "best_witness", "plancherel_polya_check",
]

WITNESS_IDS = ("exponential", "modulated_jackson", "concave_tnl", "entire_bump")


@dataclass(frozen=True)
class RatioReport:
    """One witness evaluation.

    ``n`` is 0 for the entire-function witness; ``grid_M`` is the largest
    grid used for the periodic norms (0 when quadrature is on the line).
    ``extras`` holds witness-specific parameters such as ``r`` and ``N``.
    """

    n: int
    s: float
    p: float
    q: float
    witness_id: str
    numerator: float
    denominator: float
    ratio: float
    normalized: float = math.nan
    grid_M: int = 0
    extras: dict = field(default_factory=dict, compare=False)


def trig_envelope(n: int, s: float, p: float, q: float) -> float:
    return n ** s * (1.0 + (n / s) ** (1.0 / p - 1.0 / q))


def entire_envelope(s: float, p: float, q: float) -> float:
    return s ** (1.0 / q - 1.0 / p)


def normalize_ratio(report: RatioReport) -> float:
    """``report.ratio`` divided by the envelope matching its witness."""
    wid = report.witness_id
    if wid in ("exponential", "modulated_jackson"):
        env = trig_envelope(report.n, report.s, report.p, report.q)
    elif wid == "concave_tnl":
        env = concave_envelope(report.n, report.s)
    elif wid == "entire_bump":
        env = entire_envelope(report.s, report.p, report.q)
    else:
        raise DomainError(f"unknown witness id {wid!r}")
    return report.ratio / env


def _finish(report: RatioReport) -> RatioReport:
    return replace(report, normalized=normalize_ratio(report))


def _check_exponents(p: float, q: float):
    if not (p > 0 and q > 0):
        raise DomainError(f"exponents must be positive, got p={p}, q={q}")
    if not p < q:
        raise DomainError(f"need p < q, got p={p}, q={q}")


def _check_order(s: float):
    if not s > 0:
        raise DomainError(f"derivative order must be positive, got {s}")


def _trig_ratio(T, n: int, s: float, p: float, q: float):
    Mq, Mp = default_grid(n, q), default_grid(n, p)
    num = quasinorm(weyl_derivative(T, s), q, Mq)
    den = quasinorm(T, p, Mp)
    return num, den, max(Mq, Mp)


def exponential_witness(n: int, s: float, p: float, q: float) -> RatioReport:
    """``e^{inx}``; the ratio is ``n^s (2 pi)^{1/q - 1/p}`` exactly."""
    if n < 1:
        raise DomainError(f"exponential witness needs n >= 1, got {n}")
    _check_order(s)
    _check_exponents(p, q)
    num, den, M = _trig_ratio(monomial(n), n, s, p, q)
    return _finish(RatioReport(n, s, p, q, "exponential", num, den, num / den, grid_M=M))


def jackson_order(p: float) -> int:
    """Smallest integer ``r`` with ``p r > 1``.

    ``p`` is read as the nearest simple fraction so that ``1/3`` given as
    a float yields 4, not 3.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    if math.isinf(p):
        return 1
    frac = Fraction(p).limit_denominator(10 ** 6)
    return int(1 / frac) + 1


def modulated_jackson_witness(n: int, s: float, p: float, q: float) -> RatioReport:
    """``J_{r,N}(x) e^{i(n - rN)x}`` with ``N = floor(n/(rs))``.

    Raises
    ------
    PreconditionError
        If ``n <= 4 r s``; use :func:`exponential_witness` there.
    """
    _check_order(s)
    _check_exponents(p, q)
    r = jackson_order(p)
    if n <= 4 * r * s:
        raise PreconditionError(
            f"n={n} <= 4rs={4 * r * s}: Jackson witness not admissible, use exponential_witness")
    N = int(n // (r * s))
    T = jackson(r, N).modulate(n - r * N)
    num, den, M = _trig_ratio(T, n, s, p, q)
    rep = RatioReport(n, s, p, q, "modulated_jackson", num, den, num / den, grid_M=M,
                      extras={"r": r, "N": N, "degree": T.degree})
    return _finish(rep)


def concave_index(n: int, s: int) -> int:
    """``l = n`` if ``n <= s``, else ``1 + floor(n (1 - 1/s))``."""
    if n <= s:
        return n
    return 1 + (n * (s - 1)) // s


def _concave_even(n: int, s: int):
    l = concave_index(n, s)
    V = v_basis(n, l)
    # nonnegative coefficients: |T^{(s)}| peaks at 0 with value sum 2 k^s v_l(k)
    num = float(sum(2 * Fraction(k) ** s * V.exact[k] for k in range(1, n + 1)))
    T = build_poly(V)
    M = default_grid(n, 1.0)
    den = quasinorm(T, 1.0, M)
    return l, num, den, M


def concave_witness(n: int, s: int) -> RatioReport:
    """``T_{n,l}`` built from the basis element ``V_l``, at ``p = 1``, ``q = inf``.

    For odd ``s`` the witness for ``s + 1`` is used and its ratio divided
    by ``n``; Bernstein's inequality makes that a lower bound at order
    ``s``. ``extras["bernstein_reduction"]`` records this.
    """
    if n < 1 or not is_integer(s) or s < 1:
        raise DomainError(f"concave witness needs integers n, s >= 1, got n={n}, s={s}")
    s = int(s)
    even = s % 2 == 0
    s_eff = s if even else s + 1
    l, num, den, M = _concave_even(n, s_eff)
    if not even:
        num /= n
    rep = RatioReport(n, s, 1.0, math.inf, "concave_tnl", num, den, num / den, grid_M=M,
                      extras={"l": l, "bernstein_reduction": not even})
    return _finish(rep)


def entire_bump_witness(s: int, p: float, q: float, quad: QuadOptions = QuadOptions()) -> RatioReport:
    """Fourier transform of ``phi_s(x) = s phi(s x - s + 1)`` on the real line.

    The denominator uses ``||f||_p = s^{1/p} ||phi^||_p``; the numerator is
    computed directly from ``f^{(s)}(xi) = int phi_s(x) (-ix)^s e^{-ix xi} dx``.

    Raises
    ------
    AccuracyError
        If a truncated real-line norm does not settle to ``quad.rel_tol``.
    """
    if not is_integer(s) or s < 2:
        raise DomainError(f"bump witness needs an integer s >= 2, got {s}")
    _check_exponents(p, q)
    s = int(s)
    num, xi_num = _bump.derivative_norm(s, q, quad)
    base = _bump.phi_hat_norm(p, quad)
    den = base * (s ** (1.0 / p) if not math.isinf(p) else 1.0)
    rep = RatioReport(0, s, p, q, "entire_bump", num, den, num / den,
                      extras={"xi_truncation": xi_num, "phi_hat_norm": base})
    return _finish(rep)


def trig_witnesses(n: int, s: float, p: float, q: float) -> list[RatioReport]:
    """All trigonometric witnesses admissible at ``(n, s, p, q)``."""
    out = [exponential_witness(n, s, p, q)]
    if n > 4 * jackson_order(p) * s:
        out.append(modulated_jackson_witness(n, s, p, q))
    if p == 1.0 and math.isinf(q) and is_integer(s):
        out.append(concave_witness(n, int(s)))
    return out


def best_witness(n: int, s: float, p: float, q: float) -> RatioReport:
    """Largest ratio among the trigonometric witnesses, normalized by the ``(1.3)``-type envelope.

    The concave witness is renormalized against the same envelope here so
    that all candidates are comparable.
    """
    best = None
    for rep in trig_witnesses(n, s, p, q):
        if rep.witness_id == "concave_tnl":
            rep = replace(rep, normalized=rep.ratio / trig_envelope(n, s, p, q))
        if best is None or rep.ratio > best.ratio:
            best = rep
    return best


def plancherel_polya_check(s: int, p: float) -> tuple[float, float]:
    """Sampled norm ``(sum_m |f(pi m)|^p)^{1/p}`` and the line norm ``||f||_p`` of the bump.

    Both are finite for a function of exponential type one; their ratio is
    bounded above and below independently of ``s``.
    """
    sampled = _bump.sampled_norm(s, p)
    full = _bump.phi_hat_norm(p) * (s ** (1.0 / p) if not math.isinf(p) else 1.0)
    return sampled, full
