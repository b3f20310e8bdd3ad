"""Invariant suites behind ``bnineq verify``.

Each check returns a :class:`CheckResult` carrying the observed constant
or residual, so the printed summary doubles as a record of the bands.
The sizes here are chosen to keep ``verify all`` to a few minutes; the
acceptance tests run the larger sweeps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import recorded as R
from .errors import AccuracyError, DomainError

INF = math.inf
SUITES = ("trig", "entire", "concave", "extremal", "hardy")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    ok: bool
    detail: str
    accuracy: bool = False


def _band(vals) -> str:
    lo, hi = min(vals), max(vals)
    return f"band [{lo:.4g}, {hi:.4g}], spread {hi / lo:.3g}"


# -- trig --------------------------------------------------------------------

def _parseval():
    from .trigpoly import quasinorm, random_poly
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(20):
        n = int(rng.integers(1, 257))
        T = random_poly(n, rng)
        exact = math.sqrt(2 * math.pi * float(np.sum(np.abs(T.coeffs) ** 2)))
        worst = max(worst, abs(quasinorm(T, 2.0) - exact) / exact)
    return worst < 1e-9, f"max relative error {worst:.2e}"


def _dirichlet():
    from .kernels import dirichlet
    from .trigpoly import quasinorm
    worst = 0.0
    for n in (1, 2, 7, 32, 64):
        D = dirichlet(n)
        worst = max(worst, abs(quasinorm(D, INF) - (2 * n + 1)) / (2 * n + 1),
                    abs(quasinorm(D, 2.0) / math.sqrt(2 * math.pi * (2 * n + 1)) - 1))
    return worst < 1e-9, f"max relative error {worst:.2e}"


def _weyl_monomial():
    from .trigpoly import monomial, quasinorm, weyl_derivative
    worst = 0.0
    for n, s in ((3, 1), (5, 2.5), (8, 4), (16, 0.5)):
        v = quasinorm(weyl_derivative(monomial(n), s), INF)
        worst = max(worst, abs(v - n ** s) / n ** s)
    return worst < 1e-12, f"|| (e^(inx))^(s) ||_inf vs n^s, max error {worst:.2e}"


def _bernstein():
    from .trigpoly import quasinorm, random_poly, weyl_derivative
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(10):
        n = int(rng.integers(1, 40))
        T = random_poly(n, rng, real=True)
        worst = max(worst, quasinorm(weyl_derivative(T, 1), INF) / (n * quasinorm(T, INF)))
    return worst <= 1 + 1e-9, f"max ||T'||_inf / (n ||T||_inf) = {worst:.6f}"


def _jackson_band():
    from .kernels import jackson
    from .trigpoly import quasinorm
    vals = [quasinorm(jackson(2, N), 1.0) / N ** (2 - 1) for N in (8, 16, 32, 64, 128)]
    return max(vals) / min(vals) < 4, "||J_{2,N}||_1 / N: " + _band(vals)


def _backends():
    from . import _backend, _kernels_py
    rng = np.random.default_rng(3)
    c = rng.standard_normal(41) + 1j * rng.standard_normal(41)
    x = rng.uniform(-4, 4, 500)
    e1 = np.max(np.abs(_backend.eval_trig(c, x) - _kernels_py.eval_trig(c, x)))
    v = rng.standard_normal(30) + 0j
    e2 = np.max(np.abs(_backend.hilbert_window(v, -5, -100, 100, 0.5)
                       - _kernels_py.hilbert_window(v, -5, -100, 100, 0.5)))
    e3 = np.max(np.abs(_backend.sinc_synth(v, -5, x) - _kernels_py.sinc_synth(v, -5, x)))
    worst = float(max(e1, e2, e3))
    return worst < 1e-10, f"{_backend.BACKEND} vs python, max difference {worst:.2e}"


# -- entire ------------------------------------------------------------------

def _scaling():
    from . import _bump
    worst = 0.0
    for s in (2, 4):
        d = _bump.bump_norm_direct(s, 2.0)
        f = _bump.phi_hat_norm(2.0) * math.sqrt(s)
        worst = max(worst, abs(d - f) / f)
    return worst < 1e-6, f"||f||_2 vs s^(1/2) ||phi^||_2, max error {worst:.2e}"


def _bump_lower():
    from .witnesses import entire_bump_witness
    parts, ok = [], True
    for (p, q), L in R.BUMP_LOWER.items():
        if p == 1.0 and q == 2.0:
            continue  # slow L2 numerator; covered by acceptance
        vals = [entire_bump_witness(s, p, q).normalized for s in (2, 3, 4, 6, 8)]
        ok &= min(vals) >= L
        parts.append(f"({p:g},{q:g}) min {min(vals):.4g} >= {L}")
    return ok, "; ".join(parts)


def _plancherel_polya():
    from .witnesses import plancherel_polya_check
    r = []
    for s in (2, 4, 8):
        a, b = plancherel_polya_check(s, 2.0)
        r.append(a / b)
    return max(r) / min(r) < 2, "sampled / line norm at p=2: " + _band(r)


def _limit_scan():
    from .sharp import EstimateOptions, entire_limit_scan
    from .witnesses import entire_bump_witness
    s, p, q = 2, 2.0, INF
    scan = entire_limit_scan(s, p, q, [4, 8, 16], EstimateOptions(starts=2))
    bump = entire_bump_witness(s, p, q).ratio
    return min(scan) >= bump, f"scan inf {min(scan):.5g} >= bump ratio {bump:.5g}"


# -- concave -----------------------------------------------------------------

def _decompose():
    from .concave import decompose, random_concave, reconstruct
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(20):
        c = random_concave(int(rng.integers(2, 65)), rng)
        g = decompose(c)
        worst = max(worst, float(np.max(np.abs(reconstruct(g, c.n) - c.values))))
        if np.any(g < 0):
            return False, "negative weight in decomposition"
    return worst < 1e-12, f"reconstruct(decompose(c)) max error {worst:.2e}"


def _v_closed_form():
    from .concave import s_functional, v_basis, v_weighted_sum_fraction
    worst = 0.0
    for n in (1, 4, 17, 64):
        for l in range(n + 1):
            exact = float(v_weighted_sum_fraction(n, l))
            worst = max(worst, abs(s_functional(v_basis(n, l)) - exact))
    return worst < 1e-12, f"closed form vs direct sum, max error {worst:.2e}"


def _concave_bands():
    from .concave import build_poly, mean_tail_sum, moment_ratio, random_concave, s_functional
    from .trigpoly import quasinorm
    rng = np.random.default_rng(5)
    rl1, rmt, r51 = [], [], []
    for _ in range(40):
        c = random_concave(int(rng.choice([8, 16, 32, 64, 128])), rng)
        S = s_functional(c)
        rl1.append(quasinorm(build_poly(c), 1.0) / S)
        rmt.append(mean_tail_sum(c) / S)
        r51.extend(moment_ratio(c, s) for s in (1, 4, 16, 64))
    A, B = R.L1_COEFF_BAND
    ok = A <= min(rl1) and max(rl1) <= B and max(rmt) <= R.MEAN_TAIL_K and max(r51) <= R.MOMENT_K
    return ok, (f"||T_c||_1/S(c) {_band(rl1)}; mean-tail max {max(rmt):.4g}; "
                f"moment max {max(r51):.4g}")


def _concave_witness_band():
    from .witnesses import concave_witness
    vals = [concave_witness(n, s).normalized for n in (4, 16, 64) for s in (4, 16, 64)]
    lo, hi = R.CONCAVE_BAND
    return lo <= min(vals) and max(vals) <= hi, _band(vals)


# -- extremal ----------------------------------------------------------------

def _extremal_structure():
    from .extremal import (basis_polys, sign_identity_residual, solve_extremal,
                           zeros_of_extremal)
    worst_c, worst_r = 0.0, 0.0
    counts = []
    for n in (1, 2, 4, 8):
        for s in (0, 1, 2, 3):
            sol = solve_extremal(n, s)
            P = sol.poly
            d = P.coeffs * (1j * P.frequencies) ** s if s else P.coeffs
            worst_c = max(worst_c, abs(complex(np.sum(d)) - 1))
            for Q in basis_polys(n):
                worst_r = max(worst_r, sign_identity_residual(sol, Q) / sol.l1_norm)
            if s == 0:
                z = zeros_of_extremal(sol)
                counts.append(f"n={n}:{z.count}")
                if z.count != 2 * n or not z.simple.all():
                    return False, f"n={n}: {z.count} zeros, expected {2 * n} simple"
    ok = worst_c <= 1e-9 and worst_r <= 1e-6
    return ok, (f"constraint error {worst_c:.2e}, sign identity residual {worst_r:.2e}, "
                f"simple zeros at s=0 {' '.join(counts)}")


def _extremal_band():
    from .extremal import bn_constant_1_inf
    from .witnesses import trig_envelope
    vals = [bn_constant_1_inf(n, s) / trig_envelope(n, s, 1.0, INF)
            for n in (8, 16, 32) for s in (1, 4, 16)]
    lo, hi = R.EXTREMAL_BAND
    return lo <= min(vals) and max(vals) <= hi, _band(vals)


def _dist():
    from .extremal import bn_constant_1_inf, dist_to_high_frequencies
    worst = 0.0
    for n, s in ((1, 0), (2, 1), (4, 2)):
        d = dist_to_high_frequencies(n, s, 4 * n)
        b = bn_constant_1_inf(n, s)
        worst = max(worst, abs(d - b) / b)
    return worst <= 5e-2, f"dist(N=4n) vs constant, max relative gap {worst:.3g}"


# -- hardy -------------------------------------------------------------------

def _delta_examples():
    from .hardy import delta, discrete_seq, hp_quasinorm
    d0, d01 = delta(0), discrete_seq([1, -1])
    got = (math.isinf(hp_quasinorm(d0, 1.0).value),
           hp_quasinorm(d01, 1.0).divergent,
           math.isinf(hp_quasinorm(d01, 0.5).value))
    return got == (True, False, True), f"divergent(d0,1), divergent(d0-d1,1), divergent(d0-d1,1/2) = {got}"


def _interpolation():
    from .hardy import discrete_seq, hilbert, synthesize_f_a
    rng = np.random.default_rng(6)
    a = discrete_seq(rng.standard_normal(15), offset=-7)
    f = synthesize_f_a(a)
    m = np.arange(-30, 31)
    e1 = np.max(np.abs(f(np.pi * m) - np.where(m % 2 == 0, 1, -1) * np.array([a[k] for k in m])))
    hc = hilbert(a, "half").window
    hc_m = np.array([hc[k] for k in m])
    e2 = np.max(np.abs(f(np.pi * (m + 0.5)) - np.where(m % 2 == 0, 1, -1) * hc_m / np.pi))
    worst = float(max(e1, e2))
    return worst < 1e-10, f"interpolation error {worst:.2e}"


def _atom_bands():
    from .hardy import hp_quasinorm, random_atom, validate_atom
    parts, ok = [], True
    for p in (1 / 3, 1 / 2, 1.0):
        rng = np.random.default_rng(7)
        eq, hc = [], []
        for _ in range(20):
            a, I = random_atom(p, rng)
            ok &= validate_atom(a, I, p).valid
            h, hs = hp_quasinorm(a, p), hp_quasinorm(a, p, "half")
            eq.append(hs.value / h.value)
            hc.append(hs.hilbert_lp)
        lo, hi = R.HARDY_EQUIV_BAND
        ok &= lo <= min(eq) and max(eq) <= hi and max(hc) <= R.HC_ATOM_BOUND[p]
        parts.append(f"p={Fraction(p).limit_denominator(10)}: ratio {_band(eq)}, "
                     f"max ||H_c a||_p {max(hc):.4g}")
    return ok, "; ".join(parts)


_CHECKS = {
    "trig": [("parseval", _parseval), ("dirichlet norms", _dirichlet),
             ("weyl on monomials", _weyl_monomial), ("bernstein s=1", _bernstein),
             ("jackson L1 band", _jackson_band), ("backend agreement", _backends)],
    "entire": [("scaling identity", _scaling), ("bump lower bound", _bump_lower),
               ("plancherel-polya", _plancherel_polya), ("limit scan dominates", _limit_scan)],
    "concave": [("decomposition", _decompose), ("v_l closed form", _v_closed_form),
                ("coefficient bands", _concave_bands), ("witness band", _concave_witness_band)],
    "extremal": [("structure", _extremal_structure), ("constant band", _extremal_band),
                 ("high-frequency distance", _dist)],
    "hardy": [("delta examples", _delta_examples), ("f_a interpolation", _interpolation),
              ("atom bands", _atom_bands)],
}


def run_suite(name: str) -> list[CheckResult]:
    """Run one suite, or every suite for ``"all"``."""
    if name == "all":
        return [r for s in SUITES for r in run_suite(s)]
    if name not in _CHECKS:
        raise DomainError(f"unknown suite {name!r}")
    out = []
    for label, fn in _CHECKS[name]:
        try:
            ok, detail = fn()
            out.append(CheckResult(name, label, bool(ok), detail))
        except AccuracyError as exc:
            out.append(CheckResult(name, label, False, f"accuracy failure: {exc}", True))
    return out
