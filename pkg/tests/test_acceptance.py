"""Acceptance criteria, one test per criterion.

Each test records a ``PASS``/``FAIL`` line with the observed constants;
the lines are printed in the terminal summary (see ``conftest.py``) and
when this file is run as a script.  Tolerances and sweep sizes are the
stated ones; nothing is relaxed to make a criterion pass.
"""

import json
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from bnineq import _bump
from bnineq import recorded as R
from bnineq.cli import main as cli_main
from bnineq.concave import build_poly, moment_ratio, random_concave, s_functional
from bnineq.extremal import (alternation_residual, basis_polys, bn_constant_1_inf,
                             dist_to_high_frequencies, sign_identity_residual, solve_extremal,
                             zeros_of_extremal)
from bnineq.hardy import (atom_fourier_moment, delta, discrete_seq, hilbert, hp_quasinorm,
                          moments, random_atom, synthesize_f_a, validate_atom, DiscreteSeq)
from bnineq.kernels import dirichlet, nikolskii_pairing, nikolskii_q
from bnineq.sharp import constant_2_inf_closed_form, estimate_constant, random_max_ratio_2_inf
from bnineq.trigpoly import from_sine, quasinorm, random_poly, weyl_derivative
from bnineq.witnesses import (best_witness, concave_witness, entire_bump_witness, trig_envelope)

INF = math.inf
RESULTS = {}


def record(k, title, ok, detail, t0):
    line = f"ACCEPTANCE {k} [{'PASS' if ok else 'FAIL'}] {title}: {detail} ({time.time() - t0:.1f} s)"
    RESULTS[k] = line
    print(line)
    return ok


def band(vals):
    lo, hi = min(vals), max(vals)
    return lo, hi, hi / lo


# 1 ---------------------------------------------------------------------------

def check_1():
    t0 = time.time()
    rng = np.random.default_rng(1)
    parseval = 0.0
    for _ in range(100):
        T = random_poly(int(rng.integers(1, 257)), rng)
        exact = 2 * math.pi * float(np.sum(np.abs(T.coeffs) ** 2))
        parseval = max(parseval, abs(quasinorm(T, 2.0) ** 2 - exact) / exact)
    dn = 0.0
    for n in range(1, 65):
        D = dirichlet(n)
        dn = max(dn, abs(quasinorm(D, INF) / (2 * n + 1) - 1),
                 abs(quasinorm(D, 2.0) / math.sqrt(2 * math.pi * (2 * n + 1)) - 1))
    elapsed = time.time() - t0
    ok = parseval <= 1e-9 and dn <= 1e-9 and elapsed < 10
    return record(1, "exactness", ok,
                  f"Parseval max rel err {parseval:.2e}, Dirichlet max rel err {dn:.2e}", t0)


# 2 ---------------------------------------------------------------------------

def check_2():
    t0 = time.time()
    oracle_err = est_err = 0.0
    for n in range(1, 9):
        for s in range(0, 4):
            cf = constant_2_inf_closed_form(n, s)
            found = random_max_ratio_2_inf(n, s, samples=10 ** 6)
            oracle_err = max(oracle_err, abs(found - cf) / cf)
            est = estimate_constant(n, s, 2.0, INF)
            est_err = max(est_err, abs(est.value - cf) / cf)
    elapsed = time.time() - t0
    ok = oracle_err <= 1e-2 and est_err <= 1e-3 and elapsed < 120
    return record(2, "(2,inf) oracle agreement", ok,
                  f"random oracle vs closed form {oracle_err:.2e}, estimate vs closed form {est_err:.2e}", t0)


# 3 ---------------------------------------------------------------------------

def check_3():
    t0 = time.time()
    parts, ok = [], True
    for (p, q), (L, U) in R.TRIG_BANDS.items():
        vals = [best_witness(n, s, p, q).normalized
                for n in (8, 16, 32, 64, 128) for s in (1, 2, 4, 8, 16)]
        lo, hi, spread = band(vals)
        ok &= L <= lo and hi <= U and U / L <= 100
        parts.append(f"({p:g},{q:g}) [{lo:.4g},{hi:.4g}] in [{L},{U}]")
    vals = [bn_constant_1_inf(n, s) / trig_envelope(n, s, 1.0, INF)
            for n in (8, 16, 32, 64, 128) for s in (1, 2, 4, 8, 16)]
    lo, hi, spread = band(vals)
    L, U = R.EXTREMAL_BAND
    ok &= L <= lo and hi <= U and U / L <= 20
    parts.append(f"extremal [{lo:.4g},{hi:.4g}] in [{L},{U}]")
    ok &= time.time() - t0 < 900
    return record(3, "two-sided trigonometric band", ok, "; ".join(parts), t0)


# 4 ---------------------------------------------------------------------------

def check_4():
    t0 = time.time()
    grid = (4, 8, 16, 32, 64, 128)
    vals = [concave_witness(n, s).normalized for n in grid for s in grid]
    lo, hi, _ = band(vals)
    L, U = R.CONCAVE_BAND
    ok = L <= lo and hi <= U and U / L <= 50
    rng = np.random.default_rng(4)
    worst = 0.0
    for _ in range(200):
        c = random_concave(int(rng.choice([8, 16, 32, 64, 128, 256])), rng)
        worst = max(worst, max(moment_ratio(c, s) for s in (1, 2, 4, 8, 16, 32, 64, 128)))
    ok &= worst <= R.MOMENT_K and time.time() - t0 < 600
    return record(4, "concave band", ok,
                  f"witness [{lo:.4g},{hi:.4g}] in [{L},{U}]; moment ratio max {worst:.4g} <= K={R.MOMENT_K}", t0)


# 5 ---------------------------------------------------------------------------

def check_5():
    t0 = time.time()
    parts, ok = [], True
    for (p, q), L in R.BUMP_LOWER.items():
        vals = [entire_bump_witness(s, p, q).normalized for s in range(2, 25)]
        ok &= min(vals) >= L > 0
        parts.append(f"({p:g},{q:g}) min {min(vals):.4g} >= {L}")
    scale = 0.0
    for s in (2, 4, 8):
        for p in (1.0, 2.0):
            d = _bump.bump_norm_direct(s, p)
            scale = max(scale, abs(d / (s ** (1 / p) * _bump.phi_hat_norm(p)) - 1))
    ok &= scale <= 1e-6 and time.time() - t0 < 600
    parts.append(f"scaling identity err {scale:.2e}")
    return record(5, "entire bump lower bound", ok, "; ".join(parts), t0)


# 6 ---------------------------------------------------------------------------

def check_6():
    t0 = time.time()
    cons = resid = alt = 0.0
    zeros_ok = True
    dist_gap = 0.0
    worst_cell = None
    for n in range(1, 17):
        family = basis_polys(n)
        for s in range(0, 5):
            sol = solve_extremal(n, s)
            P = sol.poly
            d = P if s == 0 else weyl_derivative(P, s)
            cons = max(cons, abs(complex(d(np.array([0.0]))[0]) - 1))
            resid = max(resid, max(sign_identity_residual(sol, Q) for Q in family) / sol.l1_norm)
            if s == 0:
                z = zeros_of_extremal(sol)
                zeros_ok &= z.count == 2 * n and bool(z.simple.all())
                for k in range(1, n + 1):
                    a = np.zeros(k)
                    a[-1] = 1.0
                    alt = max(alt, alternation_residual(sol, from_sine(a)))
            dist = dist_to_high_frequencies(n, s, 4 * n)
            gap = abs(dist - sol.constant) / sol.constant
            if gap > dist_gap:
                dist_gap, worst_cell = gap, (n, s)
    structure = cons <= 1e-9 and resid <= 1e-6 and zeros_ok and alt <= 1e-6
    ok = structure and dist_gap <= 5e-2 and time.time() - t0 < 600
    detail = (f"constraint {cons:.2e}, sign identity {resid:.2e}, 2n simple zeros {zeros_ok}, "
              f"alternation {alt:.2e}; dist(N=4n) max rel gap {dist_gap:.3g} at (n,s)={worst_cell} "
              f"(limit 5e-2)")
    return record(6, "extremal structure", ok, detail, t0)


# 7 ---------------------------------------------------------------------------

def check_7():
    t0 = time.time()
    rng = np.random.default_rng(7)
    ratios, below = [], 0
    qsup = {}
    for _ in range(200):
        n = int(rng.choice([8, 16, 32, 64, 128, 256]))
        c = random_concave(n, rng)
        S = s_functional(c)
        r = quasinorm(build_poly(c), 1.0) / S
        if n not in qsup:
            qsup[n] = quasinorm(nikolskii_q(n), INF)
        lower = nikolskii_pairing(c.values) / (qsup[n] * S)
        below += r < lower * (1 - 1e-9)
        ratios.append(r)
    lo, hi, _ = band(ratios)
    A, B = R.L1_COEFF_BAND
    universal = math.pi / max(qsup.values())
    ok = A <= lo and hi <= B and B / A <= 20 and below == 0 and A >= universal
    ok &= time.time() - t0 < 300
    return record(7, "coefficient functional band", ok,
                  f"[{lo:.4g},{hi:.4g}] in [{A},{B}]; pairing bound violations {below}; "
                  f"A >= pi/max||Q||_inf = {universal:.4g}", t0)


# 8 ---------------------------------------------------------------------------

def check_8():
    t0 = time.time()
    rng = np.random.default_rng(8)
    a = discrete_seq(rng.standard_normal(21) + 1j * rng.standard_normal(21), offset=-10)
    f = synthesize_f_a(a)
    m = np.arange(-60, 61)
    interp = float(np.max(np.abs(f(np.pi * m) - np.array([(-1) ** int(k) * a[k] for k in m]))))
    hc = hilbert(a, "half", W=100)
    half = float(np.max(np.abs(f(np.pi * (m + 0.5))
                               - np.array([(-1) ** int(k) * hc.window[k] / np.pi for k in m]))))
    ok = interp <= 1e-10 and half <= 1e-10
    decisions = (math.isinf(hp_quasinorm(delta(0), 1.0).value),
                 math.isfinite(hp_quasinorm(discrete_seq([1, -1]), 1.0).value),
                 math.isinf(hp_quasinorm(discrete_seq([1, -1]), 0.5).value))
    ok &= all(decisions)
    parts = [f"interpolation {max(interp, half):.2e}", f"delta decisions {decisions}"]
    eq_all = []
    for p in (1 / 3, 1 / 2, 1.0):
        prng = np.random.default_rng(int(round(1 / p)))
        atoms, hcs = [], []
        for _ in range(100):
            at, I = random_atom(p, prng)
            ok &= validate_atom(at, I, p).valid
            h, hs = hp_quasinorm(at, p), hp_quasinorm(at, p, "half")
            eq_all.append(hs.value / h.value)
            hcs.append(hs.hilbert_lp)
            atoms.append(at)
        for _ in range(20):
            # finite combination sum lambda_j a_j with known decomposition
            idx = prng.choice(len(atoms), 3, replace=False)
            comb = None
            for j, lam in zip(idx, prng.uniform(0.2, 1.0, 3)):
                b = DiscreteSeq(atoms[j].offset + int(prng.integers(-50, 51)), atoms[j].values).scaled(lam)
                comb = b if comb is None else comb + b
            eq_all.append(hp_quasinorm(comb, p, "half").value / hp_quasinorm(comb, p).value)
        C = R.HC_ATOM_BOUND[p]
        ok &= max(hcs) <= C
        fm = []
        for at in atoms[:3]:
            fm.append(max(atom_fourier_moment(at, s, p) * s ** (1 / p) for s in range(1, 41)))
        ok &= max(fm) <= R.FOURIER_MOMENT_BOUND
        parts.append(f"p={Fraction(p).limit_denominator(10)}: ||H_c a||_p max {max(hcs):.4g} <= {C}, "
                     f"s^(1/p) moment max {max(fm):.3g}")
    two = discrete_seq([0.5, -0.5])
    fm2 = [atom_fourier_moment(two, s, 1.0) * s for s in range(1, 41)]
    ok &= max(fm2) <= R.FOURIER_MOMENT_BOUND and max(fm2[30:]) <= max(fm2[:30])
    lo, hi, _ = band(eq_all)
    L, U = R.HARDY_EQUIV_BAND
    ok &= L <= lo and hi <= U
    parts.append(f"H_c/H equivalence [{lo:.4g},{hi:.4g}] in [{L},{U}]; two-point atom s*moment max {max(fm2):.3g}")
    ok &= time.time() - t0 < 300
    return record(8, "discrete Hardy suite", ok, "; ".join(parts), t0)


# 9 ---------------------------------------------------------------------------

def check_9(tmp):
    t0 = time.time()
    cfg = {"command": "sweep",
           "witnesses": ["exponential", "modulated_jackson", "concave_tnl", "entire_bump", "extremal"],
           "n_list": [8, 16, 32], "s_list": [1, 2, 3], "pq_pairs": [[1, "inf"], [2, "inf"], [1, 2]],
           "seed": 17, "grid_overrides": {}, "output_dir": str(tmp)}
    cfg_path = tmp / "determinism.json"
    cfg_path.write_text(json.dumps(cfg))
    outs = []
    codes = []
    for tag, workers in (("a", 1), ("b", 8), ("c", 1)):
        out = tmp / f"sweep_{tag}.csv"
        codes.append(cli_main(["sweep", str(cfg_path), "--workers", str(workers), "--output", str(out)]))
        outs.append(out.read_bytes())
    rows = outs[0].count(b"\n") - 1
    ok = outs[0] == outs[1] == outs[2] and codes == [0, 0, 0] and rows > 0
    return record(9, "sweep determinism", ok,
                  f"{rows} rows, byte-identical across 1/8/1 workers: {outs[0] == outs[1] == outs[2]}, "
                  f"exit codes {codes}", t0)


# pytest entry points ---------------------------------------------------------

def test_acceptance_1_exactness():
    assert check_1(), RESULTS[1]


def test_acceptance_2_oracle_agreement():
    assert check_2(), RESULTS[2]


def test_acceptance_3_trig_band():
    assert check_3(), RESULTS[3]


def test_acceptance_4_concave_band():
    assert check_4(), RESULTS[4]


def test_acceptance_5_entire_lower_bound():
    assert check_5(), RESULTS[5]


def test_acceptance_6_extremal_structure():
    assert check_6(), RESULTS[6]


def test_acceptance_7_coefficient_band():
    assert check_7(), RESULTS[7]


def test_acceptance_8_hardy_suite():
    assert check_8(), RESULTS[8]


def test_acceptance_9_determinism(tmp_path):
    assert check_9(tmp_path), RESULTS[9]


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    which = [int(a) for a in sys.argv[1:]] or list(range(1, 10))
    status = 0
    for k in which:
        if k == 9:
            with tempfile.TemporaryDirectory() as d:
                good = check_9(Path(d))
        else:
            good = globals()[f"check_{k}"]()
        status |= not good
    sys.exit(status)
