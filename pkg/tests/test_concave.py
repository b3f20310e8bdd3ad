"""Tests for concave sequences, the V_l basis and the coefficient functionals."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bnineq.concave import (TAIL_K, build_poly, concave_seq, decompose, h_ns, h_ns_sup, is_concave,
                            mean_tail_sum, moment_ratio, moment_sum, concave_envelope,
                            pointwise_tail_bound_check, random_concave, reconstruct, s_functional,
                            tail_integral, v_basis, v_weighted_sum_exact, v_weighted_sum_fraction)
from bnineq.errors import DomainError
from bnineq.kernels import dirichlet, nikolskii_pairing, nikolskii_q
from bnineq.trigpoly import quasinorm


def harmonic(m):
    return sum(Fraction(1, j) for j in range(1, m + 1))


class TestIsConcave:
    def test_ones(self):
        assert is_concave([1, 1, 1, 1])

    def test_step_down(self):
        assert not is_concave([1, 0, 0])

    @pytest.mark.parametrize("n", [1, 5, 16])
    def test_basis_elements(self, n):
        assert all(is_concave(v_basis(n, l)) for l in range(n + 1))

    def test_empty(self):
        with pytest.raises(DomainError):
            is_concave([])

    def test_snapping(self):
        c = np.array([1.0, 0.75, 0.5, 0.25]) + 1e-15
        assert concave_seq(c).values == pytest.approx([1.0, 0.75, 0.5, 0.25], abs=1e-14)
        with pytest.raises(DomainError):
            concave_seq([1.0, 0.2, 0.1])


class TestBasis:
    def test_examples(self):
        n = 6
        assert v_basis(n, 0).exact == tuple(Fraction(n - k + 1, n) for k in range(n + 1))
        assert v_basis(n, n).exact == (Fraction(1, n),) * (n + 1)
        for l in range(n + 1):
            assert v_basis(n, l).exact[l] == 1 - Fraction(l - 1, n)

    def test_range(self):
        with pytest.raises(DomainError):
            v_basis(4, 5)


class TestDecompose:
    def test_ones(self):
        g = decompose([1] * 9)
        assert g[-1] == 8 and not g[:-1].any()

    def test_v0(self):
        g = decompose(v_basis(7, 0))
        assert g[0] == 1 and not g[1:].any()

    def test_not_concave(self):
        with pytest.raises(DomainError):
            decompose([1, 0, 0])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(1, 40), st.integers(0, 10 ** 6))
    def test_round_trip(self, n, seed):
        rng = np.random.default_rng(seed)
        g = np.where(rng.random(n + 1) < 0.5, rng.exponential(1.0, n + 1), 0.0)
        g[rng.integers(0, n + 1)] += 1.0
        c = reconstruct(g, n)
        assert np.allclose(decompose(c), g, atol=1e-10)
        assert np.max(np.abs(reconstruct(decompose(c), n) - c)) < 1e-12


class TestFunctionals:
    def test_s_functional_examples(self):
        n = 9
        assert s_functional(np.ones(n + 1)) == pytest.approx(float(harmonic(n + 1)), rel=1e-14)
        assert s_functional(v_basis(n, 0)) == pytest.approx((n + 1) / n, rel=1e-14)
        assert s_functional(v_basis(n, n)) == pytest.approx(float(harmonic(n + 1)) / n, rel=1e-14)

    def test_weighted_sum_examples(self):
        n = 4
        assert v_weighted_sum_fraction(n, 0) == Fraction(n + 1, n)
        assert v_weighted_sum_fraction(4, 4) == Fraction(1, 4) * (harmonic(5) + 1) - Fraction(1, 4)

    def test_weighted_sum_agrees(self):
        worst = max(abs(v_weighted_sum_exact(n, l) - s_functional(v_basis(n, l)))
                    for n in range(1, 65) for l in range(n + 1))
        assert worst < 1e-12

    def test_h_ns(self):
        assert h_ns(8, 3, 0.0) == 0.0
        assert h_ns(8, 3, 1.0) == pytest.approx(1 / (1 + math.log(8)))

    def test_h_ns_sup_band(self):
        vals = [h_ns_sup(n, s) / (1 / math.log(s + 2) + 1 / math.log(n + 2))
                for n in (1, 2, 8, 64) for s in (1, 2, 8, 64)]
        assert max(vals) < 2.0 and min(vals) > 0

    def test_build_poly(self):
        assert np.allclose(build_poly([1.0]).coeffs, [1])
        assert np.allclose(build_poly(np.ones(5)).coeffs, dirichlet(4).coeffs)
        c = v_basis(5, 2)
        assert build_poly(c)(np.array([0.0]))[0].real == pytest.approx(c.values[0] + 2 * c.values[1:].sum())

    def test_tail_integral_matches_quadrature(self):
        from scipy.integrate import quad
        c = v_basis(12, 4)
        n = c.n

        def f(x):
            return c.values[n - math.floor(1 / x + 1)] / x

        pts = [1 / j for j in range(2, n)]
        val = quad(f, 1 / n, math.pi, points=pts, limit=500)[0]
        assert tail_integral(c) == pytest.approx(val, rel=1e-8)

    def test_moment_ratio(self, rng):
        c = random_concave(20, rng)
        direct = moment_sum(c, 3) / (concave_envelope(20, 3) * s_functional(c))
        assert moment_ratio(c, 3) == pytest.approx(direct, rel=1e-12)
        assert math.isfinite(moment_ratio(random_concave(256, rng), 128))


class TestTailBound:
    def test_constant_sequence(self):
        n = 16
        ok, ratio = pointwise_tail_bound_check(v_basis(n, n), 1.0)
        T = build_poly(v_basis(n, n))
        assert ratio == pytest.approx(abs(T(np.array([1.0]))[0]) * n, rel=1e-12)
        assert ok

    def test_ones_at_half_pi(self):
        ok, ratio = pointwise_tail_bound_check(np.ones(17), math.pi / 2)
        assert ok and ratio < TAIL_K

    def test_range(self):
        with pytest.raises(DomainError):
            pointwise_tail_bound_check(np.ones(5), 0.1)

    def test_sweep(self, rng):
        worst = 0.0
        for _ in range(30):
            n = int(rng.choice([8, 32, 128]))
            c = random_concave(n, rng)
            for x in rng.uniform(1 / n, math.pi, 10):
                x = float(min(max(x, 1 / n + 1e-9), math.pi - 1e-9))
                worst = max(worst, pointwise_tail_bound_check(c, x)[1])
        assert worst < TAIL_K


def test_l1_lower_bound_from_pairing(rng):
    # int T Q <= ||T||_1 ||Q||_inf gives ||T||_1 / S(c) >= pairing / (||Q||_inf S(c))
    for n in (8, 64):
        Qn = quasinorm(nikolskii_q(n), math.inf)
        for _ in range(5):
            c = random_concave(n, rng)
            lower = nikolskii_pairing(c.values) / Qn
            assert quasinorm(build_poly(c), 1.0) >= lower * (1 - 1e-9)


def test_mean_tail_band(rng):
    vals = [mean_tail_sum(c) / s_functional(c)
            for c in (random_concave(int(rng.choice([8, 64, 256])), rng) for _ in range(50))]
    assert max(vals) < 3.0
