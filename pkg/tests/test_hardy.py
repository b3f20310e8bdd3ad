"""Tests for discrete Hardy spaces, atoms and sinc synthesis."""

import math
from fractions import Fraction
from math import comb

import numpy as np
import pytest

from bnineq.errors import DomainError
from bnineq.hardy import (DiscreteSeq, atom_fourier_moment, delta, discrete_seq,
                          first_nonvanishing_moment, hilbert, hp_quasinorm, moments, random_atom,
                          synthesize_f_a, validate_atom, vanishing_order)


def window_values(res, ms):
    return np.array([res.window[m] for m in ms])


class TestHilbert:
    def test_delta(self):
        res = hilbert(delta(0), W=50)
        m = np.arange(-40, 41)
        expect = np.where(m == 0, 0.0, 1.0 / np.where(m == 0, 1, m))
        assert np.allclose(window_values(res, m), expect, atol=1e-15)

    def test_dipole(self):
        res = hilbert(discrete_seq([1, -1]), W=50)
        assert res.window[0] == pytest.approx(1)
        assert res.window[1] == pytest.approx(1)
        for m in (-7, -2, 2, 5, 30):
            assert res.window[m] == pytest.approx(1 / m - 1 / (m - 1), abs=1e-15)

    def test_half(self):
        res = hilbert(delta(0), "half", W=20)
        m = np.arange(-15, 16)
        assert np.allclose(window_values(res, m), 1 / (m + 0.5), atol=1e-15)

    def test_tail_model_matches_direct(self, rng):
        a = discrete_seq(rng.standard_normal(6), offset=-2)
        res = hilbert(a, W=40)
        far = np.array([200, -300, 1000])
        direct = np.array([sum(a[k] / (m - k) for k in a.indices) for m in far])
        assert np.allclose(res.tail.value(far), direct, rtol=1e-12)
        assert np.all(np.abs(direct) <= res.tail.bound(far) * (1 + 1e-12))

    def test_bad_kind(self):
        with pytest.raises(DomainError):
            hilbert(delta(0), "quarter")


class TestMoments:
    def test_dipole(self):
        mu = moments(discrete_seq([1, -1]), 1)
        assert mu[0] == 0 and mu[1] == -1
        assert first_nonvanishing_moment(discrete_seq([1, -1])) == 1

    def test_binomial_shift(self, rng):
        a = discrete_seq(rng.integers(-5, 6, 7).tolist(), offset=3)
        M = 4
        mu0 = moments(a, 4)
        muM = moments(a, 4, center=M)
        for j in range(5):
            expand = sum(comb(j, i) * mu0[i] * (-M) ** (j - i) for i in range(j + 1))
            assert muM[j] == pytest.approx(expand)

    def test_atom_moments_vanish(self, rng):
        for _ in range(5):
            a, _ = random_atom(0.5, rng)
            assert moments(a, 1) == [0, 0]


class TestQuasinorm:
    def test_delta_diverges(self):
        h = hp_quasinorm(delta(0), 1.0)
        assert h.divergent and math.isinf(h.value)

    def test_dipole_finite(self):
        h = hp_quasinorm(discrete_seq([1, -1]), 1.0)
        assert not h.divergent
        # ||a||_1 = 2 and sum |H| = 2 + 2 sum_{m>=2} 1/(m(m-1)) = 4
        assert h.lp == pytest.approx(2)
        assert h.hilbert_lp == pytest.approx(4, rel=1e-10)

    def test_dipole_diverges_at_half(self):
        assert math.isinf(hp_quasinorm(discrete_seq([1, -1]), 0.5).value)

    def test_window_doubling(self, rng):
        for p in (1.0, 0.5):
            a, _ = random_atom(p, rng)
            v1 = hp_quasinorm(a, p, W=2000).value
            v2 = hp_quasinorm(a, p, W=4000).value
            assert v2 == pytest.approx(v1, rel=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            hp_quasinorm(delta(0), 1.5)


class TestAtoms:
    def test_two_point(self):
        a = discrete_seq([Fraction(1, 2), Fraction(-1, 2)])
        assert validate_atom(a, (0, 1), 1.0).valid
        cert = validate_atom(a, (0, 1), 0.5)
        assert not cert.valid and not cert.moments_ok

    def test_four_point(self):
        # (1, -3, 3, -1) kills moments 0 and 1; scale to |I|^{-2} = 1/9
        a = discrete_seq([Fraction(v, 27) for v in (1, -3, 3, -1)])
        assert validate_atom(a, (0, 3), 0.5).valid

    def test_short_interval(self):
        with pytest.raises(DomainError):
            validate_atom(delta(0), (2, 2), 1.0)

    @pytest.mark.parametrize("p", [1 / 3, 0.5, 1.0])
    def test_random_atoms_valid(self, p, rng):
        for _ in range(10):
            a, I = random_atom(p, rng)
            assert validate_atom(a, I, p).valid
            assert first_nonvanishing_moment(a) > vanishing_order(p)

    def test_vanishing_order(self):
        assert [vanishing_order(p) for p in (1.0, 0.5, 1 / 3, 0.4)] == [0, 1, 2, 1]


class TestSynthesis:
    def test_interpolation(self, rng):
        a = discrete_seq(rng.standard_normal(9) + 1j * rng.standard_normal(9), offset=-4)
        f = synthesize_f_a(a)
        m = np.arange(-20, 21)
        expect = np.array([(-1) ** int(k) * a[k] for k in m])
        assert np.max(np.abs(f(np.pi * m) - expect)) < 1e-10

    def test_half_integer_samples(self, rng):
        a = discrete_seq(rng.standard_normal(7), offset=2)
        f = synthesize_f_a(a)
        hc = hilbert(a, "half", W=40)
        m = np.arange(-20, 21)
        expect = np.array([(-1) ** int(k) * hc.window[k] / np.pi for k in m])
        assert np.max(np.abs(f(np.pi * (m + 0.5)) - expect)) < 1e-12

    def test_p2_isometry(self, rng):
        a = discrete_seq(rng.standard_normal(12))
        f = synthesize_f_a(a)
        assert f.line_norm(2.0) == pytest.approx(math.sqrt(math.pi) * np.linalg.norm(a.values), rel=1e-6)

    @pytest.mark.parametrize("p", [0.5, 1.0, 2.0])
    def test_plancherel_polya_band(self, p, rng):
        ratios = []
        for _ in range(4):
            a, _ = random_atom(min(p, 1.0), rng, N=8)
            f = synthesize_f_a(a)
            ratios.append(f.sampled_norm(p) / f.line_norm(p))
        assert max(ratios) / min(ratios) < 3

    def test_divergent_line_norm(self):
        assert math.isinf(synthesize_f_a(delta(0)).line_norm(1.0))


class TestFourierMoment:
    def test_two_point_atom(self):
        a = discrete_seq([0.5, -0.5])
        vals = [atom_fourier_moment(a, s, 1.0, panels=1000) * s for s in (1, 5, 10, 20, 40)]
        assert max(vals) < 2.0

    def test_four_point_atom(self):
        a = discrete_seq([Fraction(v, 27) for v in (1, -3, 3, -1)])
        vals = [atom_fourier_moment(a, s, 0.5, panels=1000) * s ** 2 for s in (1, 5, 10, 20, 40)]
        assert max(vals) < 2.0

    def test_g_vanishes_at_one(self):
        a, _ = random_atom(1.0, np.random.default_rng(3))
        k = a.indices
        for xi in (1.0, -1.0):
            g = np.pi * np.sum(a.values * (-1.0) ** k * np.exp(-1j * k * np.pi * xi))
            assert abs(g) < 1e-12

    def test_invalid_atom(self):
        with pytest.raises(DomainError):
            atom_fourier_moment(delta(0), 2, 1.0)

    def test_translation_invariant(self, rng):
        a, I = random_atom(1.0, rng, N=6)
        b = DiscreteSeq(a.offset + 7, a.values, a.exact)
        v1 = atom_fourier_moment(a, 3, 1.0, panels=500)
        v2 = atom_fourier_moment(b, 3, 1.0, panels=500)
        assert v2 == pytest.approx(v1, rel=1e-12)
