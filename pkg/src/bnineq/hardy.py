"""Discrete Hardy spaces ``H_p(Z)``, atoms and sinc synthesis.

``H(a)_m = sum_{k != m} a_k / (m - k)`` and the shifted variant
``H_c(a)_m = sum_k a_k / (m - k + 1/2)``. Far from the support both are
multipole series ``sum_j mu_j / x^{j+1}`` in the moments ``mu_j`` of
``a``, so their ``l_p`` tails can be summed without truncation, and the
first nonvanishing moment ``J`` decides convergence: ``|H_m| ~ m^{-(J+1)}``
is ``p``-summable iff ``p (J + 1) > 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.special import gamma

from . import _backend
from .errors import DomainError, MalformedInputError

__all__ = [
    "DiscreteSeq", "discrete_seq", "delta", "moments", "first_nonvanishing_moment",
    "HilbertResult", "hilbert", "HpNorm", "hp_quasinorm", "vanishing_order",
    "AtomCertificate", "validate_atom", "random_atom", "SincSynthesis", "synthesize_f_a",
    "atom_fourier_moment", "DEFAULT_WINDOW", "MOMENT_TOL",
]

DEFAULT_WINDOW = 10_000
# relative threshold for a vanishing moment when no exact values are stored
MOMENT_TOL = 1e-12
_EXPLICIT_TAIL = 100_000
_GL_X, _GL_W = leggauss(16)


@dataclass(frozen=True, eq=False)
class DiscreteSeq:
    """Finitely supported sequence ``a_k``, ``k = offset .. offset + len - 1``.

    ``exact`` optionally holds the entries as ``Fraction`` (real sequences
    only); moments are then computed without rounding.
    """

    offset: int
    values: np.ndarray
    exact: tuple | None = field(default=None, repr=False)

    def __len__(self):
        return self.values.size

    @property
    def indices(self) -> np.ndarray:
        return self.offset + np.arange(self.values.size)

    @property
    def support(self) -> tuple[int, int] | None:
        nz = np.nonzero(self.values)[0]
        if nz.size == 0:
            return None
        return self.offset + int(nz[0]), self.offset + int(nz[-1])

    def __getitem__(self, k: int) -> complex:
        j = k - self.offset
        if 0 <= j < self.values.size:
            return complex(self.values[j])
        return 0j

    def __add__(self, other: "DiscreteSeq") -> "DiscreteSeq":
        lo = min(self.offset, other.offset)
        hi = max(self.offset + len(self), other.offset + len(other))
        vals = np.zeros(hi - lo, dtype=np.complex128)
        vals[self.offset - lo:self.offset - lo + len(self)] += self.values
        vals[other.offset - lo:other.offset - lo + len(other)] += other.values
        exact = None
        if self.exact is not None and other.exact is not None:
            ex = [Fraction(0)] * (hi - lo)
            for s in (self, other):
                for j, v in enumerate(s.exact):
                    ex[s.offset - lo + j] += v
            exact = tuple(ex)
        return DiscreteSeq(lo, vals, exact)

    def scaled(self, c) -> "DiscreteSeq":
        exact = None
        if self.exact is not None and isinstance(c, (int, Fraction)):
            exact = tuple(c * v for v in self.exact)
        return DiscreteSeq(self.offset, self.values * complex(c), exact)


def discrete_seq(values, offset: int = 0) -> DiscreteSeq:
    """Build a :class:`DiscreteSeq`; ``int``/``Fraction`` entries are kept exactly."""
    vals = list(values)
    if not vals:
        raise MalformedInputError("empty sequence")
    exact = None
    if all(isinstance(v, (int, np.integer, Fraction)) for v in vals):
        exact = tuple(Fraction(int(v)) if not isinstance(v, Fraction) else v for v in vals)
    arr = np.array([complex(v) for v in vals], dtype=np.complex128)
    arr.setflags(write=False)
    return DiscreteSeq(int(offset), arr, exact)


def delta(k: int = 0) -> DiscreteSeq:
    return discrete_seq([1], offset=k)


def _exact_entries(a: DiscreteSeq):
    """Entries as pairs of Fractions (real, imaginary); floats convert exactly."""
    if a.exact is not None:
        return [(v, Fraction(0)) for v in a.exact]
    return [(Fraction(float(v.real)), Fraction(float(v.imag))) for v in a.values]


def moments(a: DiscreteSeq, jmax: int, center=0) -> list[complex]:
    """``sum_k a_k (k - center)^j`` for ``j = 0..jmax``, accumulated in exact rationals."""
    c = Fraction(center)
    ent = _exact_entries(a)
    out = []
    for j in range(jmax + 1):
        re = im = Fraction(0)
        for i, (vr, vi) in enumerate(ent):
            w = (a.offset + i - c) ** j
            re += vr * w
            im += vi * w
        out.append(complex(float(re), float(im)))
    return out


def _moment_vanishes(a: DiscreteSeq, j: int, center) -> bool:
    c = Fraction(center)
    ent = _exact_entries(a)
    re = im = Fraction(0)
    for i, (vr, vi) in enumerate(ent):
        w = (a.offset + i - c) ** j
        re += vr * w
        im += vi * w
    if a.exact is not None:
        return re == 0 and im == 0
    k = a.indices.astype(np.float64) - float(c)
    scale = float(np.sum(np.abs(a.values) * np.abs(k) ** j))
    return abs(complex(float(re), float(im))) <= MOMENT_TOL * max(scale, 1e-300)


def first_nonvanishing_moment(a: DiscreteSeq) -> int | None:
    """Smallest ``j`` with ``sum a_k k^j != 0``; ``None`` for the zero sequence.

    A nonzero sequence on ``N`` points has one below ``N`` (Vandermonde).
    """
    if a.support is None:
        return None
    for j in range(len(a)):
        if not _moment_vanishes(a, j, 0):
            return j
    return None


def _shift(kind: str) -> float:
    if kind == "integer":
        return 0.0
    if kind == "half":
        return 0.5
    raise DomainError(f"offset kind must be 'integer' or 'half', got {kind!r}")


@dataclass(frozen=True, eq=False)
class TailModel:
    """``H_m = sum_{j >= J} mu_j / (m + shift - center)^{j+1}`` outside the window.

    ``bound(m)`` is the crude ``sum |a_k| / (|m + shift - center| - R)``.
    """

    J: int | None
    center: float
    radius: float
    shift: float
    mu: tuple
    l1: float

    def value(self, m):
        x = np.asarray(m, dtype=np.float64) + self.shift - self.center
        out = np.zeros(x.shape, dtype=np.complex128)
        if self.J is None:
            return out
        for j, mj in enumerate(self.mu, start=self.J):
            out += mj / x ** (j + 1)
        return out

    def bound(self, m):
        x = np.abs(np.asarray(m, dtype=np.float64) + self.shift - self.center)
        return self.l1 / (x - self.radius)


@dataclass(frozen=True, eq=False)
class HilbertResult:
    window: DiscreteSeq
    tail: TailModel


def _tail_model(a: DiscreteSeq, shift: float, W: int) -> TailModel:
    lo, hi = a.support if a.support else (a.offset, a.offset)
    center = Fraction(lo + hi, 2)
    R = (hi - lo) / 2
    J = first_nonvanishing_moment(a)
    l1 = float(np.sum(np.abs(a.values)))
    if J is None:
        return TailModel(None, float(center), R, shift, (), l1)
    # enough terms for (R/W)^K below double precision
    ratio = max(R, 1.0) / max(W, 2.0)
    K = max(4, math.ceil(17 / max(-math.log10(ratio), 0.5)))
    mu = moments(a, J + K, center)[J:]
    return TailModel(J, float(center), R, shift, tuple(mu), l1)


def hilbert(a: DiscreteSeq, offset_kind: str = "integer", W: int = DEFAULT_WINDOW) -> HilbertResult:
    """``H(a)`` (integer kind) or ``H_c(a)`` (half kind) exactly on ``[lo - W, hi + W]``.

    Outside the window the :class:`TailModel` gives the multipole expansion.
    """
    shift = _shift(offset_kind)
    lo, hi = a.support if a.support else (a.offset, a.offset)
    m_lo, m_hi = lo - W, hi + W
    vals = _backend.hilbert_window(np.ascontiguousarray(a.values, dtype=np.complex128),
                                   a.offset, m_lo, m_hi, shift)
    return HilbertResult(DiscreteSeq(m_lo, vals), _tail_model(a, shift, W))


def _tail_power_sum(mu, J: int, x0: float, p: float) -> float:
    """``sum_{i >= 0} |sum_j mu_j / (x0 + i)^{j+1}|^p`` for ``x0`` beyond the support radius.

    Explicit terms up to ``x0 + L``, then the midpoint-rule integral in
    ``t = 1/x`` with the algebraic endpoint weight.
    """
    mu = np.asarray(mu, dtype=np.complex128)
    x = x0 + np.arange(_EXPLICIT_TAIL, dtype=np.float64)
    vals = np.zeros(x.size, dtype=np.complex128)
    for i, mj in enumerate(mu):
        vals += mj / x ** (J + i + 1)
    total = float(np.sum(np.abs(vals) ** p))
    X = x0 + _EXPLICIT_TAIL - 0.5
    alpha = p * (J + 1) - 2.0

    def g(t):
        return abs(sum(mj * t ** i for i, mj in enumerate(mu))) ** p

    val, _ = integrate.quad(g, 0.0, 1.0 / X, weight="alg", wvar=(alpha, 0.0),
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return total + val


@dataclass(frozen=True)
class HpNorm:
    """``||a||_p + ||H(a)||_p`` with its parts; ``value`` is ``inf`` on divergence."""

    value: float
    lp: float
    hilbert_lp: float
    divergent: bool
    J: int | None


def vanishing_order(p: float) -> int:
    """``j_0 = floor(1/p - 1)``, with ``1/p`` read as a simple fraction."""
    if not 0 < p <= 1:
        raise DomainError(f"p must lie in (0, 1], got {p}")
    inv = 1 / Fraction(p).limit_denominator(10 ** 6)
    return math.floor(inv - 1)


def hp_quasinorm(a: DiscreteSeq, p: float, offset_kind: str = "integer",
                 W: int = DEFAULT_WINDOW) -> HpNorm:
    """``||a||_{l_p} + ||H(a)||_{l_p}`` with the tail summed from the multipole model.

    Divergence (``p (J+1) <= 1`` for the first nonvanishing moment ``J``)
    is decided before any summation and reported as ``inf``.
    """
    if not 0 < p <= 1:
        raise DomainError(f"p must lie in (0, 1], got {p}")
    lp = float(np.sum(np.abs(a.values) ** p) ** (1 / p))
    J = first_nonvanishing_moment(a)
    if J is None:
        return HpNorm(0.0, 0.0, 0.0, False, None)
    if p * (J + 1) <= 1:
        return HpNorm(math.inf, lp, math.inf, True, J)
    res = hilbert(a, offset_kind, W)
    tm = res.tail
    inside = float(np.sum(np.abs(res.window.values) ** p))
    m_lo = res.window.offset
    m_hi = m_lo + len(res.window) - 1
    right = _tail_power_sum(tm.mu, J, m_hi + 1 + tm.shift - tm.center, p)
    # left side: x = m + shift - center < 0, write x = -y
    mu_left = [mj * (-1) ** (J + i + 1) for i, mj in enumerate(tm.mu)]
    left = _tail_power_sum(mu_left, J, tm.center - (m_lo - 1) - tm.shift, p)
    h = (inside + right + left) ** (1 / p)
    return HpNorm(lp + h, lp, h, False, J)


@dataclass(frozen=True)
class AtomCertificate:
    """Result of the three atom checks (support, size, moments)."""

    p: float
    interval: tuple[int, int]
    length: int
    j0: int
    support_ok: bool
    sup_value: float
    sup_bound: float
    sup_ok: bool
    moment_residuals: tuple
    moments_ok: bool

    @property
    def valid(self) -> bool:
        return self.support_ok and self.sup_ok and self.moments_ok


def validate_atom(a: DiscreteSeq, I: tuple[int, int], p: float) -> AtomCertificate:
    """Check that ``a`` is an ``H_p``-atom on the integer interval ``I = [left, right]``.

    ``|I| = right - left`` must be at least 1.
    """
    left, right = int(I[0]), int(I[1])
    length = right - left
    if length < 1:
        raise DomainError(f"interval length must be >= 1, got {length}")
    j0 = vanishing_order(p)
    sup = a.support
    support_ok = sup is None or (left <= sup[0] and sup[1] <= right)
    if a.exact is not None:
        sup_exact = max(abs(v) for v in a.exact)
        inv = 1 / Fraction(p).limit_denominator(10 ** 6)
        if inv.denominator == 1:
            bound_exact = Fraction(1, length ** int(inv))
            sup_ok = sup_exact <= bound_exact
        else:
            sup_ok = float(sup_exact) <= length ** (-1 / p) * (1 + 1e-15)
        sup_val = float(sup_exact)
    else:
        sup_val = float(np.max(np.abs(a.values)))
        sup_ok = sup_val <= length ** (-1 / p) * (1 + 1e-15)
    residuals = tuple(abs(m) for m in moments(a, j0))
    moments_ok = all(_moment_vanishes(a, j, 0) for j in range(j0 + 1))
    return AtomCertificate(p, (left, right), length, j0, support_ok, sup_val,
                           length ** (-1 / p), sup_ok, residuals, moments_ok)


def _solve_exact(A, b):
    """Gaussian elimination over Fractions for a small square system."""
    n = len(A)
    M = [list(row) + [bi] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] / M[col][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


def random_atom(p: float, rng: np.random.Generator, N: int | None = None,
                offset: int | None = None) -> tuple[DiscreteSeq, tuple[int, int]]:
    """Random ``H_p``-atom on ``N`` consecutive points, in exact rationals.

    Free entries are small random integers; the first ``j0 + 1`` entries
    solve the moment system exactly; the result is scaled so its sup is
    half the allowed ``|I|^{-1/p}`` with ``I`` the support hull.
    """
    j0 = vanishing_order(p)
    if N is None:
        N = int(rng.integers(j0 + 2, 65))
    if N < j0 + 2:
        raise DomainError(f"need at least {j0 + 2} points for p={p}, got {N}")
    if offset is None:
        offset = int(rng.integers(-32, 33))
    while True:
        free = [Fraction(int(v)) for v in rng.integers(-9, 10, size=N - j0 - 1)]
        if any(free):
            break
    # moments about the left end: sum_i a_i i^j = 0, j = 0..j0
    A = [[Fraction(i) ** j for i in range(j0 + 1)] for j in range(j0 + 1)]
    b = [-sum(f * Fraction(j0 + 1 + i) ** j for i, f in enumerate(free)) for j in range(j0 + 1)]
    head = _solve_exact(A, b)
    vals = head + free
    length = N - 1
    inv = 1 / Fraction(p).limit_denominator(10 ** 6)
    peak = max(abs(v) for v in vals)
    if inv.denominator == 1:
        target = Fraction(1, 2 * length ** int(inv))
        exact = tuple(v * target / peak for v in vals)
        seq = DiscreteSeq(offset, np.array([float(v) for v in exact], dtype=np.complex128), exact)
    else:
        target = 0.5 * length ** (-1 / p)
        seq = DiscreteSeq(offset, np.array([float(v) * target / float(peak) for v in vals],
                                           dtype=np.complex128))
    return seq, (offset, offset + length)


def _abs_sin_mean(p: float) -> float:
    """Mean of ``|sin x|^p`` over a period."""
    return gamma((p + 1) / 2) / (math.sqrt(math.pi) * gamma(p / 2 + 1))


class SincSynthesis:
    """``f_a(x) = sum_k (-1)^k a_k sinc(x - pi k)``, an entire function of type one.

    Equivalently ``f_a(x) = sin(x) sum_k a_k / (x - pi k)``, so
    ``f_a(pi m) = (-1)^m a_m`` and ``f_a(pi(m + 1/2)) = (-1)^m H_c(a)_m / pi``.
    """

    def __init__(self, a: DiscreteSeq):
        self.seq = a
        self._vals = np.ascontiguousarray(a.values, dtype=np.complex128)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = _backend.sinc_synth(self._vals, self.seq.offset, np.ascontiguousarray(x.ravel()))
        return out.reshape(x.shape)

    def sample(self, R: float, count: int) -> tuple[np.ndarray, np.ndarray]:
        x = np.linspace(-R, R, count)
        return x, self(x)

    def sampled_norm(self, p: float, margin: int = 0) -> float:
        """``(sum_m |f_a(pi m)|^p)^{1/p}`` over the support widened by ``margin``."""
        m = self.seq.indices
        if margin:
            m = np.arange(m[0] - margin, m[-1] + margin + 1)
        v = np.abs(self(np.pi * m))
        if math.isinf(p):
            return float(v.max())
        return float(np.sum(v ** p) ** (1 / p))

    def line_norm(self, p: float, R: float | None = None) -> float:
        """``||f_a||_{L_p(R)}``: quadrature on ``[-R, R]`` plus the asymptotic tail.

        Outside ``[-R, R]`` the integrand is ``|sin x|^p |S(x)|^p`` with the
        smooth multipole factor ``S``; ``|sin|^p`` is replaced by its mean.
        Returns ``inf`` when ``p (J + 1) <= 1``.
        """
        a = self.seq
        J = first_nonvanishing_moment(a)
        if J is None:
            return 0.0
        if math.isinf(p):
            x, v = self.sample(float(np.pi * (np.abs(a.indices).max() + 8)), 200_001)
            return float(np.abs(v).max())
        if p * (J + 1) <= 1:
            return math.inf
        lo, hi = a.support
        center = 0.5 * (lo + hi)
        if R is None:
            R = np.pi * (max(abs(lo), abs(hi)) + 400)
        # panels between multiples of pi/8 so the zeros of sin are edges
        edges = np.arange(-R, R + 1e-9, np.pi / 8)
        lo_e, hi_e = edges[:-1, None], edges[1:, None]
        nodes = ((lo_e + hi_e) / 2 + (hi_e - lo_e) / 2 * _GL_X[None, :]).ravel()
        weights = ((hi_e - lo_e) / 2 * _GL_W[None, :]).ravel()
        inside = float(np.sum(np.abs(self(nodes)) ** p * weights))
        # S(x) = sum_j pi^j mu_j(center) / (x - pi center)^{j+1}
        K = 12
        mu = np.array(moments(a, J + K, Fraction(center).limit_denominator(2)))[J:]
        mu = mu * np.pi ** np.arange(J, J + K + 1)
        mean = _abs_sin_mean(p)
        tail = 0.0
        for sgn in (1.0, -1.0):
            X = R - sgn * np.pi * center  # distance from pi*center to +-R

            def g(t, sgn=sgn):
                return abs(sum(mj * sgn ** (i + J + 1) * t ** i for i, mj in enumerate(mu))) ** p

            val, _ = integrate.quad(g, 0.0, 1.0 / X, weight="alg", wvar=(p * (J + 1) - 2.0, 0.0),
                                    epsabs=0.0, epsrel=1e-10, limit=200)
            tail += mean * val
        return float((inside + tail) ** (1 / p))


def synthesize_f_a(a: DiscreteSeq) -> SincSynthesis:
    return SincSynthesis(a)


def atom_fourier_moment(a: DiscreteSeq, s: int, p: float, I: tuple[int, int] | None = None,
                        panels: int = 4000) -> float:
    """``int_{-1}^{1} |xi|^s |g(xi)| dxi`` with ``g(xi) = pi sum_k (-1)^k a_k e^{-ik pi xi}``.

    Recentering the atom multiplies ``g`` by a unimodular factor, so the
    value does not depend on the centring index.

    Raises
    ------
    DomainError
        If ``a`` is not an ``H_p``-atom on ``I`` (default: its support hull,
        widened to length one).
    """
    if I is None:
        lo, hi = a.support
        I = (lo, max(hi, lo + 1))
    cert = validate_atom(a, I, p)
    if not cert.valid:
        raise DomainError(f"not an H_{p}-atom on {I}: {cert}")
    k = a.indices
    c = a.values * np.where(k % 2 == 0, 1.0, -1.0)
    # grade toward +-1, where |xi|^s concentrates and g vanishes
    t = np.linspace(0.0, 1.0, panels + 1)
    half = 1.0 - (1.0 - t) ** 2
    edges = np.concatenate([-half[::-1], half[1:]])
    lo_e, hi_e = edges[:-1, None], edges[1:, None]
    xi = ((lo_e + hi_e) / 2 + (hi_e - lo_e) / 2 * _GL_X[None, :]).ravel()
    w = ((hi_e - lo_e) / 2 * _GL_W[None, :]).ravel()
    total = 0.0
    step = 1 << 14
    for lo in range(0, xi.size, step):
        x = xi[lo:lo + step]
        g = np.pi * (np.exp(-1j * np.pi * np.outer(x, k)) @ c)
        total += float(np.sum(np.abs(x) ** s * np.abs(g) * w[lo:lo + step]))
    return total
