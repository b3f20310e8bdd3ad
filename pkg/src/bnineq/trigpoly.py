"""Trigonometric polynomials, grid evaluation, Weyl derivatives and L_p quasinorms.

A polynomial of degree ``n`` is stored as its two-sided coefficient vector
``c[-n..n]`` (array index ``k + n``).  Norms are the un-normalized

    ||T||_p^* = ( int_{-pi}^{pi} |T(x)|^p dx )^{1/p},

computed with the uniform trapezoid rule, which is exact for trigonometric
integrands of degree below the node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from . import _backend
from .errors import DomainError, MalformedInputError, UndersamplingError

SYMMETRY_TOL = 1e-12
INF = math.inf


@dataclass(frozen=True, eq=False)
class TrigPoly:
    """Degree-``n`` trigonometric polynomial ``sum_{|k|<=n} c_k e^{ikx}``.

    Use :func:`make_poly` to construct one; it validates the coefficient
    layout and fills in the symmetry flags.
    """

    coeffs: np.ndarray
    is_real: bool = False
    is_even: bool = False
    is_odd: bool = False

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        n = self.degree
        if abs(k) > n:
            return 0j
        return complex(self.coeffs[k + n])

    @property
    def frequencies(self) -> np.ndarray:
        n = self.degree
        return np.arange(-n, n + 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        vals = _backend.eval_trig(self.coeffs, np.ascontiguousarray(x.ravel()))
        return vals.reshape(x.shape)

    def __repr__(self):
        flags = [f for f, on in (("real", self.is_real), ("even", self.is_even),
                                 ("odd", self.is_odd)) if on]
        return f"TrigPoly(degree={self.degree}, flags={flags})"

    # -- algebra -----------------------------------------------------------
    def padded(self, n: int) -> "TrigPoly":
        """Same polynomial, coefficient vector widened to degree ``n``."""
        m = self.degree
        if n < m:
            raise DomainError(f"cannot pad degree {m} down to {n}")
        c = np.zeros(2 * n + 1, dtype=np.complex128)
        c[n - m:n + m + 1] = self.coeffs
        return make_poly(c)

    def trimmed(self, tol: float = 0.0) -> "TrigPoly":
        """Drop outer coefficients whose modulus is ``<= tol``."""
        c = self.coeffs
        n = self.degree
        while n > 0 and abs(c[0]) <= tol and abs(c[-1]) <= tol:
            c = c[1:-1]
            n -= 1
        return make_poly(c)

    def __add__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        n = max(self.degree, other.degree)
        return make_poly(self.padded(n).coeffs + other.padded(n).coeffs)

    def __sub__(self, other):
        if not isinstance(other, TrigPoly):
            return NotImplemented
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, other):
        if isinstance(other, TrigPoly):
            return make_poly(np.convolve(self.coeffs, other.coeffs))
        return make_poly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def modulate(self, m: int) -> "TrigPoly":
        """Multiply by ``e^{imx}``; the result has degree ``max|k+m|``."""
        n = self.degree
        d = n + abs(m)
        c = np.zeros(2 * d + 1, dtype=np.complex128)
        c[d - n + m:d + n + m + 1] = self.coeffs
        return make_poly(c).trimmed()

    def translate(self, a: float) -> "TrigPoly":
        """Return ``x -> T(x - a)``."""
        return make_poly(self.coeffs * np.exp(-1j * self.frequencies * a))


def _flags(c: np.ndarray) -> tuple[bool, bool, bool]:
    scale = max(1.0, float(np.max(np.abs(c)))) if c.size else 1.0
    tol = SYMMETRY_TOL * scale
    rev = c[::-1]
    is_real = bool(np.all(np.abs(rev - np.conj(c)) <= tol))
    is_even = bool(np.all(np.abs(rev - c) <= tol))
    is_odd = bool(np.all(np.abs(rev + c) <= tol))
    return is_real, is_even, is_odd


def make_poly(coeffs) -> TrigPoly:
    """Build a :class:`TrigPoly` from coefficients ordered ``k = -n..n``.

    Raises
    ------
    MalformedInputError
        If the sequence does not have odd length.
    """
    c = np.array(coeffs, dtype=np.complex128).ravel()
    if c.size % 2 == 0:
        raise MalformedInputError(
            f"coefficient sequence must have odd length 2n+1, got {c.size}")
    c.setflags(write=False)
    return TrigPoly(c, *_flags(c))


def from_cosine(a) -> TrigPoly:
    """``a_0 + sum_{k>=1} a_k cos(kx)`` as a TrigPoly."""
    a = np.asarray(a, dtype=np.float64)
    n = a.size - 1
    c = np.zeros(2 * n + 1, dtype=np.complex128)
    c[n] = a[0]
    c[n + 1:] = a[1:] / 2
    c[:n] = a[1:][::-1] / 2
    return make_poly(c)


def from_sine(b) -> TrigPoly:
    """``sum_{k>=1} b_k sin(kx)`` with ``b`` indexed from ``k = 1``."""
    b = np.asarray(b, dtype=np.float64)
    n = b.size
    c = np.zeros(2 * n + 1, dtype=np.complex128)
    c[n + 1:] = b / 2j
    c[:n] = -(b / 2j)[::-1]
    return make_poly(c)


def monomial(k: int) -> TrigPoly:
    """``e^{ikx}``."""
    n = abs(k)
    c = np.zeros(2 * n + 1, dtype=np.complex128)
    c[k + n] = 1.0
    return make_poly(c)


# -- grids -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GridSamples:
    """Samples ``T(x_j)`` at ``x_j = -pi + 2 pi j / M``, ``j = 0..M-1``."""

    count: int
    values: np.ndarray = field(repr=False)

    @property
    def nodes(self) -> np.ndarray:
        return grid_nodes(self.count)


def grid_nodes(M: int) -> np.ndarray:
    return -np.pi + 2 * np.pi * np.arange(M) / M


def evaluate_grid(T: TrigPoly, M: int) -> GridSamples:
    """Sample ``T`` on ``M`` equispaced nodes by zero-padded inverse FFT.

    Raises
    ------
    UndersamplingError
        If ``M < 2n + 2``.
    """
    n = T.degree
    if M < 2 * n + 2:
        raise UndersamplingError(f"grid of {M} nodes cannot carry degree {n} (need >= {2 * n + 2})")
    buf = np.zeros(M, dtype=np.complex128)
    k = T.frequencies
    # x_j = -pi + 2 pi j/M, so e^{ik x_j} = (-1)^k e^{2 pi i k j/M}
    buf[k % M] = T.coeffs * np.where(k % 2 == 0, 1.0, -1.0)
    return GridSamples(M, np.fft.ifft(buf) * M)


# -- derivatives and symmetry ------------------------------------------------

def weyl_multiplier(k: np.ndarray, s: float) -> np.ndarray:
    """``(ik)^s = |k|^s exp(i pi s sgn(k) / 2)``, with the value 0 at ``k = 0``."""
    k = np.asarray(k)
    mag = np.abs(k).astype(np.float64) ** s
    if float(s).is_integer():
        # exact unit factors for classical derivatives
        phase_pos = 1j ** (int(s) % 4)
    else:
        phase_pos = np.exp(0.5j * np.pi * s)
    phase = np.where(k > 0, phase_pos, np.conj(phase_pos))
    out = mag * phase
    out[k == 0] = 0.0
    return out


def weyl_derivative(T: TrigPoly, s: float) -> TrigPoly:
    """Weyl derivative of order ``s > 0``: ``c_k -> (ik)^s c_k``."""
    if not s > 0:
        raise DomainError(f"derivative order must be positive, got {s}")
    return make_poly(T.coeffs * weyl_multiplier(T.frequencies, s))


def parity_project(T: TrigPoly, kind: str) -> TrigPoly:
    """Project onto real-valued, even or odd polynomials.

    ``real``: ``(T + conj(T))/2``; ``even``/``odd``: ``(T(x) +- T(-x))/2``.
    """
    c = T.coeffs
    rev = c[::-1]
    if kind == "real":
        return make_poly((c + np.conj(rev)) / 2)
    if kind == "even":
        return make_poly((c + rev) / 2)
    if kind == "odd":
        return make_poly((c - rev) / 2)
    raise DomainError(f"unknown parity kind {kind!r}")


# -- norms -------------------------------------------------------------------

def default_grid(n: int, p: float) -> int:
    """Default oversampled node count for degree ``n`` and exponent ``p``."""
    if math.isinf(p):
        return max(8192, 64 * (n + 1))
    return max(4096, math.ceil(32 * (n + 1) * max(1.0, p)))


@dataclass(frozen=True)
class SupNorm:
    """Sup-norm estimate with its certificate.

    ``value`` never exceeds the true maximum; the true maximum is at most
    ``value + bound``.
    """

    value: float
    grid_max: float
    argmax: float
    bound: float
    M: int


def _golden_max(f, a: float, b: float, iters: int = 80) -> tuple[float, float]:
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = f(d)
        if b - a < 1e-15:
            break
    return (c, fc) if fc >= fd else (d, fd)


def sup_norm(T: TrigPoly, M: int | None = None) -> SupNorm:
    """Grid maximum of ``|T|`` refined by golden-section search.

    The certificate comes from Bernstein's inequality: between nodes
    ``|T|`` can exceed the grid maximum by at most ``(pi/M) n ||T||_inf``,
    so ``||T||_inf - grid_max <= pi n grid_max / (M - pi n)``.
    """
    n = T.degree
    if M is None:
        M = default_grid(n, INF)
    samples = evaluate_grid(T, M).values
    mags = np.abs(samples)
    j = int(np.argmax(mags))
    gmax = float(mags[j])
    x0 = -np.pi + 2 * np.pi * j / M
    h = 2 * np.pi / M
    xb = np.empty(1)

    def mod(x):
        xb[0] = x
        return abs(_backend.eval_trig(T.coeffs, xb)[0])

    if n > 0 and gmax > 0:
        xr, vr = _golden_max(mod, x0 - h, x0 + h)
    else:
        xr, vr = x0, gmax
    if vr < gmax:
        xr, vr = x0, gmax
    denom = M - np.pi * n
    bound = np.pi * n * gmax / denom if denom > 0 else math.inf
    # after refinement the residual is at most the original certificate
    return SupNorm(float(vr), gmax, float(((xr + np.pi) % (2 * np.pi)) - np.pi), float(bound), M)


def quasinorm(T: TrigPoly, p: float, M: int | None = None) -> float:
    """``||T||_p^*`` for ``p`` in ``(0, inf]``.

    Finite ``p`` uses the trapezoid rule on ``M`` nodes (default
    :func:`default_grid`); ``p = inf`` delegates to :func:`sup_norm`.
    """
    if not p > 0:
        raise DomainError(f"p must be positive, got {p}")
    if math.isinf(p):
        return sup_norm(T, M).value
    if M is None:
        M = default_grid(T.degree, p)
    mags = np.abs(evaluate_grid(T, M).values)
    scale = float(mags.max())
    if scale == 0.0:
        return 0.0
    total = np.sum((mags / scale) ** p) * (2 * np.pi / M)
    return float(scale * total ** (1.0 / p))


def random_poly(n: int, rng: np.random.Generator, real: bool = False) -> TrigPoly:
    """Polynomial with standard normal coefficients (complex unless ``real``)."""
    c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    T = make_poly(c)
    return parity_project(T, "real") if real else T


def is_integer(x) -> bool:
    return isinstance(x, Integral) or (isinstance(x, float) and x.is_integer())
