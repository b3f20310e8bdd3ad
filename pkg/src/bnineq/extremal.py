"""Extremal polynomials for the ``(p, q) = (1, inf)`` inequality.

``P_n`` minimizes ``||T||_1^*`` over degree-``n`` polynomials with
``T^{(s)}(0) = 1``; ``1/||P_n||_1^*`` is the sharp constant. A real
extremizer exists that is even for even ``s`` and odd for odd ``s``, so
the search runs over cosine or sine series.

The linear program only fixes the sign pattern of ``P_n``. The returned
polynomial comes from a Gauss-Newton polish on the sign-change locations:
it enforces ``int sign(P) Q = lam Q^{(s)}(0)`` for every basis ``Q``
exactly (piecewise antiderivatives), then recovers ``P`` from its zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import sparse
from scipy.optimize import brentq, linprog

from .errors import AccuracyError, DomainError, InfeasibleError, SolverError, StructuralViolationError
from .trigpoly import TrigPoly, from_cosine, from_sine, monomial, quasinorm, sup_norm, weyl_multiplier

__all__ = [
    "ExtremalSolution", "ZeroSet", "default_lp_grid", "solve_extremal", "bn_constant_1_inf",
    "sign_identity_residual", "zeros_of_extremal", "alternation_residual",
    "dist_to_high_frequencies", "basis_polys",
]

SIMPLE_ZERO_TOL = 1e-8
BISECT_TOL = 1e-12
_POLISH_ITERS = 60


@dataclass(frozen=True, eq=False)
class ExtremalSolution:
    """Solution of the constrained L1 problem.

    ``coeffs`` are cosine coefficients ``a_0..a_n`` (even ``s``) or sine
    coefficients ``b_1..b_n`` (odd ``s``); ``zeros`` are the sign changes
    of ``P`` in ``(0, pi)`` found by the polish (the full circle set comes
    from :func:`zeros_of_extremal`).
    """

    n: int
    s: int
    basis: str
    coeffs: np.ndarray
    poly: TrigPoly
    l1_norm: float
    constant: float
    zeros: np.ndarray
    M: int
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """Sign changes of ``P`` on ``(-pi, pi]`` with simplicity flags."""

    locations: np.ndarray
    simple: np.ndarray
    derivative: np.ndarray

    @property
    def count(self) -> int:
        return int(self.locations.size)


def default_lp_grid(n: int) -> int:
    return 64 * (n + 1)


def _basis_kind(s: int) -> str:
    return "cos" if s % 2 == 0 else "sin"


def _freqs(n: int, s: int) -> np.ndarray:
    return np.arange(0, n + 1) if s % 2 == 0 else np.arange(1, n + 1)


def _constraint_row(n: int, s: int) -> np.ndarray:
    """``d^s/dx^s`` of each basis function at 0."""
    k = _freqs(n, s).astype(np.float64)
    if s == 0:
        return np.ones_like(k)
    sign = (-1) ** (s // 2)
    return sign * k ** s


def _basis_matrix(kind: str, k: np.ndarray, x: np.ndarray) -> np.ndarray:
    kx = np.outer(x, k)
    return np.cos(kx) if kind == "cos" else np.sin(kx)


def _to_poly(kind: str, coeffs: np.ndarray) -> TrigPoly:
    return from_cosine(coeffs) if kind == "cos" else from_sine(coeffs)


def _half_grid(M: int, rotate: float):
    """Nodes on ``[0, pi]`` and weights reproducing the full-circle rule for symmetric ``|T|``."""
    h = 2 * np.pi / M
    if rotate == 0.0:
        x = h * np.arange(M // 2 + 1)
        w = np.full(x.size, 2 * h)
        w[0] = w[-1] = h
    else:
        x = h * (np.arange(M // 2) + rotate)
        w = np.full(x.size, 2 * h)
    return x, w


def _lp(n: int, s: int, M: int, rotate: float = 0.0):
    """L1 linear program with ``T(x_j) = u_j - v_j``.

    Unknowns are scaled by ``n^s`` so the constraint row is ``(k/n)^s``.
    Returns the unscaled coefficients and the discrete objective.
    """
    kind = _basis_kind(s)
    k = _freqs(n, s)
    x, w = _half_grid(M, rotate)
    B = _basis_matrix(kind, k, x)
    scale = float(n) ** s
    crow = _constraint_row(n, s) / scale
    J, d = B.shape
    eye = sparse.identity(J, format="csr")
    A_eq = sparse.vstack([
        sparse.hstack([sparse.csr_matrix(B), -eye, eye]),
        sparse.hstack([sparse.csr_matrix(crow[None, :]), sparse.csr_matrix((1, 2 * J))]),
    ], format="csr")
    b_eq = np.zeros(J + 1)
    b_eq[-1] = 1.0
    cost = np.concatenate([np.zeros(d), w, w])
    bounds = [(None, None)] * d + [(0, None)] * (2 * J)
    res = linprog(cost, A_eq=A_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status != 0:
        raise SolverError(f"L1 program failed: {res.message}", res.status)
    return res.x[:d] / scale, float(res.fun) / scale


def _sign_changes(kind: str, k: np.ndarray, coeffs: np.ndarray, M: int) -> list[float]:
    """Sign changes of the parity-reduced polynomial in ``(0, pi)``."""
    x = np.linspace(0.0, np.pi, M // 2 + 1)
    vals = _basis_matrix(kind, k, x) @ coeffs
    floor = 1e-13 * float(np.max(np.abs(vals)))
    vals = np.where(np.abs(vals) <= floor, 0.0, vals)

    def f(t):
        return float(_basis_matrix(kind, k, np.array([t]))[0] @ coeffs)

    out = []
    live = np.nonzero(vals)[0]
    # sign changes between consecutive nonzero samples, ignoring the fixed zeros at 0, pi
    for a, b in zip(live[:-1], live[1:]):
        if vals[a] * vals[b] < 0:
            out.append(brentq(f, x[a], x[b], xtol=1e-15) if b == a + 1 else 0.5 * (x[a] + x[b]))
    return out


def _piecewise_integrals(kind: str, k: np.ndarray, beta: np.ndarray, sigma0: float) -> np.ndarray:
    """``int_{-pi}^{pi} sigma(x) phi_k(x) dx`` for the sign pattern with changes at ``beta``."""
    edges = np.concatenate([[0.0], beta, [np.pi]])
    signs = sigma0 * (-1.0) ** np.arange(edges.size - 1)
    kk = k.astype(np.float64)
    if kind == "cos":
        safe = np.where(kk == 0, 1.0, kk)
        anti = np.where(kk[None, :] == 0, edges[:, None], np.sin(np.outer(edges, kk)) / safe)
    else:
        anti = -np.cos(np.outer(edges, kk)) / kk
    return 2.0 * signs @ (anti[1:] - anti[:-1])


def _polish(n: int, s: int, coeffs_lp: np.ndarray, M: int):
    """Gauss-Newton on ``(beta, lam)``; returns coefficients, zeros and diagnostics or ``None``."""
    kind = _basis_kind(s)
    k = _freqs(n, s)
    crow = _constraint_row(n, s)
    scale = float(n) ** s
    beta = np.array(_sign_changes(kind, k, coeffs_lp, 8 * M))
    m = beta.size
    x_probe = beta[0] / 2 if m else np.pi / 2
    sigma0 = float(np.sign(_basis_matrix(kind, k, np.array([x_probe]))[0] @ coeffs_lp)) or 1.0
    # lam scaled by n^s to keep the unknowns comparable
    lam = float(_piecewise_integrals(kind, k, beta, sigma0) @ coeffs_lp) * scale
    ctil = crow / scale
    resid = math.inf
    it = 0
    for it in range(1, _POLISH_ITERS + 1):
        F = _piecewise_integrals(kind, k, beta, sigma0) - lam * ctil
        resid = float(np.max(np.abs(F)))
        if resid < 1e-15:
            break
        jac = np.empty((k.size, m + 1))
        if m:
            alt = 4.0 * sigma0 * (-1.0) ** np.arange(m)  # (-1)^{i-1}, i from 1
            jac[:, :m] = (_basis_matrix(kind, k, beta) * alt[:, None]).T
        jac[:, m] = -ctil
        step = np.linalg.lstsq(jac, -F, rcond=None)[0]
        t = 1.0
        while True:
            nb = beta + t * step[:m]
            gaps = np.diff(np.concatenate([[0.0], nb, [np.pi]]))
            if np.all(gaps > 0) or t < 1e-6:
                break
            t /= 2
        if t < 1e-6:
            return None
        beta, lam = nb, lam + t * step[m]
        if t == 1.0 and float(np.max(np.abs(step))) < 1e-15:
            break
    # recover P from its zeros and the constraint (min-norm correction of the LP point)
    A = np.vstack([_basis_matrix(kind, k, beta), crow[None, :] / scale]) if m else (crow / scale)[None, :]
    rhs = np.zeros(A.shape[0])
    rhs[-1] = 1.0 / scale
    a0 = coeffs_lp
    coeffs = a0 - np.linalg.lstsq(A, A @ a0 - rhs, rcond=None)[0]
    # the recovered P must change sign exactly at beta, with the assumed pattern
    check = np.array(_sign_changes(kind, k, coeffs, 16 * M))
    if check.size != m or (m and np.max(np.abs(check - beta)) > 1e-8):
        return None
    x_probe = beta[0] / 2 if m else np.pi / 2
    if float(np.sign(_basis_matrix(kind, k, np.array([x_probe]))[0] @ coeffs)) != sigma0:
        return None
    l1 = float(_piecewise_integrals(kind, k, beta, sigma0) @ coeffs)
    diag = {"polish_iterations": it, "polish_residual": resid, "lambda": lam / scale,
            "sigma0": sigma0}
    return coeffs, beta, l1, diag


def solve_extremal(n: int, s: int, M: int | None = None, rotate: float = 0.0) -> ExtremalSolution:
    """Minimize ``||T||_1^*`` subject to ``T^{(s)}(0) = 1`` over degree ``n``.

    Parameters
    ----------
    M : int, optional
        LP grid size, default ``64 (n + 1)``. A second LP on ``2M`` nodes
        checks the first; if both optima agree in value but not in
        coefficients, both are kept in ``diagnostics["alternatives"]``.
    rotate : float
        Shift of the LP nodes in units of a cell (0 or 0.5).

    Raises
    ------
    InfeasibleError
        For ``n = 0`` and ``s >= 1``.
    SolverError
        If the linear program does not solve.
    """
    if n < 0 or s < 0 or int(s) != s:
        raise DomainError(f"need integers n, s >= 0, got n={n}, s={s}")
    s = int(s)
    if n == 0:
        if s > 0:
            raise InfeasibleError("constants have vanishing derivatives; no degree-0 polynomial satisfies the constraint")
        P = from_cosine([1.0])
        l1 = 2 * np.pi
        return ExtremalSolution(0, 0, "cos", np.array([1.0]), P, l1, 1 / l1, np.empty(0), 0,
                                {"method": "exact"})
    if M is None:
        M = default_lp_grid(n)
    if M % 2:
        M += 1
    kind = _basis_kind(s)
    c1, obj1 = _lp(n, s, M, rotate)
    c2, obj2 = _lp(n, s, 2 * M, rotate)
    diag = {"lp_objective": obj1, "lp_objective_refined": obj2}
    spread = float(np.max(np.abs(c1 - c2)) / np.max(np.abs(c2)))
    if abs(obj1 - obj2) <= 1e-6 * obj2 and spread > 1e-3:
        diag["alternatives"] = [c1, c2]
    polished = _polish(n, s, c2, 2 * M)
    if polished is None:
        coeffs = c2
        P = _to_poly(kind, coeffs)
        l1 = quasinorm(P, 1.0, 16 * M)
        beta = np.array(_sign_changes(kind, _freqs(n, s), coeffs, 16 * M))
        diag.update(polished=False, l1_method="trapezoid")
    else:
        coeffs, beta, l1, extra = polished
        P = _to_poly(kind, coeffs)
        diag.update(extra, polished=True, l1_method="piecewise",
                    l1_trapezoid=quasinorm(P, 1.0, 8 * M))
    coeffs = np.asarray(coeffs, dtype=np.float64)
    coeffs.setflags(write=False)
    return ExtremalSolution(n, s, kind, coeffs, P, float(l1), 1.0 / float(l1), beta, M, diag)


@lru_cache(maxsize=512)
def _cached_solution(n: int, s: int) -> ExtremalSolution:
    return solve_extremal(n, s)


def bn_constant_1_inf(n: int, s: int) -> float:
    """Sharp constant ``1/||P_n||_1^*`` at ``p = 1``, ``q = inf``."""
    return _cached_solution(int(n), int(s)).constant


def _derivative_at_zero(Q: TrigPoly, s: int) -> complex:
    c = Q.coeffs
    if s == 0:
        return complex(np.sum(c))
    return complex(np.sum(c * weyl_multiplier(Q.frequencies, s)))


def zeros_of_extremal(sol: ExtremalSolution) -> ZeroSet:
    """Sign changes of ``P_n`` on ``(-pi, pi]``.

    Brackets on a ``64(n+1)``-node grid, refines to ``1e-12``; a zero is
    simple when ``|P'| >= 1e-8 ||P'||_inf`` there.

    Raises
    ------
    StructuralViolationError
        If ``s = 0`` and the count differs from ``2n``.
    AccuracyError
        If a bracket does not refine.
    """
    P = sol.poly
    n = sol.n
    if n == 0:
        return ZeroSet(np.empty(0), np.empty(0, bool), np.empty(0))
    G = 64 * (n + 1)
    x = -np.pi + 2 * np.pi * np.arange(G) / G
    vals = P(x).real
    floor = 1e-13 * float(np.max(np.abs(vals)))
    vals = np.where(np.abs(vals) <= floor, 0.0, vals)

    def f(t):
        return float(P(np.array([t]))[0].real)

    locs = []
    for j in range(G):
        a, b = vals[j], vals[(j + 1) % G]
        xa = x[j]
        xb = x[j + 1] if j + 1 < G else np.pi
        if a == 0.0:
            prev = vals[j - 1]
            if prev * b < 0:
                locs.append(xa)
            continue
        if a * b < 0:
            try:
                r = brentq(f, xa, xb, xtol=BISECT_TOL, rtol=4 * np.finfo(float).eps)
            except ValueError as exc:
                raise AccuracyError("zero bracket lost on refinement", {"interval": (xa, xb)}) from exc
            locs.append(r)
    locs = np.array(sorted(((t + np.pi) % (2 * np.pi)) - np.pi if t != np.pi else np.pi for t in locs))
    locs = np.where(locs == -np.pi, np.pi, locs)
    locs.sort()
    dP = from_cosine([0.0]) if P.degree == 0 else _derivative(P)
    dvals = np.abs(dP(locs).real) if locs.size else np.empty(0)
    dsup = sup_norm(dP).value if P.degree else 0.0
    simple = dvals >= SIMPLE_ZERO_TOL * dsup
    if sol.s == 0 and locs.size != 2 * n:
        raise StructuralViolationError(f"expected {2 * n} sign changes for s = 0, found {locs.size}")
    return ZeroSet(locs, simple, dvals)


def _derivative(P: TrigPoly) -> TrigPoly:
    from .trigpoly import weyl_derivative
    return weyl_derivative(P, 1)


def _sign_integral(P: TrigPoly, zeros: np.ndarray, Q: TrigPoly) -> complex:
    """``int_{-pi}^{pi} sign(P) Q`` integrated exactly between consecutive zeros."""
    edges = np.concatenate([[-np.pi], zeros[(zeros > -np.pi) & (zeros < np.pi)], [np.pi]])
    mids = 0.5 * (edges[:-1] + edges[1:])
    signs = np.sign(P(mids).real)
    k = Q.frequencies.astype(np.float64)
    kk = np.where(k == 0, 1.0, k)
    anti = np.where(k[None, :] == 0, edges[:, None] + 0j, np.exp(1j * np.outer(edges, k)) / (1j * kk))
    return complex(signs @ ((anti[1:] - anti[:-1]) @ Q.coeffs))


def sign_identity_residual(sol: ExtremalSolution, Q: TrigPoly) -> float:
    """``|int sign(P_n) Q - ||P_n||_1^* Q^{(s)}(0)|`` by exact piecewise integration."""
    if Q.degree > sol.n:
        raise DomainError(f"Q has degree {Q.degree} > n = {sol.n}")
    zs = zeros_of_extremal(sol) if sol.n else ZeroSet(np.empty(0), np.empty(0, bool), np.empty(0))
    lhs = _sign_integral(sol.poly, zs.locations, Q)
    return abs(lhs - sol.l1_norm * _derivative_at_zero(Q, sol.s))


def alternation_residual(sol: ExtremalSolution, Q: TrigPoly) -> float:
    """``|2 sign(P(pi)) sum (-1)^{k+1} Q(alpha_k) - ||P||_1^* Q'(0)|`` for ``s = 0``."""
    if sol.s != 0:
        raise DomainError("alternation identity is stated for s = 0")
    zs = zeros_of_extremal(sol)
    alpha = zs.locations
    sgn = float(np.sign(sol.poly(np.array([np.pi]))[0].real))
    alt = (-1.0) ** np.arange(alpha.size)  # (-1)^{k+1} for k from 1
    lhs = 2 * sgn * complex(np.sum(alt * Q(alpha))) if alpha.size else 0j
    return abs(lhs - sol.l1_norm * _derivative_at_zero(Q, 1))


def basis_polys(n: int) -> list[TrigPoly]:
    """``1, cos kx, sin kx`` for ``1 <= k <= n`` as TrigPolys."""
    out = [monomial(0)]
    for k in range(1, n + 1):
        a = np.zeros(k + 1)
        a[k] = 1.0
        out.append(from_cosine(a))
        out.append(from_sine(a[1:]))
    return out


def _kernel_derivative_coeffs(n: int, s: int) -> np.ndarray:
    """Cosine (even ``s``) or sine (odd ``s``) coefficients of ``D_n^{(s)}``."""
    k = _freqs(n, s).astype(np.float64)
    if s == 0:
        return np.where(k == 0, 1.0, 2.0)
    if s % 2 == 0:
        return np.where(k == 0, 0.0, 2.0 * (-1) ** (s // 2) * k ** s)
    # d^s/dx^s cos kx = (-1)^{(s+1)/2} k^s sin kx for odd s
    return 2.0 * (-1) ** ((s + 1) // 2) * k ** s


def dist_to_high_frequencies(n: int, s: int, N_trunc: int, M: int | None = None) -> float:
    """Uniform distance from ``D_n^{(s)}/(2 pi)`` to frequencies ``n < |k| <= N_trunc``.

    Chebyshev-type LP on a dense half-circle grid (parity reduced). The
    returned value is the true sup of the residual for the LP minimizer,
    so it is an upper bound on the distance within that subspace.
    """
    if N_trunc <= n:
        raise DomainError(f"N_trunc must exceed n, got N_trunc={N_trunc}, n={n}")
    if n < 0 or s < 0:
        raise DomainError("n and s must be nonnegative")
    kind = _basis_kind(s)
    if M is None:
        M = 64 * (N_trunc + 1)
    x = np.linspace(0.0, np.pi, M // 2 + 1)
    hc = _kernel_derivative_coeffs(n, s) / (2 * np.pi)
    kh = _freqs(n, s)
    hvals = _basis_matrix(kind, kh, x) @ hc
    kg = np.arange(n + 1, N_trunc + 1)
    G = _basis_matrix(kind, kg, x)
    if kind == "sin":
        interior = (x > 0) & (x < np.pi)
        G, hvals = G[interior], hvals[interior]
    scale = float(np.max(np.abs(hvals))) or 1.0
    d = kg.size
    # variables (g, t): minimize t with -t <= h - G g <= t
    A = np.vstack([np.hstack([-G, -np.ones((G.shape[0], 1))]),
                   np.hstack([G, -np.ones((G.shape[0], 1))])])
    b = np.concatenate([-hvals, hvals]) / scale
    cost = np.zeros(d + 1)
    cost[-1] = 1.0
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * d + [(0, None)], method="highs")
    if res.status != 0:
        raise SolverError(f"Chebyshev program failed: {res.message}", res.status)
    g = res.x[:d] * scale
    full = np.zeros(N_trunc + 1) if kind == "cos" else np.zeros(N_trunc)
    if kind == "cos":
        full[kh] = hc
        full[kg] -= g
    else:
        full[kh - 1] = hc
        full[kg - 1] -= g
    return sup_norm(_to_poly(kind, full)).value
