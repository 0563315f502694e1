"""Vector theta functions: a basis of holomorphic sections of E_{r,q}.

For the clock/shift representation with twists ``s = e^{2 pi i sigma}``,
``t = e^{2 pi i varsigma}`` the ``q`` sections are

    s_m(z)_j = exp(alpha z^2 / 2) * sum_lam exp(i pi tau lam^2 / theta + 2 pi i varsigma lam / theta) e^{2 pi i lam z}

with ``lam`` running over ``m - sigma - j q / r + q Z``.  The Gaussian gauge
factor turns the unitary multiplier into the classical one; the frequency
cosets realise ``U^*`` (j-dependent phase) and ``V^*`` (j -> j-1 shift).

Untwisted, component ``j`` of ``s_m`` is the level-``rq`` theta with index
``k = crt_join(-j mod r, m)`` evaluated at ``(z / r, tau)``, i.e. the j-th
component is the delta-model translate of ``delta_{0,m}`` by ``U~^j``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from . import bundle as bdl
from .linalg import gram_rank, inv_sqrt_psd
from .modarith import CoprimePair, crt_join, crt_split
from .sections import SectionExpr
from .thetafun import auto_trunc, check_tau

__all__ = [
    "VectorThetaBasis", "build_vector_thetas", "component_theta_index",
    "holomorphy_residual", "action_matrix", "hat_matrices", "orthonormal_action",
    "section_space_iso", "fmn_star",
]


@dataclass(frozen=True, eq=False)
class VectorThetaBasis:
    bundle: bdl.Bundle
    sections: list
    trunc: int
    boundary: tuple = field(default=(0.0, 0.0))

    @property
    def pair(self) -> CoprimePair:
        return self.bundle.pair

    @property
    def tau(self) -> complex:
        return self.bundle.tau

    def gram(self, M: int = 64) -> np.ndarray:
        return bdl.gram_matrix(self.bundle, self.sections, M)


def component_theta_index(pair: CoprimePair, j: int, m: int) -> int:
    """Index ``k`` of the level-``rq`` theta sitting in component ``j`` of ``s_m``."""
    return crt_join(pair, (-j) % pair.r, m)


def _vector_theta(bd: bdl.Bundle, m: int, N: int, sigma: float, vsig: float) -> SectionExpr:
    r, q = bd.pair.r, bd.pair.q
    th, tau = bd.theta, bd.tau
    n = np.arange(-N, N + 1)
    comps, mus, logs = [], [], []
    for j in range(r):
        # centre the window on the integer label k so that truncation is symmetric
        k = component_theta_index(bd.pair, j, m)
        lam = (k - r * sigma) / r + q * n
        comps.append(np.full(lam.size, j))
        mus.append(2j * np.pi * lam)
        logs.append(1j * np.pi * tau * lam ** 2 / th + 2j * np.pi * vsig * lam / th)
    comp = np.concatenate(comps)
    size = comp.size
    return SectionExpr(r, comp, np.zeros(size, int), np.zeros(size, int),
                       np.full(size, bd.alpha / 2), np.concatenate(mus),
                       np.zeros(size), np.concatenate(logs))


def build_vector_thetas(pair: CoprimePair, tau: complex, tol: float = 1e-16,
                        s: complex = 1.0, t: complex = 1.0, check_tol: float = 1e-8,
                        seed: int = 0) -> VectorThetaBasis:
    """The ``q`` vector thetas of E_{r,q} for the clock/shift rep with twists ``s, t``.

    The series are truncated so that the omitted tail is below ``tol`` for
    ``|Im z| <= (r + 2) Im(tau)``, which covers the fundamental domain, its
    lattice neighbours and the translates used by ``hat_u``/``hat_v`` and
    their ``q``-th powers.  Raises ``RuntimeError`` if the boundary conditions
    fail at 20 random points by more than ``check_tol``.
    """
    tau = check_tau(tau)
    bd = bdl.Bundle.canonical(pair, tau, s, t)
    sigma = (cmath.phase(complex(s)) / (2 * np.pi)) % 1.0
    vsig = (cmath.phase(complex(t)) / (2 * np.pi)) % 1.0
    ymax = (pair.r + 2) * tau.imag
    N = max(auto_trunc(pair.n, k, 1j * ymax / pair.r, tau, tol) for k in range(pair.n)) + 1
    sections = [_vector_theta(bd, m, N, sigma, vsig) for m in range(pair.q)]
    rng = np.random.default_rng(seed)
    z = bdl.random_points(rng, tau, 20)
    worst = (0.0, 0.0)
    for sec in sections:
        res = bdl.boundary_residual(bd, sec, z)
        worst = (max(worst[0], res[0]), max(worst[1], res[1]))
    if max(worst) > check_tol:
        raise RuntimeError(f"vector thetas violate the boundary conditions: {worst}")
    return VectorThetaBasis(bd, sections, N, worst)


def holomorphy_residual(basis_or_sections, z) -> float:
    """Largest ``|d s / d zbar|`` over the points and sections."""
    secs = basis_or_sections.sections if isinstance(basis_or_sections, VectorThetaBasis) \
        else list(basis_or_sections)
    worst = 0.0
    for s in secs:
        d = s.d_zbar()
        if len(d):
            worst = max(worst, float(np.max(np.abs(d.evaluate(z)))))
    return worst


def action_matrix(bd: bdl.Bundle, sections, op, grid: int = 32) -> tuple[np.ndarray, float]:
    """Matrix of ``op`` on ``span(sections)`` in the right-action convention.

    ``R[m, n]`` is the coefficient of ``sections[n]`` in ``op(sections[m])``, so
    ``R(a after b) = R(b) R(a)``: products of these matrices read operators
    as acting on the right.  The coefficients come from a least-squares fit on
    an equispaced grid, with values weighted by ``sqrt(h)``.  The second
    return value is the relative norm of the part of ``op(s)`` outside the span.
    """
    z, _ = bdl.quadrature_points(bd.tau, grid)
    S = bdl._weighted_samples(bd, sections, z)
    T = bdl._weighted_samples(bd, [op(bd, s) for s in sections], z)
    C, *_ = np.linalg.lstsq(S, T, rcond=None)
    tnorm = np.linalg.norm(T)
    resid = float(np.linalg.norm(S @ C - T) / tnorm) if tnorm > 0 else 0.0
    return C.T, resid


def hat_matrices(basis: VectorThetaBasis, grid: int = 32, tol: float = 1e-6):
    """``(U^, V^)`` as ``q x q`` right-action matrices on the vector thetas.

    Raises ``ArithmeticError`` if the Gram matrix is rank deficient or if the
    image of a basis section is not in the span (within ``tol``).
    """
    bd = basis.bundle
    if gram_rank(basis.gram(grid), 1e-10) != len(basis.sections):
        raise ArithmeticError("vector theta basis is rank deficient")
    Uh, ru = action_matrix(bd, basis.sections, bdl.hat_u, grid)
    Vh, rv = action_matrix(bd, basis.sections, bdl.hat_v, grid)
    if max(ru, rv) > tol:
        raise ArithmeticError(f"u^/v^ do not preserve the section space: {ru:.3g}, {rv:.3g}")
    return Uh, Vh


def orthonormal_action(R: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """Rewrite a right-action matrix in a Gram-orthonormalised basis."""
    W = inv_sqrt_psd(gram)
    # column form C = R^T, orthonormal frame e = s W: C -> W^{-1} C W
    C = np.linalg.solve(W, R.T @ W)
    return C.T


def section_space_iso(pair: CoprimePair) -> dict[tuple[int, int], int]:
    """``(m, l) -> k`` with ``k = q l + r m mod rq``: ``s_m (x) s_l <-> s_k``."""
    iso = {(m, l): crt_join(pair, l, m) for m in range(pair.q) for l in range(pair.r)}
    assert len(set(iso.values())) == pair.n
    return iso


def section_space_iso_inverse(pair: CoprimePair, k: int) -> tuple[int, int]:
    l, m = crt_split(pair, k)
    return m, l


def fmn_star(pair: CoprimePair) -> dict:
    """``E_{r,q} * E_{q,r} = E_{1,rq}`` as (rank, degree) data and section counts."""
    r, q = pair.r, pair.q
    h0 = [q, r, r * q]
    if h0[0] * h0[1] != h0[2]:
        raise AssertionError("section counts do not multiply")
    return {
        "bundles": [[r, q], [q, r], [1, r * q]],
        "h0": h0,
        "product_ok": True,
    }
