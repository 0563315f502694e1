"""Number operator on sections of E_{r,q} and its eigenspaces (Landau levels).

``A = nabla_{d/dzbar} = d/dzbar`` (the connection form has no ``dzbar`` part) and
its formal adjoint for the pairing ``int <s, s'> h`` is

    A^dagger = -d/dz + alpha conj(z) = -nabla_{d/dz},

so ``[A, A^dagger] = alpha``.  Level ``n`` is spanned by ``(A^dagger)^n s_m``,
with eigenvalue ``n alpha`` under ``Delta = A^dagger A``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bundle as bdl
from .linalg import gram_rank, max_abs
from .matsushima import VectorThetaBasis, action_matrix
from .sections import SectionExpr, rel_residual

__all__ = [
    "LandauLevel", "annihilate", "create", "number_op", "commutator_constant",
    "commutator_residual", "landau_level", "level_preservation", "eigen_residual",
]

MAX_LEVEL = 6


def annihilate(bd: bdl.Bundle, s: SectionExpr) -> SectionExpr:
    return s.d_zbar()


def create(bd: bdl.Bundle, s: SectionExpr) -> SectionExpr:
    return s.mul_zbar().scale(bd.alpha) - s.d_z()


def number_op(bd: bdl.Bundle, s: SectionExpr) -> SectionExpr:
    return create(bd, annihilate(bd, s))


def commutator_constant(bd: bdl.Bundle) -> float:
    return bd.alpha


def commutator_residual(bd: bdl.Bundle, s: SectionExpr) -> float:
    """Relative size of the surviving atoms of ``[A, A^dagger] s - alpha s``."""
    lhs = annihilate(bd, create(bd, s)) - create(bd, annihilate(bd, s))
    target = s.scale(bd.alpha)
    diff = (lhs - target).simplify()
    if len(diff) == 0:
        return 0.0
    return float(np.exp(diff.coefficient_scale() - max(lhs.coefficient_scale(),
                                                         target.coefficient_scale())))


def eigen_residual(bd: bdl.Bundle, s: SectionExpr, eigenvalue: float, z) -> float:
    """Relative pointwise residual of ``Delta s = eigenvalue * s`` (fibre metric)."""
    lw = bd.log_sqrt_h(z)
    return rel_residual(number_op(bd, s).evaluate(z, lw), eigenvalue * s.evaluate(z, lw))


@dataclass(frozen=True, eq=False)
class LandauLevel:
    n: int
    bundle: bdl.Bundle
    basis: list
    gram: np.ndarray
    rank: int
    eigenvalue: float
    eigen_residual: float


def landau_level(basis: VectorThetaBasis, n: int, M: int = 64, seed: int = 0,
                 rank_tol: float = 1e-6, eig_tol: float = 1e-8) -> LandauLevel:
    """Apply ``A^dagger`` ``n`` times to each holomorphic section and certify the level.

    No ``1/sqrt(n!)`` normalisation is applied.  Raises ``ArithmeticError`` if
    the level Gram matrix has rank below ``q`` or the eigenvalue relation
    fails by more than ``eig_tol`` (relative).
    """
    if not 0 <= n <= MAX_LEVEL:
        raise ValueError(f"level must be in [0, {MAX_LEVEL}]")
    bd = basis.bundle
    secs = list(basis.sections)
    for _ in range(n):
        secs = [create(bd, s).simplify() for s in secs]
    G = bdl.gram_matrix(bd, secs, M)
    rank = gram_rank(G / max_abs(G), rank_tol)
    lam = n * commutator_constant(bd)
    z = bdl.random_points(np.random.default_rng(seed), bd.tau, 16)
    eres = max(eigen_residual(bd, s, lam, z) for s in secs)
    q = len(basis.sections)
    if rank != q:
        raise ArithmeticError(f"level {n} has rank {rank}, expected {q}")
    if eres > eig_tol:
        raise ArithmeticError(f"level {n} eigenvalue residual {eres:.3g}")
    return LandauLevel(n, bd, secs, G, rank, lam, eres)


def level_preservation(level: LandauLevel, grid: int = 32) -> float:
    """Largest relative out-of-span part of ``u^ phi`` and ``v^ phi`` over the level."""
    bd = level.bundle
    if all(len(s) == 0 for s in level.basis):
        return 0.0
    _, ru = action_matrix(bd, level.basis, bdl.hat_u, grid)
    _, rv = action_matrix(bd, level.basis, bdl.hat_v, grid)
    return max(ru, rv)


def level_matrices(level: LandauLevel, grid: int = 32):
    """Right-action matrices of ``u^``, ``v^`` restricted to the level."""
    bd = level.bundle
    Uh, _ = action_matrix(bd, level.basis, bdl.hat_u, grid)
    Vh, _ = action_matrix(bd, level.basis, bdl.hat_v, grid)
    return Uh, Vh
