"""The projectively flat bundle E_{r,q} over C / <1, tau>.

Sections are functions ``s: C -> C^r`` with ``s(z + gamma) = J_gamma(z) s(z)``
for the theta multiplier

    J_gamma(z) = exp(alpha (z conj(gamma) + |gamma|^2 / 2)) exp(i pi theta n m) U^-n V^-m,

``gamma = n + tau m``, ``alpha = pi theta / Im(tau)``.  The Hermitian metric is
``h(z) = exp(-alpha |z|^2)`` and the Chern connection is ``d - alpha conj(z) dz``.

Residuals that compare section values are measured in the fibre metric, i.e.
values are multiplied by ``sqrt(h)`` before taking norms.  Raw values grow like
``exp(alpha |z|^2 / 2)`` and absolute differences would only measure the
floating point range.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import max_abs
from .modarith import CoprimePair
from .nctorus import TorusRep, clock_shift_rep, verify_rep
from .sections import SectionExpr, rel_residual
from .thetafun import check_tau

__all__ = [
    "Bundle", "theta_multiplier", "cocycle_residual", "boundary_residual",
    "hermitian_pair", "quadrature_points", "l2_inner", "gram_matrix",
    "nabla_x", "nabla_y", "nabla_z", "apply_Q", "apply_P", "ccr_residual",
    "hat_u", "hat_v", "check_u", "check_v", "intertwine", "chern_data",
    "random_points",
]


@dataclass(frozen=True, eq=False)
class Bundle:
    rep: TorusRep
    tau: complex

    def __post_init__(self):
        object.__setattr__(self, "tau", check_tau(self.tau))
        res = verify_rep(self.rep)
        if max(res.values()) > 1e-10:
            raise ValueError(f"representation fails its relations: {res}")

    @classmethod
    def canonical(cls, pair: CoprimePair, tau: complex, s=1.0, t=1.0) -> "Bundle":
        return cls(clock_shift_rep(pair, s, t), tau)

    @property
    def pair(self) -> CoprimePair:
        return self.rep.pair

    @property
    def r(self) -> int:
        return self.rep.pair.r

    @property
    def theta(self) -> float:
        return self.rep.pair.theta

    @property
    def alpha(self) -> float:
        return np.pi * self.theta / self.tau.imag

    def lattice(self, n: int, m: int) -> complex:
        return n + self.tau * m

    def log_sqrt_h(self, z):
        return -0.5 * self.alpha * np.abs(z) ** 2


def _upow(M, n):
    if n >= 0:
        return np.linalg.matrix_power(M, n)
    return np.linalg.matrix_power(M.conj().T, -n)


def _multiplier_exponent(bd: Bundle, n, m, z):
    gam = bd.lattice(n, m)
    return (bd.alpha * (z * np.conj(gam) + 0.5 * abs(gam) ** 2)
            + 1j * np.pi * bd.theta * n * m)


def theta_multiplier(bd: Bundle, gamma: tuple[int, int], z: complex, log_weight: complex = 0.0):
    """``J_gamma(z)`` as an ``r x r`` matrix; ``exp(log_weight)`` is folded in."""
    n, m = gamma
    scal = np.exp(_multiplier_exponent(bd, n, m, complex(z)) + log_weight)
    return scal * (_upow(bd.rep.U, -n) @ _upow(bd.rep.V, -m))


def cocycle_residual(bd: Bundle, gamma, delta, z: complex) -> float:
    """``max|J_{gamma+delta}(z) - J_gamma(z+delta) J_delta(z)|`` in unitary frames.

    Both sides map the fibre over ``z`` to the fibre over ``z+gamma+delta``; they
    are rescaled by ``sqrt(h(z+gamma+delta)/h(z))`` which makes each of them a
    unitary matrix.
    """
    z = complex(z)
    gd = (gamma[0] + delta[0], gamma[1] + delta[1])
    zd = z + bd.lattice(*delta)
    lw = bd.log_sqrt_h(z + bd.lattice(*gd)) - bd.log_sqrt_h(z)
    lhs = theta_multiplier(bd, gd, z, lw)
    rhs = theta_multiplier(bd, gamma, zd, lw) @ theta_multiplier(bd, delta, z)
    return max_abs(lhs - rhs)


def boundary_residual(bd: Bundle, s: SectionExpr, z) -> tuple[float, float]:
    """Defects of ``s(z+1) = e^{alpha(z+1/2)} U^* s(z)`` and the tau analogue.

    Returns the largest fibre-metric norm of the defect over the points ``z``.
    """
    if s.r != bd.r:
        raise ValueError("section has the wrong number of components")
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    a, tau = bd.alpha, bd.tau
    out = []
    for step, shift_exp, M in (
        (1.0, a * (z + 0.5), bd.rep.U),
        (tau, a * (z * np.conj(tau) + 0.5 * abs(tau) ** 2), bd.rep.V),
    ):
        lw = bd.log_sqrt_h(z + step)
        lhs = s.evaluate(z + step, lw)
        rhs = M.conj().T @ s.evaluate(z, shift_exp + lw)
        out.append(float(np.max(np.linalg.norm(lhs - rhs, axis=0))))
    return out[0], out[1]


def hermitian_pair(bd: Bundle, s: SectionExpr, s2: SectionExpr, z):
    """``<s(z), s2(z)> h(z)``, antilinear in the first slot."""
    if s.r != s2.r:
        raise ValueError("component counts differ")
    lw = bd.log_sqrt_h(np.asarray(z))
    val = np.sum(np.conj(s.evaluate(z, lw)) * s2.evaluate(z, lw), axis=0)
    return complex(val) if val.ndim == 0 else val


def quadrature_points(tau: complex, M: int):
    """Equispaced points ``x + tau y`` with ``x, y in {0, 1/M, ...}`` and the cell weight.

    The weight is ``Im(tau) / M^2`` so that the weights add up to the area of
    the fundamental domain.
    """
    if M < 8:
        raise ValueError("quadrature grid must have M >= 8")
    x = np.arange(M) / M
    X, Y = np.meshgrid(x, x, indexing="ij")
    return (X + tau * Y).ravel(), complex(tau).imag / M ** 2


def _weighted_samples(bd: Bundle, sections, z):
    lw = bd.log_sqrt_h(z)
    return np.stack([s.evaluate(z, lw).ravel() for s in sections], axis=1)


def gram_matrix(bd: Bundle, sections, M: int = 64) -> np.ndarray:
    """``G[i, j] = <s_i, s_j>`` by the periodic trapezoid rule on an M x M grid."""
    z, w = quadrature_points(bd.tau, M)
    S = _weighted_samples(bd, sections, z)
    return w * (S.conj().T @ S)


def l2_inner(bd: Bundle, s: SectionExpr, s2: SectionExpr, M: int = 64) -> complex:
    return complex(gram_matrix(bd, [s, s2], M)[0, 1])


def random_points(rng, tau: complex, n: int) -> np.ndarray:
    """Uniform points of the fundamental parallelogram."""
    x, y = rng.random(n), rng.random(n)
    return x + complex(tau) * y


# connection ---------------------------------------------------------------

def nabla_x(bd: Bundle, s: SectionExpr) -> SectionExpr:
    return s.d_x() - s.mul_zbar().scale(bd.alpha)


def nabla_y(bd: Bundle, s: SectionExpr) -> SectionExpr:
    # dz(d/dy) = tau, hence the tau (not conj(tau)) in front of conj(z)
    return s.d_y(bd.tau) - s.mul_zbar().scale(bd.alpha * bd.tau)


def nabla_z(bd: Bundle, s: SectionExpr) -> SectionExpr:
    return s.d_z() - s.mul_zbar().scale(bd.alpha)


def apply_Q(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """``Q = i nabla_x``."""
    return nabla_x(bd, s).scale(1j)


def apply_P(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """``P = i nabla_y``."""
    return nabla_y(bd, s).scale(1j)


def ccr_residual(bd: Bundle, s: SectionExpr, z=None) -> tuple[float, float]:
    """How far ``[Q, P] s`` is from ``2 pi i theta s``.

    Returns ``(coefficient, pointwise)``: the first is the largest surviving
    atom coefficient of ``[Q,P]s - 2 pi i theta s`` after merging like atoms,
    relative to the largest coefficient occurring in ``[Q,P]s``; the second is
    the relative pointwise residual at ``z`` (0.0 if no points are given).
    """
    qp = apply_Q(bd, apply_P(bd, s)) - apply_P(bd, apply_Q(bd, s))
    target = s.scale(2j * np.pi * bd.theta)
    diff = (qp - target).simplify()
    scale = max(qp.coefficient_scale(), target.coefficient_scale())
    coef = 0.0 if len(diff) == 0 else float(np.exp(diff.coefficient_scale() - scale))
    point = 0.0
    if z is not None:
        point = rel_residual(qp.evaluate(z), target.evaluate(z))
    return coef, point


# translations ---------------------------------------------------------------

def hat_u(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """``(u^ s)(z) = exp(alpha (z/theta - 1/(2 theta^2))) s(z - 1/theta)``."""
    th, a = bd.theta, bd.alpha
    return s.translate(1.0 / th).mul_exp(cz=a / th, const=-a / (2 * th * th))


def hat_v(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """``(v^ s)(z) = exp(alpha (conj(tau) z/theta - |tau/theta|^2/2)) s(z - tau/theta)``."""
    th, a, tau = bd.theta, bd.alpha, bd.tau
    return s.translate(tau / th).mul_exp(cz=a * np.conj(tau) / th,
                                         const=-a * abs(tau) ** 2 / (2 * th * th))


def check_u(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """Parallel transport along ``t -> z - 1 + t``, ``t in [0, 1]``.

    Solving ``d/dt s = alpha conj(z(t)) s`` gives the factor
    ``exp(alpha (conj(z) - 1/2))``; this equals ``exp(iQ)``.
    """
    a = bd.alpha
    return s.translate(1.0).mul_exp(czb=a, const=-a / 2)


def check_v(bd: Bundle, s: SectionExpr) -> SectionExpr:
    """Parallel transport along ``t -> z - tau + t tau``; equals ``exp(iP)``.

    Factor ``exp(alpha (tau conj(z) - |tau|^2/2))``.
    """
    a, tau = bd.alpha, bd.tau
    return s.translate(tau).mul_exp(czb=a * tau, const=-a * abs(tau) ** 2 / 2)


def intertwine(W, s: SectionExpr, tol: float = 1e-10) -> SectionExpr:
    """``z -> W s(z)`` for a unitary ``W``."""
    W = np.asarray(W, dtype=np.complex128)
    if max_abs(W.conj().T @ W - np.eye(W.shape[0])) > tol:
        raise ValueError("intertwiner is not unitary")
    return s.apply_matrix(W)


def chern_data(pair: CoprimePair) -> dict[str, int]:
    """Rank and degree; the curvature is the constant theta * omega."""
    return {"rank": pair.r, "degree": pair.q}
