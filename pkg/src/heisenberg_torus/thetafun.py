r"""Level-k theta functions and the coherent state transform.

.. math::

    \vartheta_\ell(z, \tau) = \sum_{n} e^{\pi i \tau (\ell + kn)^2 / k}\, e^{2\pi i (\ell + kn) z}

i.e. the boundary distribution with Fourier modes ``l + k n`` is damped mode by
mode with the Gaussian factor ``exp(i pi tau lambda^2 / k)``.
"""
from __future__ import annotations

import math

import numpy as np

__all__ = [
    "check_tau", "theta_modes", "cst_modes", "auto_trunc", "theta_eval",
    "theta_d2z", "heat_residual",
]


def check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ValueError(f"tau={tau} is not in the upper half-plane")
    return tau


def _check_level(level: int, index: int) -> None:
    if level < 1:
        raise ValueError("level must be positive")
    if not 0 <= index < level:
        raise ValueError(f"index {index} outside [0, {level})")


def theta_modes(level: int, index: int, trunc: int) -> np.ndarray:
    """Integer frequencies ``index + level*n`` for ``|n| <= trunc``."""
    n = np.arange(-trunc, trunc + 1, dtype=np.int64)
    return index + level * n


def cst_modes(frequencies, level: int, tau: complex) -> dict[int, complex]:
    """Coefficient ``exp(i pi tau lam^2 / level)`` attached to each mode ``lam``."""
    tau = check_tau(tau)
    if level < 1:
        raise ValueError("level must be positive")
    return {int(lam): complex(np.exp(1j * np.pi * tau * lam * lam / level)) for lam in frequencies}


def _tail_majorant(level, index, N, ysize, T) -> float:
    lam = level * (N + 1) - index          # smallest |mode| among omitted terms
    log_ratio = -np.pi * T * (2 * lam + level) + 2 * np.pi * level * ysize
    if log_ratio >= 0:
        return math.inf
    log_first = -np.pi * T * lam * lam / level + 2 * np.pi * lam * ysize
    # both tails, each a geometric series dominated by its first term
    return 2.0 * math.exp(log_first) / (1.0 - math.exp(log_ratio))


def auto_trunc(level: int, index: int, z: complex, tau: complex, tol: float = 1e-16,
               max_trunc: int = 10_000) -> int:
    """Smallest ``N >= 1`` whose Gaussian tail bound falls below ``tol``."""
    _check_level(level, index)
    tau = check_tau(tau)
    if tol <= 0:
        raise ValueError("tol must be positive")
    ysize = abs(complex(z).imag)
    for N in range(1, max_trunc + 1):
        if _tail_majorant(level, index, N, ysize, tau.imag) < tol:
            return N
    raise RuntimeError("truncation bound did not converge")


def _weights(level, index, tau, trunc):
    lam = theta_modes(level, index, trunc)
    return lam, np.exp(1j * np.pi * tau * lam * lam / level)


def theta_eval(level: int, index: int, z, tau: complex, trunc: int | None = None):
    """Evaluate the level-``level`` theta with index ``index`` at ``z`` (scalar or array)."""
    _check_level(level, index)
    tau = check_tau(tau)
    z_arr = np.asarray(z, dtype=np.complex128)
    if trunc is None:
        ymax = float(np.max(np.abs(z_arr.imag))) if z_arr.size else 0.0
        trunc = auto_trunc(level, index, 1j * ymax, tau)
    lam, w = _weights(level, index, tau, trunc)
    # accumulate from the smallest terms inwards (|n| descending)
    order = np.argsort(-np.abs(lam), kind="stable")
    terms = w[order, None] * np.exp(2j * np.pi * np.outer(lam[order], z_arr.ravel()))
    out = terms.sum(axis=0).reshape(z_arr.shape)
    return complex(out) if out.ndim == 0 else out


def theta_d2z(level: int, index: int, z, tau: complex, trunc: int) -> complex:
    """Second z-derivative, termwise: each mode picks up ``-(2 pi lam)^2``."""
    lam, w = _weights(level, index, check_tau(tau), trunc)
    return complex(np.sum(-(2 * np.pi * lam) ** 2 * w * np.exp(2j * np.pi * lam * z)))


def heat_residual(level: int, index: int, z: complex, tau: complex, h: float = 1e-3) -> float:
    """``|d^2 theta/dz^2 - 4 pi i k d theta/d tau|`` with a central difference in tau.

    The tau step is purely imaginary (``tau +- i h``) so both stencil points stay
    in the upper half-plane; the residual is then O(h^2).
    """
    _check_level(level, index)
    tau = check_tau(tau)
    if not (h > 0 and math.isfinite(h)):
        raise ValueError("step h must be positive and finite")
    if h >= tau.imag:
        raise ValueError("step h too large for this tau")
    N = auto_trunc(level, index, z, complex(tau.real, tau.imag - h), tol=1e-20)
    d2z = theta_d2z(level, index, z, tau, N)
    up = theta_eval(level, index, z, tau + 1j * h, N)
    dn = theta_eval(level, index, z, tau - 1j * h, N)
    dtau = (up - dn) / (2j * h)
    return abs(d2z - 4j * np.pi * level * dtau)
