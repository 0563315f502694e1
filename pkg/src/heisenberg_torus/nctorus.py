"""Finite-dimensional representations of the rational noncommutative torus.

A representation of A_{q/r} is a pair of unitaries with ``V U = e^{2 pi i q/r} U V``.
Irreducible ones live on C^r and are classified by the scalars ``U^r = a``,
``V^r = b``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .gauss import unit_phase
from .linalg import as_cmat, max_abs, unitarity_defect
from .modarith import CoprimePair, ext_gcd

__all__ = [
    "TorusRep", "clock_matrix", "shift_matrix", "clock_shift_rep", "verify_rep",
    "equivalent", "dual_pair", "find_intertwiner", "commutator_determinant",
]


@dataclass(frozen=True, eq=False)
class TorusRep:
    pair: CoprimePair
    U: np.ndarray
    V: np.ndarray
    a: complex
    b: complex
    s: complex = 1.0   # twist of U (clock/shift family only)
    t: complex = 1.0   # twist of V

    @property
    def dim(self) -> int:
        return self.U.shape[0]

    @property
    def phase(self) -> complex:
        """The commutation phase ``e^{2 pi i q/r}``."""
        return complex(unit_phase(self.pair.q, self.pair.r))


def clock_matrix(r: int, q: int) -> np.ndarray:
    """``diag(1, w^q, w^{2q}, ...)`` with ``w = e^{2 pi i / r}``."""
    j = np.arange(r, dtype=np.int64)
    return np.diag(unit_phase(j * q, r))


def shift_matrix(r: int) -> np.ndarray:
    """Cyclic shift sending ``e_j`` to ``e_{j-1}``.

    This orientation gives ``V U = e^{2 pi i q/r} U V`` together with
    :func:`clock_matrix`; the opposite shift produces the inverse phase.
    """
    m = np.zeros((r, r), dtype=np.complex128)
    j = np.arange(r)
    m[(j - 1) % r, j] = 1.0
    return m


def _unit(x, name) -> complex:
    x = complex(x)
    if abs(abs(x) - 1.0) > 1e-12:
        raise ValueError(f"twist {name}={x} is not of unit modulus")
    return x


def clock_shift_rep(pair: CoprimePair, s: complex = 1.0, t: complex = 1.0) -> TorusRep:
    s, t = _unit(s, "s"), _unit(t, "t")
    r = pair.r
    U = s * clock_matrix(r, pair.q)
    V = t * shift_matrix(r)
    return TorusRep(pair, U, V, a=s ** r, b=t ** r, s=s, t=t)


def verify_rep(rep: TorusRep, tol: float | None = None) -> dict[str, float]:
    """Named residuals of the defining relations; never raises.

    If ``tol`` is given an extra key ``"ok"`` (1.0 or 0.0) is included.
    """
    U, V = as_cmat(rep.U, square=True), as_cmat(rep.V, square=True)
    n = rep.dim
    eye = np.eye(n)
    res = {
        "unitarity_U": unitarity_defect(U),
        "unitarity_V": unitarity_defect(V),
        "commutation": max_abs(V @ U - rep.phase * (U @ V)),
        "scalar_U_power": max_abs(np.linalg.matrix_power(U, rep.pair.r) - rep.a * eye),
        "scalar_V_power": max_abs(np.linalg.matrix_power(V, rep.pair.r) - rep.b * eye),
    }
    if tol is not None:
        res["ok"] = float(all(v <= tol for v in res.values()))
    return res


def equivalent(rep1: TorusRep, rep2: TorusRep, tol: float = 1e-10) -> bool:
    """Irreducible representations are equivalent iff their ``(a, b)`` agree."""
    if rep1.pair != rep2.pair:
        raise ValueError("representations of different tori")
    return abs(rep1.a - rep2.a) <= tol and abs(rep1.b - rep2.b) <= tol


def dual_pair(pair: CoprimePair) -> CoprimePair:
    return pair.dual()


def _root_index(z: complex, r: int, tol: float = 1e-9) -> int | None:
    """``c`` with ``z = e^{2 pi i c / r}``, or None if ``z`` is no r-th root of unity."""
    c = round(cmath.phase(z) * r / (2 * np.pi)) % r
    return c if abs(z - unit_phase(c, r)) <= tol else None


def find_intertwiner(rep1: TorusRep, rep2: TorusRep) -> np.ndarray | None:
    """Unitary ``W`` with ``W U1 = U2 W`` and ``W V1 = V2 W`` for clock/shift reps.

    Uses ``V^y U V^{-y} = w^{qy} U`` and ``U^x V U^{-x} = w^{-qx} V``; returns
    None if the twists of the two representations differ by something other
    than r-th roots of unity.
    """
    pair = rep1.pair
    if rep2.pair != pair:
        raise ValueError("representations of different tori")
    r, q = pair.r, pair.q
    cu = _root_index(rep2.s / rep1.s, r)
    cv = _root_index(rep2.t / rep1.t, r)
    if cu is None or cv is None:
        return None
    _, _, qinv = ext_gcd(r, q)  # a*r + qinv*q = 1, so qinv*q = 1 mod r
    y = (cu * qinv) % r
    x = (-cv * qinv) % r
    U0, V0 = clock_matrix(r, q), shift_matrix(r)
    return np.linalg.matrix_power(U0, x) @ np.linalg.matrix_power(V0, y)


def commutator_determinant(rep: TorusRep) -> complex:
    """``det(V U V^{-1} U^{-1})``; equals ``e^{2 pi i q} = 1`` for any rep."""
    U, V = rep.U, rep.V
    return complex(np.linalg.det(V @ U @ np.linalg.inv(V) @ np.linalg.inv(U)))
