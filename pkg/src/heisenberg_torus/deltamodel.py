"""The finite delta model on C^{rq} = span{delta_{l m}}.

Basis vectors ``delta_{l m}`` (``l mod r``, ``m mod q``) are ordered
lexicographically, index ``l*q + m``, which is the flattening used by
``numpy.kron``.  The CRT permutation ``(l, m) -> k = q l + r m`` is the only
place where indices are reshuffled.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gauss import unit_phase
from .linalg import kron, max_abs, perm_conjugate, perm_matrix, unitarity_defect
from .modarith import CoprimePair, crt_join, crt_split

__all__ = [
    "build_A", "build_B", "build_C", "crt_unitary", "verify_tensor_identity",
    "OperatorFamily", "build_operator_family", "mutual_commutation",
    "blackboard_generators", "phase_law_residual", "matrix_unit",
    "matrix_unit_iso", "power_cocycle", "family_residuals",
]


def _dft(n: int, factor: int) -> np.ndarray:
    i = np.arange(n, dtype=np.int64)
    return unit_phase(-np.outer(i, i) * factor, n)


def build_A(pair: CoprimePair, mu: int = 1) -> np.ndarray:
    """``A[l, l'] = exp(-2 pi i l l' mu q / r)``."""
    return _dft(pair.r, mu * pair.q)


def build_B(pair: CoprimePair, mu: int = 1) -> np.ndarray:
    """``B[m, m'] = exp(-2 pi i m m' mu r / q)``."""
    return _dft(pair.q, mu * pair.r)


def build_C(pair: CoprimePair, mu: int = 1) -> np.ndarray:
    """``C[k, k'] = exp(-2 pi i k k' mu / rq)``."""
    return _dft(pair.n, mu)


def crt_unitary(pair: CoprimePair) -> np.ndarray:
    """Permutation sending lexicographic index ``l*q + m`` to ``crt_join(l, m)``."""
    sigma = np.empty(pair.n, dtype=np.int64)
    for l in range(pair.r):
        for m in range(pair.q):
            sigma[l * pair.q + m] = crt_join(pair, l, m)
    return sigma


def verify_tensor_identity(pair: CoprimePair, mu: int = 1) -> dict[str, float]:
    """Residuals of ``C = U (A (x) B) U^-1`` and ``tr C = tr A tr B``."""
    A, B, C = build_A(pair, mu), build_B(pair, mu), build_C(pair, mu)
    conj = perm_conjugate(crt_unitary(pair), kron(A, B))
    return {
        "matrix": max_abs(C - conj),
        "trace": float(abs(np.trace(C) - np.trace(A) * np.trace(B))),
    }


# operator families ----------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OperatorFamily:
    pair: CoprimePair
    twists: tuple
    U: np.ndarray
    V: np.ndarray
    Ut: np.ndarray
    Vt: np.ndarray

    @property
    def UU(self) -> np.ndarray:
        return self.U

    @property
    def VV(self) -> np.ndarray:
        return np.linalg.matrix_power(self.V, self.pair.r)

    @property
    def UUt(self) -> np.ndarray:
        return self.Ut

    @property
    def VVt(self) -> np.ndarray:
        return np.linalg.matrix_power(self.Vt, self.pair.q)

    def matrices(self) -> dict[str, np.ndarray]:
        return {"U": self.U, "V": self.V, "Ut": self.Ut, "Vt": self.Vt,
                "UU": self.UU, "VV": self.VV, "UUt": self.UUt, "VVt": self.VVt}


def build_operator_family(pair: CoprimePair, twists=(1.0, 1.0, 1.0, 1.0)) -> OperatorFamily:
    """``U d_{lm} = mu d_{l,m-1}``, ``V d_{lm} = nu e^{-2 pi i m/q} d_{lm}`` and the
    tilded pair acting the same way on the first index (with ``r``)."""
    mu, nu, mut, nut = (complex(x) for x in twists)
    for x in (mu, nu, mut, nut):
        if abs(abs(x) - 1) > 1e-12:
            raise ValueError("twists must have unit modulus")
    r, q = pair.r, pair.q
    lower_q = np.zeros((q, q), dtype=np.complex128)
    lower_q[(np.arange(q) - 1) % q, np.arange(q)] = 1.0          # e_m -> e_{m-1}
    lower_r = np.zeros((r, r), dtype=np.complex128)
    lower_r[(np.arange(r) - 1) % r, np.arange(r)] = 1.0
    U = mu * np.kron(np.eye(r), lower_q)
    V = nu * np.kron(np.eye(r), np.diag(unit_phase(-np.arange(q), q)))
    Ut = mut * np.kron(lower_r, np.eye(q))
    Vt = nut * np.kron(np.diag(unit_phase(-np.arange(r), r)), np.eye(q))
    return OperatorFamily(pair, (mu, nu, mut, nut), U, V, Ut, Vt)


def _comm_phase(X, Y, phase) -> float:
    """``max|XY - phase YX|``."""
    return max_abs(X @ Y - phase * (Y @ X))


def mutual_commutation(fam: OperatorFamily) -> float:
    plain = (fam.U, fam.V, fam.UU, fam.VV)
    tilde = (fam.Ut, fam.Vt, fam.UUt, fam.VVt)
    return max(_comm_phase(x, y, 1.0) for x in plain for y in tilde)


def family_residuals(fam: OperatorFamily) -> dict[str, float]:
    """All relation residuals of the eight operators."""
    r, q = fam.pair.r, fam.pair.q
    mu, nu, mut, nut = fam.twists
    I = np.eye(r * q)
    mats = fam.matrices()
    P = np.linalg.matrix_power
    return {
        "unitarity": max(unitarity_defect(m) for m in mats.values()),
        "UV": _comm_phase(fam.U, fam.V, unit_phase(-1, q)),
        "UtVt": _comm_phase(fam.Ut, fam.Vt, unit_phase(-1, r)),
        "UUVV": _comm_phase(fam.UU, fam.VV, unit_phase(-r, q)),
        "UUtVVt": _comm_phase(fam.UUt, fam.VVt, unit_phase(-q, r)),
        "U^q": max_abs(P(fam.U, q) - mu ** q * I),
        "V^q": max_abs(P(fam.V, q) - nu ** q * I),
        "Ut^r": max_abs(P(fam.Ut, r) - mut ** r * I),
        "Vt^r": max_abs(P(fam.Vt, r) - nut ** r * I),
        "VV^q": max_abs(P(fam.VV, q) - nu ** (r * q) * I),
        "VVt^r": max_abs(P(fam.VVt, r) - nut ** (r * q) * I),
        "mutual": mutual_commutation(fam),
    }


def blackboard_generators(fam: OperatorFamily, k: int) -> tuple[np.ndarray, np.ndarray]:
    """``(UU^k, VV^k) = (UU^m UUt^l, VV^m VVt^l)`` with ``(l, m) = crt_split(k)``.

    These are families indexed by ``k``, not literal powers of ``UU^1``.
    """
    l, m = crt_split(fam.pair, k)
    P = np.linalg.matrix_power
    return P(fam.UU, m) @ P(fam.UUt, l), P(fam.VV, m) @ P(fam.VVt, l)


def phase_law_residual(fam: OperatorFamily) -> float:
    """``max_{k,k'} |UU^k VV^k' - e^{-2 pi i k k'/rq} VV^k' UU^k|`` over all pairs."""
    n = fam.pair.n
    gens = [blackboard_generators(fam, k) for k in range(n)]
    worst = 0.0
    for k in range(n):
        Uk = gens[k][0]
        for kp in range(n):
            Vkp = gens[kp][1]
            worst = max(worst, _comm_phase(Uk, Vkp, unit_phase(-k * kp, n)))
    return worst


def power_cocycle(fam: OperatorFamily) -> np.ndarray:
    """Phases ``c`` with ``UU^{k1} UU^{k2} = c UU^{k1+k2}``; NaN where not a scalar multiple.

    With unit twists every phase is 1; twists of ``U`` or ``Ut`` make it nontrivial.
    """
    n = fam.pair.n
    gens = [blackboard_generators(fam, k)[0] for k in range(n)]
    out = np.full((n, n), np.nan + 0j)
    for k1 in range(n):
        for k2 in range(n):
            prod, target = gens[k1] @ gens[k2], gens[(k1 + k2) % n]
            c = np.trace(target.conj().T @ prod) / n
            if max_abs(prod - c * target) < 1e-10:
                out[k1, k2] = c
    return out


# matrix units -----------------------------------------------------------------

def matrix_unit(n: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((n, n), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def matrix_unit_iso(pair: CoprimePair) -> dict[tuple[int, int, int, int], tuple[int, int]]:
    """``(l, l', m, m') -> (k, k')`` realising ``E_{l l'} (x) E_{m m'} <-> E_{k k'}``."""
    out = {}
    for l in range(pair.r):
        for lp in range(pair.r):
            for m in range(pair.q):
                for mp in range(pair.q):
                    out[(l, lp, m, mp)] = (crt_join(pair, l, m), crt_join(pair, lp, mp))
    return out


def crt_matrix(pair: CoprimePair) -> np.ndarray:
    return perm_matrix(crt_unitary(pair))
