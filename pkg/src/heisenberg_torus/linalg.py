"""Dense complex matrix helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; this module only
adds validation, the Kronecker/permutation conventions used elsewhere, a few
residual measures and the CSV/JSON dump formats.
"""
from __future__ import annotations

import csv
import io
import json

import numpy as np

__all__ = [
    "as_cmat", "matmul", "kron", "perm_matrix", "perm_conjugate", "max_abs",
    "unitarity_defect", "is_unitary", "gram_rank", "inv_sqrt_psd",
    "to_json", "from_json", "to_csv", "from_csv",
]


def as_cmat(x, square: bool = False) -> np.ndarray:
    """Coerce ``x`` to a finite 2-D complex128 array."""
    m = np.array(x, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    if square and m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def matmul(x, y) -> np.ndarray:
    x, y = as_cmat(x), as_cmat(y)
    if x.shape[1] != y.shape[0]:
        raise ValueError(f"dimension mismatch {x.shape} @ {y.shape}")
    return x @ y


def kron(x, y) -> np.ndarray:
    """Kronecker product; entry ``[i*py + k, j*qy + l] = x[i, j] * y[k, l]``."""
    return np.kron(as_cmat(x), as_cmat(y))


def perm_matrix(sigma) -> np.ndarray:
    """Permutation matrix with ``P[sigma[i], i] = 1``."""
    sigma = np.asarray(sigma, dtype=int)
    n = sigma.size
    if sorted(sigma.tolist()) != list(range(n)):
        raise ValueError("sigma is not a permutation of range(n)")
    p = np.zeros((n, n), dtype=np.complex128)
    p[sigma, np.arange(n)] = 1.0
    return p


def perm_conjugate(sigma, m) -> np.ndarray:
    """Return ``P M P^{-1}``, i.e. ``out[sigma[i], sigma[j]] = M[i, j]``."""
    m = as_cmat(m, square=True)
    sigma = np.asarray(sigma, dtype=int)
    if sigma.size != m.shape[0]:
        raise ValueError("permutation size does not match matrix")
    perm_matrix(sigma)  # validates
    out = np.empty_like(m)
    out[np.ix_(sigma, sigma)] = m
    return out


def max_abs(x) -> float:
    x = np.asarray(x)
    return float(np.max(np.abs(x))) if x.size else 0.0


def unitarity_defect(m) -> float:
    """``max |M^dagger M - I|``."""
    m = as_cmat(m, square=True)
    return max_abs(m.conj().T @ m - np.eye(m.shape[0]))


def is_unitary(m, tol: float = 1e-12) -> bool:
    return unitarity_defect(m) <= tol


def gram_rank(g, tol: float = 1e-10) -> int:
    """Numerical rank of a Hermitian positive semidefinite matrix.

    Counts eigenvalues above ``tol * max(1, max|G|)``.
    """
    g = as_cmat(g, square=True)
    scale = max(1.0, max_abs(g))
    if max_abs(g - g.conj().T) > tol * scale:
        raise ValueError("Gram matrix is not Hermitian within tolerance")
    w = np.linalg.eigvalsh(0.5 * (g + g.conj().T))
    return int(np.sum(w > tol * scale))


def inv_sqrt_psd(g) -> np.ndarray:
    """``G^{-1/2}`` for a Hermitian positive definite ``G``."""
    g = as_cmat(g, square=True)
    w, v = np.linalg.eigh(0.5 * (g + g.conj().T))
    if np.any(w <= 0):
        raise np.linalg.LinAlgError("matrix is not positive definite")
    return (v / np.sqrt(w)) @ v.conj().T


# dump formats --------------------------------------------------------------

def to_json(m) -> dict:
    m = as_cmat(m)
    return {
        "rows": m.shape[0],
        "cols": m.shape[1],
        "entries": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def from_json(obj) -> np.ndarray:
    if isinstance(obj, str):
        obj = json.loads(obj)
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = obj["entries"]
    if len(entries) != rows * cols:
        raise ValueError("entry count does not match rows*cols")
    flat = np.array([complex(re, im) for re, im in entries], dtype=np.complex128)
    return as_cmat(flat.reshape(rows, cols))


def to_csv(m) -> str:
    """One CSV line per matrix row, as ``re,im`` pairs laid side by side."""
    m = as_cmat(m)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in m:
        w.writerow([f"{v:.17g}" for z in row for v in (z.real, z.imag)])
    return buf.getvalue()


def from_csv(text: str) -> np.ndarray:
    rows = []
    for rec in csv.reader(io.StringIO(text)):
        if not rec or rec[0].startswith("#"):
            continue
        if len(rec) % 2:
            raise ValueError("CSV row has an odd number of fields")
        vals = [float(v) for v in rec]
        rows.append([complex(a, b) for a, b in zip(vals[::2], vals[1::2])])
    return as_cmat(rows)
