"""Closed-form sections as finite sums of exponential-polynomial atoms.

An atom on component ``j`` is

    z^pz * conj(z)^pb * exp(g*z^2 + mu*z + nu*conj(z) + logc)

and a :class:`SectionExpr` is a finite sum of atoms.  The family is closed
under d/dz, d/dzbar, multiplication by ``z``, ``conj(z)`` and by
``exp(c z + d conj(z))``, translation ``z -> z - w`` and constant matrices
acting on the component index, so all operators of the bundle calculus act
exactly on the atom list.

Coefficients are kept as complex logarithms: theta series combine very small
Gaussian weights with very large exponentials, and neither factor fits in a
double on its own for the translated arguments used here.
"""
from __future__ import annotations

from math import comb

import numpy as np

__all__ = ["SectionExpr", "rel_residual"]

_FIELDS = ("comp", "pz", "pb", "g", "mu", "nu", "logc")


def _log(x) -> complex:
    return complex(np.log(complex(x)))


class SectionExpr:
    """Sum of atoms with ``r`` vector components.  Instances are immutable."""

    __slots__ = ("r",) + _FIELDS

    def __init__(self, r, comp=(), pz=(), pb=(), g=(), mu=(), nu=(), logc=()):
        if r < 1:
            raise ValueError("component count must be positive")
        self.r = int(r)
        self.comp = np.asarray(comp, dtype=np.int64).ravel()
        self.pz = np.asarray(pz, dtype=np.int64).ravel()
        self.pb = np.asarray(pb, dtype=np.int64).ravel()
        self.g = np.asarray(g, dtype=np.complex128).ravel()
        self.mu = np.asarray(mu, dtype=np.complex128).ravel()
        self.nu = np.asarray(nu, dtype=np.complex128).ravel()
        self.logc = np.asarray(logc, dtype=np.complex128).ravel()
        n = self.comp.size
        if any(getattr(self, f).size != n for f in _FIELDS):
            raise ValueError("atom field arrays differ in length")
        if n and (self.comp.min() < 0 or self.comp.max() >= self.r):
            raise ValueError("component index out of range")
        if n and (self.pz.min() < 0 or self.pb.min() < 0):
            raise ValueError("negative monomial power")

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, r: int) -> "SectionExpr":
        return cls(r)

    @classmethod
    def atom(cls, r, comp, c=1.0, *, pz=0, pb=0, g=0.0, mu=0.0, nu=0.0) -> "SectionExpr":
        if c == 0:
            return cls.zero(r)
        return cls(r, [comp], [pz], [pb], [g], [mu], [nu], [_log(c)])

    def _replace(self, **kw) -> "SectionExpr":
        args = {f: kw.get(f, getattr(self, f)) for f in _FIELDS}
        return SectionExpr(self.r, **args)

    def _take(self, idx) -> "SectionExpr":
        return SectionExpr(self.r, **{f: getattr(self, f)[idx] for f in _FIELDS})

    @staticmethod
    def concat(parts, r=None) -> "SectionExpr":
        parts = list(parts)
        if r is None:
            r = parts[0].r
        if any(p.r != r for p in parts):
            raise ValueError("component counts differ")
        if not parts:
            return SectionExpr.zero(r)
        return SectionExpr(r, **{f: np.concatenate([getattr(p, f) for p in parts]) for f in _FIELDS})

    def __len__(self):
        return int(self.comp.size)

    @property
    def is_zero(self) -> bool:
        return len(self.simplify()) == 0

    # linear structure ---------------------------------------------------

    def __add__(self, other):
        return SectionExpr.concat([self, other])

    def __neg__(self):
        return self.scale(-1.0)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SectionExpr":
        if c == 0:
            return SectionExpr.zero(self.r)
        return self._replace(logc=self.logc + _log(c))

    __rmul__ = scale

    def simplify(self) -> "SectionExpr":
        """Merge atoms with identical shape; drop exact cancellations."""
        groups: dict[tuple, list[int]] = {}
        for i in range(len(self)):
            key = (int(self.comp[i]), int(self.pz[i]), int(self.pb[i]),
                   complex(self.g[i]), complex(self.mu[i]), complex(self.nu[i]))
            groups.setdefault(key, []).append(i)
        keep, logs = [], []
        for idx in groups.values():
            lc = self.logc[idx]
            finite = np.isfinite(lc.real)
            if not finite.any():
                continue
            lc = lc[finite]
            ref = lc.real.max()
            total = np.sum(np.exp(lc - ref))
            if total == 0:
                continue
            keep.append(idx[0])
            logs.append(ref + np.log(total))
        out = self._take(np.asarray(keep, dtype=np.int64))
        return out._replace(logc=np.asarray(logs, dtype=np.complex128))

    def coefficient_scale(self) -> float:
        """Largest atom coefficient modulus, as a log (``-inf`` when empty)."""
        return float(self.logc.real.max()) if len(self) else -np.inf

    # multiplication -----------------------------------------------------

    def mul_exp(self, cz=0.0, czb=0.0, const=0.0) -> "SectionExpr":
        """Multiply by ``exp(cz*z + czb*conj(z) + const)``."""
        return self._replace(mu=self.mu + cz, nu=self.nu + czb, logc=self.logc + const)

    def mul_z(self, k: int = 1) -> "SectionExpr":
        return self._replace(pz=self.pz + k)

    def mul_zbar(self, k: int = 1) -> "SectionExpr":
        return self._replace(pb=self.pb + k)

    def mul_gauss(self, g) -> "SectionExpr":
        """Multiply by ``exp(g z^2)``."""
        return self._replace(g=self.g + g)

    def apply_matrix(self, m) -> "SectionExpr":
        """Act with a constant ``r' x r`` matrix on the component index."""
        m = np.asarray(m, dtype=np.complex128)
        if m.ndim != 2 or m.shape[1] != self.r:
            raise ValueError("matrix does not match component count")
        parts = []
        for i in range(m.shape[0]):
            for j in range(self.r):
                if m[i, j] == 0:
                    continue
                sel = np.nonzero(self.comp == j)[0]
                if sel.size:
                    part = self._take(sel)
                    parts.append(SectionExpr(m.shape[0], np.full(sel.size, i), part.pz, part.pb,
                                             part.g, part.mu, part.nu, part.logc + _log(m[i, j])))
        return SectionExpr.concat(parts, r=m.shape[0]) if parts else SectionExpr.zero(m.shape[0])

    # calculus -----------------------------------------------------------

    def _with_factor(self, mask, factor, **shift) -> "SectionExpr":
        sel = np.nonzero(mask & (factor != 0))[0]
        if sel.size == 0:
            return SectionExpr.zero(self.r)
        part = self._take(sel)
        upd = {k: getattr(part, k) + v for k, v in shift.items()}
        upd["logc"] = part.logc + np.log(np.asarray(factor, dtype=np.complex128)[sel])
        return part._replace(**upd)

    def d_z(self) -> "SectionExpr":
        ones = np.ones(len(self), dtype=bool)
        return SectionExpr.concat([
            self._with_factor(ones, self.pz.astype(np.complex128), pz=-1),
            self._with_factor(ones, 2 * self.g, pz=1),
            self._with_factor(ones, self.mu),
        ], r=self.r)

    def d_zbar(self) -> "SectionExpr":
        ones = np.ones(len(self), dtype=bool)
        return SectionExpr.concat([
            self._with_factor(ones, self.pb.astype(np.complex128), pb=-1),
            self._with_factor(ones, self.nu),
        ], r=self.r)

    def d_x(self) -> "SectionExpr":
        """Derivative along ``z -> z + t``."""
        return self.d_z() + self.d_zbar()

    def d_y(self, tau: complex) -> "SectionExpr":
        """Derivative along ``z -> z + t*tau``."""
        return self.d_z().scale(tau) + self.d_zbar().scale(np.conj(tau))

    def translate(self, w: complex) -> "SectionExpr":
        """The section ``z -> s(z - w)``."""
        w = complex(w)
        if len(self) == 0 or w == 0:
            return self
        wb = w.conjugate()
        const = self.g * w * w - self.mu * w - self.nu * wb
        base = self._replace(mu=self.mu - 2 * self.g * w, logc=self.logc + const, pz=0 * self.pz,
                             pb=0 * self.pb)
        flat = np.nonzero((self.pz == 0) & (self.pb == 0))[0]
        parts = [base._take(flat)]
        for i in np.nonzero((self.pz != 0) | (self.pb != 0))[0]:
            a, b = int(self.pz[i]), int(self.pb[i])
            for u in range(a + 1):
                cu = comb(a, u) * (-w) ** (a - u)
                for v in range(b + 1):
                    c = cu * comb(b, v) * (-wb) ** (b - v)
                    if c == 0:
                        continue
                    atom = base._take([i])
                    parts.append(atom._replace(pz=[u], pb=[v], logc=atom.logc + _log(c)))
        return SectionExpr.concat(parts, r=self.r)

    # evaluation ---------------------------------------------------------

    def evaluate(self, z, log_weight=None) -> np.ndarray:
        """Values at ``z`` (any shape); result has shape ``(r,) + z.shape``.

        ``log_weight`` (broadcastable to ``z``) is added inside the exponential,
        e.g. ``-alpha |z|^2 / 2`` to obtain fibre-metric normalised values.
        """
        z = np.asarray(z, dtype=np.complex128)
        shape = z.shape
        zf = z.ravel()
        out = np.zeros((self.r, zf.size), dtype=np.complex128)
        if len(self) == 0:
            return out.reshape((self.r,) + shape)
        expo = (self.logc[:, None] + self.g[:, None] * zf ** 2 + self.mu[:, None] * zf
                + self.nu[:, None] * zf.conj())
        if log_weight is not None:
            expo = expo + np.broadcast_to(np.asarray(log_weight), shape).ravel()[None, :]
        vals = np.exp(expo)
        if np.any(self.pz):
            vals *= zf[None, :] ** self.pz[:, None]
        if np.any(self.pb):
            vals *= zf.conj()[None, :] ** self.pb[:, None]
        onehot = np.zeros((self.r, len(self)))
        onehot[self.comp, np.arange(len(self))] = 1.0
        out = onehot @ vals
        return out.reshape((self.r,) + shape)

    def __call__(self, z, log_weight=None):
        return self.evaluate(z, log_weight)

    def __repr__(self):
        return f"SectionExpr(r={self.r}, atoms={len(self)})"


def rel_residual(x, y) -> float:
    """``max|x - y| / max(max|x|, max|y|)``; 0 when both vanish."""
    x, y = np.asarray(x), np.asarray(y)
    scale = max(float(np.max(np.abs(x), initial=0.0)), float(np.max(np.abs(y), initial=0.0)))
    if scale == 0:
        return 0.0
    return float(np.max(np.abs(x - y))) / scale
