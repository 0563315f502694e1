"""Exact integer arithmetic: Bezout certificates and the CRT index bijection.

The bijection used throughout the package is

    Z_r x Z_q  ->  Z_{rq},     (l, m)  ->  k = (q*l + r*m) mod rq,

which is well defined and bijective whenever gcd(r, q) = 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["CoprimePair", "ext_gcd", "bezout", "crt_join", "crt_split", "coprime_pairs"]


@dataclass(frozen=True)
class CoprimePair:
    """Rank ``r`` and degree ``q`` of E_{r,q}; the flux is ``theta = q / r``."""

    r: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.r, int) and isinstance(self.q, int)):
            raise TypeError("r and q must be integers")
        if self.r < 1 or self.q < 1:
            raise ValueError(f"r and q must be positive, got ({self.r}, {self.q})")
        if math.gcd(self.r, self.q) != 1:
            raise ValueError(f"r={self.r} and q={self.q} are not coprime")

    @property
    def theta(self) -> float:
        return self.q / self.r

    @property
    def n(self) -> int:
        return self.r * self.q

    def dual(self) -> "CoprimePair":
        return CoprimePair(self.q, self.r)


def ext_gcd(r: int, q: int) -> tuple[int, int, int]:
    """Return ``(g, a, b)`` with ``g = gcd(r, q) = a*r + b*q``."""
    if r < 1 or q < 1:
        raise ValueError("ext_gcd expects positive integers")
    old_s, s = 1, 0
    old_t, t = 0, 1
    a, b = r, q
    while b:
        quo = a // b
        a, b = b, a - quo * b
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    return a, old_s, old_t


def bezout(pair: CoprimePair) -> tuple[int, int]:
    """Certificate ``(a, b)`` with ``a*r + b*q = 1``."""
    g, a, b = ext_gcd(pair.r, pair.q)
    assert g == 1
    return a, b


def _check_residue(x: int, n: int, name: str) -> None:
    if not 0 <= x < n:
        raise ValueError(f"{name}={x} is not a residue in [0, {n})")


def crt_join(pair: CoprimePair, l: int, m: int) -> int:
    """``k = (q*l + r*m) mod rq`` for residues ``l mod r`` and ``m mod q``."""
    _check_residue(l, pair.r, "l")
    _check_residue(m, pair.q, "m")
    return (pair.q * l + pair.r * m) % pair.n


def crt_split(pair: CoprimePair, k: int) -> tuple[int, int]:
    """Inverse of :func:`crt_join`.

    From ``a*r + b*q = 1`` we get ``b*q = 1 mod r`` and ``a*r = 1 mod q``, so
    reducing ``k = q*l + r*m`` gives ``l = b*k mod r`` and ``m = a*k mod q``.
    """
    _check_residue(k, pair.n, "k")
    a, b = bezout(pair)
    return (b * k) % pair.r, (a * k) % pair.q


def coprime_pairs(rmax: int, qmax: int | None = None):
    """Yield every :class:`CoprimePair` with ``r <= rmax`` and ``q <= qmax``."""
    qmax = rmax if qmax is None else qmax
    for r in range(1, rmax + 1):
        for q in range(1, qmax + 1):
            if math.gcd(r, q) == 1:
                yield CoprimePair(r, q)
