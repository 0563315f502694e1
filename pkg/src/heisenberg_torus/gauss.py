"""Quadratic Gauss sums S(mu, r) = sum_{l<r} exp(2 pi i l^2 mu / r)."""
from __future__ import annotations

import math

import numpy as np

from .modarith import CoprimePair

__all__ = ["unit_phase", "gauss_sum", "check_multiplicativity", "multiplicativity_terms"]


def unit_phase(num, den: int) -> np.ndarray:
    """``exp(2 pi i num / den)`` with the numerator reduced mod ``den`` first."""
    num = np.mod(np.asarray(num, dtype=np.int64), den)
    return np.exp(2j * np.pi * num / den)


def gauss_sum(mu: int, r: int) -> complex:
    if r < 1:
        raise ValueError("modulus r must be positive")
    l = np.arange(r, dtype=np.int64)
    terms = unit_phase((l * l) % r * (mu % r), r)
    # correctly rounded sums: the value does not depend on accumulation order
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def multiplicativity_terms(mu: int, pair: CoprimePair) -> tuple[complex, complex, complex]:
    """``(S(mu q, r), S(mu r, q), S(mu, rq))``."""
    r, q = pair.r, pair.q
    return gauss_sum(mu * q, r), gauss_sum(mu * r, q), gauss_sum(mu, r * q)


def check_multiplicativity(mu: int, pair: CoprimePair) -> float:
    """``|S(mu q, r) S(mu r, q) - S(mu, rq)|``."""
    a, b, c = multiplicativity_terms(mu, pair)
    return abs(a * b - c)
