"""Finite-dimensional representations of the rational noncommutative torus."""
import numpy as np

from heisenberg_torus import CoprimePair, clock_shift_rep, equivalent, verify_rep
from heisenberg_torus.nctorus import find_intertwiner

pair = CoprimePair(3, 2)
rep = clock_shift_rep(pair)
np.set_printoptions(precision=3, suppress=True)
print("U =\n", rep.U)
print("V =\n", rep.V)

# VU = e^{2 pi i q / r} UV, and U^r, V^r are scalars
print("phase      :", np.round(rep.phase, 6))
print("VU (UV)^-1 :\n", rep.V @ rep.U @ np.linalg.inv(rep.U @ rep.V))
print(verify_rep(rep, tol=1e-12))

# Twisting by (s, t) only matters through s^r and t^r.
w = np.exp(2j * np.pi / 3)
twisted = clock_shift_rep(pair, w, 1)
print("\ntwist by a cube root of unity equivalent?", equivalent(rep, twisted))
W = find_intertwiner(rep, twisted)
print("intertwiner W U = U' W:", np.allclose(W @ rep.U, twisted.U @ W))

other = clock_shift_rep(pair, np.exp(1j * np.pi / 7), 1)
print("twist by e^{i pi/7} equivalent?", equivalent(rep, other))
