"""Quadratic Gauss sums and their splitting along Z_rq = Z_r x Z_q."""
import numpy as np

from heisenberg_torus import CoprimePair, crt_join, crt_split, gauss_sum
from heisenberg_torus.deltamodel import build_A, build_B, build_C, verify_tensor_identity

# The sums themselves. For mu = 1 the modulus n mod 4 decides the phase.
for n in range(1, 9):
    s = gauss_sum(1, n)
    print(f"S(1, {n}) = {s.real:+.6f} {s.imag:+.6f}i   |S|^2 = {abs(s) ** 2:.3f}")

# Every k mod 15 splits uniquely into (l mod 3, m mod 5).
pair = CoprimePair(3, 5)
print("\nk  -> (l, m)")
for k in range(pair.n):
    l, m = crt_split(pair, k)
    assert crt_join(pair, l, m) == k
    print(f"{k:2d} -> ({l}, {m})")

# Splitting the index splits the sum.
for mu in (1, 2, 3):
    lhs = gauss_sum(mu * pair.q, pair.r) * gauss_sum(mu * pair.r, pair.q)
    print(f"mu={mu}: S(mu q, r) S(mu r, q) = {lhs:.6f}, S(mu, rq) = {gauss_sum(mu, pair.n):.6f}")

# The same statement one level up: the DFT-type matrix C on C^{rq} is a
# permuted tensor product of the ones on C^r and C^q, and the trace of C is a sum.
A, B, C = build_A(pair), build_B(pair), build_C(pair)
print("\ntr A tr B =", np.round(np.trace(A) * np.trace(B), 10))
print("tr C      =", np.round(np.trace(C), 10))
print("residuals:", verify_tensor_identity(pair))
