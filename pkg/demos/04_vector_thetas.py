"""Holomorphic sections of the rank r, degree q bundle with constant curvature."""
import numpy as np

from heisenberg_torus import CoprimePair, build_vector_thetas
from heisenberg_torus import bundle as bdl

pair = CoprimePair(3, 2)
basis = build_vector_thetas(pair, 0.25 + 1.1j)
bd = basis.bundle
print(f"theta = {bd.theta:.4f}, alpha = {bd.alpha:.4f}, {len(basis.sections)} sections")
print("series truncation:", basis.trunc)

# the sections satisfy the twisted periodicity conditions to round-off
rng = np.random.default_rng(0)
z = bdl.random_points(rng, bd.tau, 20)
for m, s in enumerate(basis.sections):
    print(f"s_{m}: boundary residuals", ["%.1e" % v for v in bdl.boundary_residual(bd, s, z)])

# pointwise norms descend to the torus
s0 = basis.sections[0]
p = bdl.hermitian_pair(bd, s0, s0, z[:3])
print("|s_0|^2 h at z, z+1, z+tau:",
      np.round(p.real, 6),
      np.round(bdl.hermitian_pair(bd, s0, s0, z[:3] + 1).real, 6),
      np.round(bdl.hermitian_pair(bd, s0, s0, z[:3] + bd.tau).real, 6))

G = basis.gram()
print("Gram matrix eigenvalues:", np.round(np.linalg.eigvalsh(G), 6))
