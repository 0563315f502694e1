"""Landau levels: raising holomorphic sections with A^dagger."""
import numpy as np

from heisenberg_torus import CoprimePair, build_vector_thetas, landau_level
from heisenberg_torus import bundle as bdl
from heisenberg_torus import oscillator as osc

basis = build_vector_thetas(CoprimePair(2, 3), 1j)
bd = basis.bundle
print(f"[A, A^dagger] = alpha = {osc.commutator_constant(bd):.6f}")

levels = [landau_level(basis, n) for n in range(3)]
for lvl in levels:
    print(f"level {lvl.n}: dim {lvl.rank}, eigenvalue {lvl.eigenvalue:.4f}, "
          f"residual {lvl.eigen_residual:.1e}, preserved by u^, v^: {osc.level_preservation(lvl):.1e}")

# different levels are orthogonal
worst = max(abs(bdl.l2_inner(bd, a, b))
            for i in range(3) for j in range(i + 1, 3)
            for a in levels[i].basis for b in levels[j].basis)
print("largest cross-level inner product:", f"{worst:.1e}")

# each level carries the same q-dimensional representation
U0, _ = osc.level_matrices(levels[0])
U2, _ = osc.level_matrices(levels[2])
print("U^ on level 0 and level 2 agree:", np.allclose(U0, U2, atol=1e-8))
