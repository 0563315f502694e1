"""Two commuting torus actions on sections: translations and parallel transport."""
import numpy as np

from heisenberg_torus import CoprimePair, build_vector_thetas, hat_matrices
from heisenberg_torus import bundle as bdl
from heisenberg_torus.sections import rel_residual
from heisenberg_torus.suite import random_atoms

pair = CoprimePair(2, 3)
basis = build_vector_thetas(pair, 1j)
bd = basis.bundle

# Q = i nabla_x and P = i nabla_y do not commute
rng = np.random.default_rng(1)
s = random_atoms(rng, pair.r)
print("[Q, P] - 2 pi i theta  (atoms, pointwise):", bdl.ccr_residual(bd, s, bdl.random_points(rng, bd.tau, 10)))

# translations by 1/theta and tau/theta map sections to sections
Uh, Vh = hat_matrices(basis)
np.set_printoptions(precision=3, suppress=True)
print("U^ on H^0 =\n", Uh)
print("V^ on H^0 =\n", Vh)
print("V^U^ (U^V^)^-1 =\n", Vh @ Uh @ np.linalg.inv(Uh @ Vh))
print("expected phase e^{2 pi i r/q} =", np.round(np.exp(2j * np.pi * pair.r / pair.q), 3))

# the parallel transports around the two cycles commute with both
z = bdl.random_points(rng, bd.tau, 10)
for name, a in (("u-check", bdl.check_u), ("v-check", bdl.check_v)):
    for bname, b in (("u^", bdl.hat_u), ("v^", bdl.hat_v)):
        r = rel_residual(a(bd, b(bd, s)).evaluate(z), b(bd, a(bd, s)).evaluate(z))
        print(f"[{name}, {bname}] residual {r:.1e}")
