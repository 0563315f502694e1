"""Level-k theta functions on the torus C / (Z + tau Z)."""
import numpy as np

from heisenberg_torus import heat_residual, theta_eval
from heisenberg_torus.thetafun import auto_trunc

tau = 1j
print("theta(0, i) =", theta_eval(1, 0, 0, tau).real)
print("pi^(1/4)/Gamma(3/4) = 1.0864348112133080...")

# how many terms are needed for double precision
for k in (1, 2, 6, 12):
    print(f"level {k:2d}: {auto_trunc(k, 0, 0.5j, tau)} terms each side")

# k theta functions of level k, along the real axis
x = np.linspace(0, 1, 6)
for l in range(3):
    vals = theta_eval(3, l, x, 0.5 + 1.0j)
    print(f"l={l}:", np.round(np.abs(vals), 4))

# they solve the heat equation; the finite-difference error is second order
z = 0.3 + 0.1j
for h in (1e-2, 5e-3, 2.5e-3):
    print(f"h={h:.1e}  heat residual {heat_residual(1, 0, z, tau, h):.3e}")
