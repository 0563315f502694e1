"""The delta model: A_{1/rq} from commuting copies of A_{q/r} and A_{r/q}."""
import numpy as np

from heisenberg_torus import CoprimePair, build_operator_family
from heisenberg_torus import deltamodel as dm

pair = CoprimePair(3, 4)
fam = build_operator_family(pair)
for name, res in dm.family_residuals(fam).items():
    print(f"{name:10s} {res:.1e}")

# recombined generators indexed by k in Z_rq obey a single phase law
n = pair.n
table = np.zeros((n, n), dtype=complex)
for k in range(n):
    Uk, _ = dm.blackboard_generators(fam, k)
    for kp in range(n):
        _, Vkp = dm.blackboard_generators(fam, kp)
        # Uk Vkp = c Vkp Uk; read off c from the trace
        c = np.trace(np.linalg.inv(Vkp @ Uk) @ Uk @ Vkp) / n
        table[k, kp] = c
expected = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
print("phase table matches e^{-2 pi i k k'/rq}:", np.allclose(table, expected))

# UU^{k1} UU^{k2} = c UU^{k1+k2}; with unit twists every c comes out as 1
c = dm.power_cocycle(fam)
print("product phases:", np.unique(np.round(c, 8)))
