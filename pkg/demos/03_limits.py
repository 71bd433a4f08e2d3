"""Continuity in lambda and the approach to the ordinary oscillator.

Energies and wavefunctions at lambda = +-1e-4 stay close to the lambda = 0
ones, and for M >> w the excitation (E - M)/w tends to n + 3/2 while the
fine structure within a shell shrinks like w/M.
"""
import numpy as np

from rotosc import ModelParams
from rotosc.radial import bound_state, radial
from rotosc.spectrum import energy

base = ModelParams(1.0, 0.1, 0.0)
for lam in (-1e-4, 0.0, 1e-4):
    p = base.with_lambda(lam)
    print(f"lambda={lam:+.0e}  E(2,0)={energy(p, 2, 0):.10f}")

r = np.linspace(0, 5 / np.sqrt(0.1), 200)
R0 = radial(bound_state(base, 1, 1), r)
R1 = radial(bound_state(base.with_lambda(1e-4), 1, 1), r)
print(f"max |R(1e-4) - R(0)| / max|R| = {np.abs(R1 - R0).max() / np.abs(R0).max():.2e}")

print("\n   M/w   n=4 levels (E-M)/w by l")
for ratio in (1e2, 1e3, 1e4, 1e6):
    p = ModelParams(ratio, 1.0, 0.0)
    vals = [(energy(p, 4, l) - p.mass) for l in (0, 2, 4)]
    print(f"{ratio:7.0e}  " + "  ".join(f"{v:.6f}" for v in vals))
