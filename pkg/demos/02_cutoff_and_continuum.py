"""De Sitter-like deformations: a finite ladder of levels below a continuum.

For lambda > 0 only levels with n < -2 p_minus are normalizable.  Above
M sqrt(1 + 1/lambda) the spectrum is continuous, and some discrete levels
may sit inside it (flagged ``embedded``).
"""
import numpy as np

from rotosc import ModelParams, discrete_spectrum
from rotosc.radial import continuum_state, radial

for lam in (0.05, 0.2, 0.5, 1.0):
    params = ModelParams(mass=2.0, omega=1.0, lam=lam)
    res = discrete_spectrum(params, n_cutoff=50)
    n_emb = sum(lv.embedded for lv in res.levels)
    print(f"lambda={lam:4.2f}  n_max={res.n_max:2d}  threshold={res.continuum_threshold:.6f}  "
          f"levels={len(res.levels):3d}  embedded={n_emb}")

# the exact case where -2 p_minus is an integer
res = discrete_spectrum(ModelParams(2.0, 1.0, 1.0), n_cutoff=3)
for note in res.notes:
    print("note:", note)

# a continuum solution oscillates in ln r with bounded amplitude
params = ModelParams(1.0, 1.0, 1.0)
st = continuum_state(params, E=2.0, l=0)
r = np.geomspace(1.0, 1e8, 9)
print("continuum R(r):", np.array2string(radial(st, r), precision=4))
