"""Exact AdS member of the family: an equally spaced, l-degenerate spectrum.

At lambda = -1 the rotator term (1 + lambda) w^2 l(l+1) drops out and the
levels collapse onto E_n = w (2 p_plus + n).  We print the first few levels,
their spacing, and confirm one of them against the finite-difference oracle.
"""
from rotosc import ModelParams, discrete_spectrum
from rotosc.oracle import fd_eigensolve

params = ModelParams(mass=1.0, omega=0.1, lam=-1.0)
res = discrete_spectrum(params, n_cutoff=5)

print(f"regime: {params.regime.value}")
print(" n  l        E")
for lv in res.levels:
    print(f"{lv.n:2d} {lv.l:2d}  {lv.E:.12f}")

# spacing depends on n only
by_n = {}
for lv in res.levels:
    by_n.setdefault(lv.n, lv.E)
gaps = [by_n[n + 1] - by_n[n] for n in range(5)]
print("gaps:", ", ".join(f"{g:.12f}" for g in gaps))

fd = fd_eigensolve(params, l=1, k=2)
print("FD E^2 for l=1:", fd.eigenvalues, " closed form:",
      [lv.E_squared for lv in res.levels if lv.l == 1][:2])
