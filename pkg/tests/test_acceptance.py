"""Acceptance criteria, one test per criterion at the stated tolerances."""
import math
import shutil
import subprocess
import sys
import time

import numpy as np
from scipy import optimize

from rotosc.metric import radial_weight
from rotosc.model import ModelParams, allowed_l_values, derive, nu
from rotosc.oracle import (continuum_floor, fd_eigensolve, ode_residual,
                           relative_error, seeded_bracket, shoot_eigenvalue,
                           weight_identity_check)
from rotosc.radial import bound_state, count_nodes, inner_product, radial
from rotosc.specfun import gauss_2f1
from rotosc.spectrum import (continuum_threshold, discrete_spectrum, e_max_bound,
                             energy, energy_squared, n_max)
from rotosc.verify import grid_states

M, W = 1.0, 0.1


def _levels(n_top):
    return [(n, l) for n in range(n_top + 1) for l in allowed_l_values(n)]


def test_c01_ads_equidistance():
    """1. AdS equidistance: E(n+1) - E(n) = omega to 1e-12, l-independent to 1e-13, < 1 s"""
    t0 = time.perf_counter()
    p = ModelParams(M, W, -1.0)
    E = {(n, l): energy(p, n, l) for n, l in _levels(21)}
    first = [E[(n, n % 2)] for n in range(22)]
    diffs = np.diff(first)
    assert np.max(np.abs(diffs - W)) <= 1e-12
    for n in range(21):
        vals = [E[(n, l)] for l in allowed_l_values(n)]
        assert max(vals) - min(vals) <= 1e-13 * min(vals)
    assert time.perf_counter() - t0 < 1.0


def test_c02_flat_spectrum_oracles():
    """2. lambda=0 spectrum: closed form vs FD and shooting to 1e-6 for n <= 6, < 30 s"""
    t0 = time.perf_counter()
    p = ModelParams(M, W, 0.0)
    worst = 0.0
    for l in range(7):
        n_rs = [(n - l) // 2 for n in range(l, 7, 2)]
        fd = fd_eigensolve(p, l, len(n_rs)).eigenvalues
        for n_r in n_rs:
            e2 = energy_squared(p, 2 * n_r + l, l)
            shot = shoot_eigenvalue(p, l, n_r, seeded_bracket(e2)).E_squared
            worst = max(worst, relative_error(fd[n_r], e2), relative_error(shot, e2))
    print(f"criterion 2 worst relative error {worst:.2e}")
    assert worst <= 1e-6
    assert time.perf_counter() - t0 < 30.0


def test_c03_general_lambda_oracles():
    """3. General-lambda grid: FD and shooting within 1e-6, embedded residual <= 1e-8, < 5 min"""
    t0 = time.perf_counter()
    groups, worst, worst_agree, worst_res = {}, 0.0, 0.0, 0.0
    for p, n_r, l, embedded in grid_states():
        e2 = energy_squared(p, 2 * n_r + l, l)
        if embedded:
            worst_res = max(worst_res, ode_residual(bound_state(p, n_r, l), e2))
        else:
            groups.setdefault((p, l), []).append(n_r)
    for (p, l), n_rs in groups.items():
        fd = fd_eigensolve(p, l, max(n_rs) + 1).eigenvalues
        for n_r in n_rs:
            e2 = energy_squared(p, 2 * n_r + l, l)
            shot = shoot_eigenvalue(p, l, n_r, seeded_bracket(e2)).E_squared
            worst = max(worst, relative_error(fd[n_r], e2), relative_error(shot, e2))
            worst_agree = max(worst_agree, relative_error(fd[n_r], shot))
    print(f"criterion 3 eigen {worst:.2e}, fd-vs-shoot {worst_agree:.2e}, embedded residual {worst_res:.2e}")
    assert worst <= 1e-6
    assert worst_agree <= 1e-7
    assert worst_res <= 1e-8
    assert time.perf_counter() - t0 < 300.0


def test_c04_exact_cutoff():
    """4. Exact cutoff: p_minus = -1/2 to 1e-14 and n_max = 0 at M=2, w=1, lam=1; mu=sqrt(10) gives n_max = 1"""
    p = ModelParams(2.0, 1.0, 1.0)
    assert abs(derive(p, 0).p_minus + 0.5) <= 1e-14
    assert n_max(p) == 0
    assert n_max(ModelParams(math.sqrt(10.0), 1.0, 1.0)) == 1


def test_c05_ultra_relativistic():
    """5. Ultra-relativistic rule: n_max = 0 for 10 random draws with lam w > M/2"""
    rng = np.random.default_rng(2024)
    for _ in range(10):
        lam, w = rng.uniform(0.05, 5.0), rng.uniform(0.05, 5.0)
        mass = rng.uniform(0.01, 0.999) * lam * w / 2
        assert n_max(ModelParams(mass, w, lam)) == 0


def test_c06_continuum_threshold():
    """6. Continuum threshold: nu changes sign at the threshold to 1e-10; M sqrt(1+1/lam) to 1e-13"""
    rng = np.random.default_rng(6)
    for _ in range(50):
        p = ModelParams(rng.uniform(0.1, 10), rng.uniform(0.05, 3), rng.uniform(0.01, 10))
        l = int(rng.integers(0, 5))
        target = (1 + 1 / p.lam) * p.mass ** 2 + (1 + p.lam) * p.omega ** 2 * l * (l + 1)
        f = lambda e2: nu(p, e2, l)  # noqa: E731
        lo, hi = 0.5 * target, 2.0 * target
        assert f(lo) > 0 > f(hi)
        root = optimize.brentq(f, lo, hi, xtol=1e-14 * target, rtol=4 * np.finfo(float).eps)
        assert abs(root - target) <= 1e-10 * target
        assert abs(root - continuum_floor(p, l)) <= 1e-10 * target
        ref = p.mass * math.sqrt(1 + 1 / p.lam)
        assert abs(continuum_threshold(p) - ref) <= 1e-13 * ref


def test_c07_node_counts():
    """7. Node counts equal n_r on the general-lambda grid"""
    for p, n_r, l, _ in grid_states():
        assert count_nodes(bound_state(p, n_r, l)) == n_r


def test_c08_orthogonality():
    """8. Orthogonality: same-l pairs with n_r <= 3 have normalized overlap <= 1e-8"""
    worst = 0.0
    for lam in (-1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0):
        p = ModelParams(M, W, lam)
        for l in (0, 1, 2):
            states = [bound_state(p, n_r, l) for n_r in range(4)]
            for i, a in enumerate(states):
                for b in states[:i]:
                    overlap = abs(inner_product(a, b)) / math.sqrt(
                        inner_product(a, a) * inner_product(b, b))
                    worst = max(worst, overlap)
    print(f"criterion 8 worst overlap {worst:.2e}")
    assert worst <= 1e-8


def test_c09_lambda_continuity():
    """9. Lambda continuity at +-1e-4: energies within 1e-3 E, wavefunctions within 1e-3 for n <= 4"""
    p0 = ModelParams(M, W, 0.0)
    r = np.linspace(0, 5 / math.sqrt(M * W), 500)
    for n, l in _levels(4):
        E0 = energy(p0, n, l)
        R0 = radial(bound_state(p0, (n - l) // 2, l), r)
        for lam in (-1e-4, 1e-4):
            p = p0.with_lambda(lam)
            assert abs(energy(p, n, l) - E0) <= 1e-3 * E0
            R = radial(bound_state(p, (n - l) // 2, l), r)
            assert np.max(np.abs(R - R0)) <= 1e-3 * np.max(np.abs(R0))


def test_c10_nonrelativistic_limit():
    """10. Non-relativistic limit: (E-M)/w within 1e-3 of n+3/2 at M/w = 1e4; splitting slope -1"""
    w = 1.0
    failures = []
    for lam in (0.0, 1e-6, -1e-6):
        p = ModelParams(1e4 * w, w, lam)
        for n, l in _levels(4):
            dev = abs((energy(p, n, l) - p.mass) / w - (n + 1.5))
            if dev > 1e-3:
                failures.append(f"lam={lam:g} n={n} l={l} deviation {dev:.3e}")
    ratios = np.array([1e2, 1e3, 1e4])
    split = [(energy(ModelParams(x * w, w, 0.0), 4, 4) - energy(ModelParams(x * w, w, 0.0), 4, 0)) / w
             for x in ratios]
    slope = np.polyfit(np.log(ratios), np.log(split), 1)[0]
    print(f"criterion 10 splitting slope {slope:.4f}")
    assert abs(slope + 1) <= 0.02
    assert not failures, "; ".join(failures)


def test_c11_e_max_bound():
    """11. E_max bound: every enumerated lam > 0 level has E^2 <= M^2(1+1/lam)^2 + 4 p_minus w^2 (1+lam)"""
    rng = np.random.default_rng(11)
    count = 0
    for _ in range(300):
        p = ModelParams(rng.uniform(0.1, 30), rng.uniform(0.05, 3), 10 ** rng.uniform(-2, 1))
        res = discrete_spectrum(p, 200)
        bound = e_max_bound(p)
        for lv in res.levels:
            assert lv.E_squared <= bound
            count += 1
    assert count > 300


def test_c12_self_adjointness_identity():
    """12. Self-adjointness identity (w beta)' = w (beta+1)/r within 1e-13 on 1000 draws"""
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(1000):
        lam, w = rng.uniform(-2, 2), rng.uniform(0.05, 3)
        p = ModelParams(1.0, w, lam)
        r0 = derive(p, 0).r0
        top = 0.99 * r0 if math.isfinite(r0) else 10 / w
        r = rng.uniform(1e-3 * top, top)
        worst = max(worst, weight_identity_check(p, radii=[r]))
        assert radial_weight(p, r) > 0
    print(f"criterion 12 worst violation {worst:.2e}")
    assert worst <= 1e-13


def test_c13_special_function_identities():
    """13. 2F1 identities: binomial and contiguity to 1e-10, conjugate-pair reality to 1e-12"""
    rng = np.random.default_rng(13)
    worst_binom = worst_contig = worst_imag = 0.0
    for _ in range(1000):
        a, b = rng.uniform(-3, 3), rng.uniform(0.5, 5)
        c = rng.uniform(1.5, 5)
        y = -10 ** rng.uniform(-3, 2)
        ref = (1 - y) ** -a
        worst_binom = max(worst_binom, abs(gauss_2f1(a, b, b, y) - ref) / ref)
        terms = (c * gauss_2f1(a, b, c, y), -c * gauss_2f1(a + 1, b, c, y),
                 b * y * gauss_2f1(a + 1, b + 1, c + 1, y))
        worst_contig = max(worst_contig, abs(sum(terms)) / max(map(abs, terms)))
        x, k = rng.uniform(-3, 1), rng.uniform(0.01, 3)
        v = gauss_2f1(complex(x, k), complex(x, -k), c, -10 ** rng.uniform(-3, 3))
        worst_imag = max(worst_imag, abs(v.imag) / abs(v.real))
    print(f"criterion 13 binomial {worst_binom:.2e}, contiguity {worst_contig:.2e}, "
          f"|Im|/|Re| {worst_imag:.2e}")
    assert worst_binom <= 1e-10
    assert worst_contig <= 1e-10
    assert worst_imag <= 1e-12


def test_c14_determinism(tmp_path):
    """14. Determinism: repeated spectrum and verify runs give byte-identical files"""
    exe = shutil.which("rotosc")
    base = [exe] if exe else [sys.executable, "-m", "rotosc.cli"]
    runs = [["spectrum", "--mass", "1", "--omega", "0.1", "--lambda", "0.3", "--n-cutoff", "8"],
            ["spectrum", "--lambda", "-0.5", "--n-cutoff", "5", "--format", "csv"],
            ["verify", "--suite", "residual"],
            ["verify", "--suite", "ortho", "--format", "csv"]]
    for k, args in enumerate(runs):
        outs = []
        for rep in range(2):
            path = tmp_path / f"run{k}_{rep}"
            proc = subprocess.run(base + args + ["--out", str(path)], capture_output=True)
            assert proc.returncode == 0, proc.stderr.decode()
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]
