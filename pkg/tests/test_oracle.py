import math

import numpy as np
import pytest

from rotosc.errors import BracketError, DomainError
from rotosc.model import ModelParams, derive
from rotosc.oracle import (GridSpec, continuum_floor, fd_eigensolve,
                           fd_raw_eigenvalues, liouville_potential, ode_residual,
                           relative_error, seeded_bracket, shoot_eigenvalue,
                           weight_identity_check)
from rotosc.radial import bound_state, radial
from rotosc.spectrum import energy_squared


def test_residual_flat_ground_state():
    p = ModelParams(1, 0.1, 0)
    st = bound_state(p, 0, 0)
    assert ode_residual(st, 1 + 0.3) <= 1e-8


@pytest.mark.parametrize("n", range(6))
def test_residual_ads_levels(n):
    p = ModelParams(1, 0.1, -1)
    for l in range(n % 2, n + 1, 2):
        st = bound_state(p, (n - l) // 2, l)
        e2 = energy_squared(p, n, l)
        assert ode_residual(st, e2) <= 1e-8
        assert ode_residual(st, e2, method="analytic") <= 1e-12


@pytest.mark.parametrize("lam", [-1.0, -0.1, 0.0, 0.5])
def test_residual_negative_control(lam):
    p = ModelParams(1, 0.1, lam)
    st = bound_state(p, 1, 1)
    e2 = energy_squared(p, 3, 1)
    assert ode_residual(st, e2 * (1 + 1e-3)) >= 1e-4


def test_residual_rejects_endpoint_grid():
    st = bound_state(ModelParams(1, 1, -1), 0, 0)
    with pytest.raises(DomainError):
        ode_residual(st, 1.0, grid=[1e-9, 0.5])


def test_fd_flat_l0():
    p = ModelParams(1, 0.1, 0)
    res = fd_eigensolve(p, 0, 3)
    np.testing.assert_allclose(res.eigenvalues, [1.3, 1.7, 2.1], rtol=1e-6)


def test_fd_ads_l1():
    p = ModelParams(1, 0.1, -1)
    pp = derive(p, 0).p_plus
    res = fd_eigensolve(p, 1, 2)
    np.testing.assert_allclose(res.eigenvalues, [0.01 * (2 * pp + n) ** 2 for n in (1, 3)], rtol=1e-6)


def test_fd_single_level_truncation_study():
    # the n=0 state decays like 1/r, so a hard wall at R_max shifts E^2 by ~ R_max^-2
    p = ModelParams(2, 1, 1)
    assert continuum_floor(p, 0) == pytest.approx(8.0)
    vals = {R: fd_eigensolve(p, 0, 1, GridSpec(r_max=R)).eigenvalues[0] for R in (20.0, 40.0, 80.0)}
    errs = [vals[R] - 7.0 for R in (20.0, 40.0, 80.0)]
    assert all(e > 0 for e in errs) and all(v < 8.0 for v in vals.values())
    rates = [math.log2(errs[0] / errs[1]), math.log2(errs[1] / errs[2])]
    assert rates == pytest.approx([2.0, 2.0], abs=0.1)
    assert (4 * vals[80.0] - vals[40.0]) / 3 == pytest.approx(7.0, rel=1e-5)
    auto = fd_eigensolve(p, 0, 1)
    assert auto.below_continuum[0]
    assert auto.eigenvalues[0] == pytest.approx(7.0, rel=1e-6)


def test_fd_convergence_order():
    p = ModelParams(1, 0.1, -0.5)
    x_max = math.asin(1.0) / (0.1 * math.sqrt(0.5))
    exact = energy_squared(p, 2, 0)
    cells = np.array([200, 400, 800, 1600])
    err = [abs(fd_raw_eigenvalues(p, 0, 2, n, x_max)[1] - exact) for n in cells]
    slope = -np.polyfit(np.log(cells), np.log(err), 1)[0]
    assert slope >= 1.9


@pytest.mark.parametrize("lam", [-1.0, -0.5, 0.0, 0.1])
def test_fd_eigenvectors_match_closed_form(lam):
    p = ModelParams(1, 0.1, lam)
    res = fd_eigensolve(p, 1, 3)
    for n_r in range(3):
        ref = radial(bound_state(p, n_r, 1), res.r[res.r < 0.999 * bound_state(p, 0, 1).r0])
        fd = res.R[:len(ref), n_r]
        assert np.max(np.abs(fd - ref)) <= 1e-4 * np.max(np.abs(ref))


def test_liouville_potential_far_field():
    p = ModelParams(1, 0.5, 0.7)
    V = liouville_potential(p, 2, np.array([200.0]))
    assert V[0] == pytest.approx(continuum_floor(p, 2), rel=1e-10)


def test_shoot_ads_ground():
    p = ModelParams(1, 0.1, -1)
    target = 0.01 * (2 * derive(p, 0).p_plus) ** 2
    shot = shoot_eigenvalue(p, 0, 0, seeded_bracket(target))
    assert relative_error(shot.E_squared, target) <= 1e-9
    assert shot.nodes == 0


@pytest.mark.parametrize("n, l", [(2, 0), (2, 2)])
def test_shoot_top_level(n, l):
    # (2, 0) is the highest non-embedded level; (2, 2) sits above the threshold
    p = ModelParams(2, 1, 0.5)
    e2 = energy_squared(p, n, l)
    assert e2 < continuum_floor(p, l)
    shot = shoot_eigenvalue(p, l, (n - l) // 2, seeded_bracket(e2))
    assert relative_error(shot.E_squared, e2) <= 1e-9


@pytest.mark.parametrize("lam, n_r, l", [(-0.5, 2, 1), (0.0, 1, 0), (0.1, 2, 2)])
def test_shoot_and_fd_agree(lam, n_r, l):
    p = ModelParams(1, 0.1, lam)
    e2 = energy_squared(p, 2 * n_r + l, l)
    shot = shoot_eigenvalue(p, l, n_r, seeded_bracket(e2)).E_squared
    fd = fd_eigensolve(p, l, n_r + 1).eigenvalues[n_r]
    assert relative_error(shot, fd) <= 1e-7
    assert relative_error(shot, e2) <= 1e-6


def test_shoot_bracket_failures():
    p = ModelParams(1, 0.1, 0)
    e2 = energy_squared(p, 0, 0)
    with pytest.raises(BracketError):
        shoot_eigenvalue(p, 0, 0, (1.05 * e2, 1.1 * e2))
    with pytest.raises(BracketError):
        shoot_eigenvalue(p, 0, 0, (e2, e2))


def test_weight_identity_examples():
    assert weight_identity_check(ModelParams(1, 1, 0)) <= 1e-15
    p = ModelParams(1, 0.3, -1)
    assert weight_identity_check(p, radii=[0.5 / 0.3]) <= 1e-13
    rng = np.random.default_rng(5)
    for lam in rng.uniform(-2, 2, 20):
        assert weight_identity_check(ModelParams(1, 0.3, lam), 200) <= 1e-13


def test_grid_spec_validation():
    with pytest.raises(DomainError):
        GridSpec(n_points=10)
    with pytest.raises(DomainError):
        GridSpec(refinements=1)
