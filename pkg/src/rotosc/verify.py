"""Verification suites run by ``rotosc verify``.

Each suite appends named checks (closed-form value, oracle value, error,
tolerance) to a :class:`~rotosc.oracle.VerificationReport`.
"""
from __future__ import annotations

import math

from .model import ModelParams, allowed_l_values
from .oracle import (VerificationReport, fd_eigensolve, ode_residual,
                     relative_error, seeded_bracket, shoot_eigenvalue,
                     weight_identity_check)
from .radial import bound_state, count_nodes, inner_product
from .spectrum import continuum_threshold, energy, energy_squared, n_max

DEFAULT_TOLERANCES = {
    "residual": 1e-8,
    "eigen": 1e-6,
    "oracle_agreement": 1e-7,
    "ortho": 1e-8,
    "continuity": 1e-3,
    "nonrel": 1e-3,
    "weight_identity": 1e-13,
}

SUITES = ("residual", "eigen", "ortho", "limits")
CORE = ("residual", "eigen", "ortho")

MASS, OMEGA = 1.0, 0.1
LAMBDA_GRID = (-1.0, -0.5, -0.1, 0.1, 0.5, 1.0)


def grid_states(lambdas=LAMBDA_GRID, l_values=(0, 1, 2), n_r_values=(0, 1, 2)):
    """(params, n_r, l, embedded) for the general-lambda acceptance grid."""
    for lam in lambdas:
        p = ModelParams(MASS, OMEGA, lam)
        top = n_max(p) if lam > 0 else None
        for l in l_values:
            for n_r in n_r_values:
                n = 2 * n_r + l
                if top is not None and n > top:
                    continue
                embedded = lam > 0 and energy(p, n, l) >= continuum_threshold(p)
                yield p, n_r, l, embedded


def _tag(p, n_r, l):
    return f"lam={p.lam:g},n_r={n_r},l={l}"


def run_residual(report: VerificationReport, tol: dict, seed: int = 0) -> None:
    for j, lam in enumerate(LAMBDA_GRID + (0.0,)):
        err = weight_identity_check(ModelParams(MASS, OMEGA, lam), 1000, seed + j)
        report.add(f"weight_identity[lam={lam:g}]", None, None, err, tol["weight_identity"])
    for p, n_r, l, _ in grid_states():
        e2 = energy_squared(p, 2 * n_r + l, l)
        res = ode_residual(bound_state(p, n_r, l), e2)
        report.add(f"residual[{_tag(p, n_r, l)}]", e2, None, res, tol["residual"])


def _eigen_checks(report, tol, p, l, n_r_list, fd=None):
    fd = fd or fd_eigensolve(p, l, max(n_r_list) + 1)
    for n_r in n_r_list:
        e2 = energy_squared(p, 2 * n_r + l, l)
        shot = shoot_eigenvalue(p, l, n_r, seeded_bracket(e2)).E_squared
        tag = _tag(p, n_r, l)
        report.add(f"fd[{tag}]", e2, float(fd.eigenvalues[n_r]),
                   relative_error(fd.eigenvalues[n_r], e2), tol["eigen"])
        report.add(f"shoot[{tag}]", e2, shot, relative_error(shot, e2), tol["eigen"])
        report.add(f"fd_vs_shoot[{tag}]", shot, float(fd.eigenvalues[n_r]),
                   relative_error(fd.eigenvalues[n_r], shot), tol["oracle_agreement"])


def run_eigen(report: VerificationReport, tol: dict) -> None:
    p0 = ModelParams(MASS, OMEGA, 0.0)
    for l in range(7):
        n_rs = [(n - l) // 2 for n in range(7) if l in allowed_l_values(n)]
        _eigen_checks(report, tol, p0, l, n_rs)
    groups = {}
    for p, n_r, l, embedded in grid_states():
        if embedded:
            e2 = energy_squared(p, 2 * n_r + l, l)
            res = ode_residual(bound_state(p, n_r, l), e2)
            report.add(f"embedded_residual[{_tag(p, n_r, l)}]", e2, None, res, tol["residual"])
        else:
            groups.setdefault((p, l), []).append(n_r)
    for (p, l), n_rs in groups.items():
        _eigen_checks(report, tol, p, l, n_rs)


def run_ortho(report: VerificationReport, tol: dict) -> None:
    for lam in LAMBDA_GRID + (0.0,):
        p = ModelParams(MASS, OMEGA, lam)
        for l in (0, 1, 2):
            states = [bound_state(p, n_r, l) for n_r in range(4)
                      if lam <= 0 or 2 * n_r + l <= n_max(p)]
            for s in states:
                nodes = count_nodes(s)
                report.add(f"nodes[{_tag(p, s.qn.n_r, l)}]", s.qn.n_r, nodes,
                           abs(nodes - s.qn.n_r), 0.0)
            for i, a in enumerate(states):
                for b in states[:i]:
                    ip = abs(inner_product(a, b))
                    report.add(f"ortho[lam={lam:g},l={l},n_r={b.qn.n_r}|{a.qn.n_r}]",
                               0.0, ip, ip, tol["ortho"])


def run_limits(report: VerificationReport, tol: dict) -> None:
    p0 = ModelParams(MASS, OMEGA, 0.0)
    for lam in (-1e-4, 1e-4):
        p = p0.with_lambda(lam)
        for n in range(5):
            for l in allowed_l_values(n):
                e0, e = energy(p0, n, l), energy(p, n, l)
                report.add(f"continuity[lam={lam:g},n={n},l={l}]", e0, e,
                           relative_error(e, e0), tol["continuity"])
    ratio = 1e4
    for lam in (0.0, 1e-6, -1e-6):
        p = ModelParams(ratio * OMEGA, OMEGA, lam)
        for n in range(5):
            for l in allowed_l_values(n):
                x = (energy(p, n, l) - p.mass) / OMEGA
                report.add(f"nonrel[lam={lam:g},n={n},l={l}]", n + 1.5, x,
                           abs(x - (n + 1.5)), tol["nonrel"])


RUNNERS = {"residual": run_residual, "eigen": run_eigen,
           "ortho": run_ortho, "limits": run_limits}


def run(suite: str = "core", tol_override: float | None = None, seed: int = 0):
    """Run a suite and return (report, tolerances used).

    ``core`` is residual + eigen + ortho; ``all`` adds the limit checks.
    """
    tol = dict(DEFAULT_TOLERANCES)
    if tol_override is not None:
        tol = {k: tol_override for k in tol}
    report = VerificationReport()
    names = {"all": SUITES, "core": CORE}.get(suite, (suite,))
    for name in names:
        if name == "residual":
            run_residual(report, tol, seed)
        else:
            RUNNERS[name](report, tol)
    return report, tol
