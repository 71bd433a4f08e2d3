"""Discrete energy levels, finite cutoff and continuum threshold."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffError, DomainError
from .model import (ModelParams, allowed_l_values, check_selection, degeneracy,
                    derive)

INTEGER_SNAP = 1e-12


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    l: int
    E: float
    E_squared: float
    degeneracy: int
    embedded: bool = False

    @property
    def n_r(self) -> int:
        return (self.n - self.l) // 2


@dataclass
class SpectrumResult:
    params: ModelParams
    levels: list[EnergyLevel]
    n_max: int | None  # None means unbounded
    continuum_threshold: float | None = None
    E_max_bound: float | None = None
    notes: list[str] = field(default_factory=list)


def _cutoff_ratio(params: ModelParams) -> float:
    """-2 p_minus, the strict upper bound on n for lambda > 0."""
    return -2.0 * derive(params, 0).p_minus


def n_max_info(params: ModelParams) -> tuple[int, str | None]:
    """Finite cutoff and, when -2 p_minus is an integer, a diagnostic note."""
    if params.lam_eff <= 0:
        raise DomainError("n_max is only finite for lambda > 0")
    x = _cutoff_ratio(params)
    k = round(x)
    if k >= 1 and abs(x - k) <= INTEGER_SNAP * max(1.0, x):
        note = (
            f"-2 p_minus = {k} is an integer: level n={k} has a log-divergent norm "
            f"and is excluded (n_max={k - 1}); the integer-part rule would give {k}"
        )
        return k - 1, note
    return int(math.floor(x)), None


def n_max(params: ModelParams) -> int:
    """Largest main quantum number with a square-integrable state (lambda > 0)."""
    return n_max_info(params)[0]


def continuum_threshold(params: ModelParams) -> float:
    """Bottom M sqrt(1 + 1/lambda) of the continuous spectrum (lambda > 0)."""
    lam = params.lam_eff
    if lam <= 0:
        raise DomainError("continuum exists only for lambda > 0")
    return params.mass * math.sqrt(1.0 + 1.0 / lam)


def e_max_bound(params: ModelParams) -> float:
    lam = params.lam_eff
    if lam <= 0:
        raise DomainError("E_max bound is defined only for lambda > 0")
    p_minus = derive(params, 0).p_minus
    return params.mass ** 2 * (1.0 + 1.0 / lam) ** 2 + 4.0 * p_minus * params.omega ** 2 * (1.0 + lam)


def energy_squared(params: ModelParams, n: int, l: int) -> float:
    """E^2 of level (n, l); validates the selection rule and lambda > 0 cutoff."""
    check_selection(n, l)
    M, w, lam = params.mass, params.omega, params.lam_eff
    rot = l * (l + 1)
    if lam == 0:
        return M * M + 2.0 * M * w * (n + 1.5) + w * w * rot
    if lam > 0 and n > n_max(params):
        raise CutoffError(f"n={n} exceeds n_max={n_max(params)}")
    p = derive(params, l).p_selected
    return M * M - lam * w * w * (4.0 * p * (n + 1.5) + n * n) + (1.0 + lam) * w * w * rot


def energy(params: ModelParams, n: int, l: int) -> float:
    return math.sqrt(energy_squared(params, n, l))


def ads_energy(params: ModelParams, n: int) -> float:
    """Equidistant closed form omega (2 p_plus + n) of the exact AdS model."""
    p_plus = derive(params, 0).p_plus
    return params.omega * (2.0 * p_plus + n)


def discrete_spectrum(params: ModelParams, n_cutoff: int) -> SpectrumResult:
    """All levels with n <= n_cutoff (and n <= n_max for lambda > 0)."""
    if n_cutoff < 0:
        raise DomainError("n_cutoff must be non-negative")
    lam = params.lam_eff
    notes = []
    top = n_cutoff
    nmax = threshold = bound = None
    if lam > 0:
        nmax, note = n_max_info(params)
        if note:
            notes.append(note)
        if n_cutoff > nmax:
            notes.append(f"n_cutoff={n_cutoff} clipped to n_max={nmax}")
        top = min(n_cutoff, nmax)
        threshold = continuum_threshold(params)
        bound = e_max_bound(params)
    levels = []
    for n in range(top + 1):
        for l in allowed_l_values(n):
            e2 = energy_squared(params, n, l)
            E = math.sqrt(e2)
            levels.append(EnergyLevel(n, l, E, e2, degeneracy(l),
                                      embedded=threshold is not None and E >= threshold))
    if bound is not None:
        worst = max(lv.E_squared for lv in levels)
        if worst > bound:
            raise AssertionError(f"E^2={worst} exceeds E_max bound {bound}")
        if any(lv.embedded for lv in levels):
            notes.append("levels at or above the continuum threshold are flagged embedded")
    return SpectrumResult(params, levels, nmax, threshold, bound, notes)


@dataclass(frozen=True)
class ScanPoint:
    value: float
    E: float | None
    n_max: int | None
    threshold: float | None
    note: str = ""


def _scan_point(params: ModelParams, value: float, n: int, l: int) -> ScanPoint:
    lam = params.lam_eff
    nmax = n_max(params) if lam > 0 else None
    thr = continuum_threshold(params) if lam > 0 else None
    if nmax is not None and n > nmax:
        return ScanPoint(value, None, nmax, thr, f"level n={n} absent (n_max={nmax})")
    return ScanPoint(value, energy(params, n, l), nmax, thr)


def scan_lambda(params_base: ModelParams, lambdas, n: int, l: int) -> list[ScanPoint]:
    """Energy of level (n, l) across deformation parameters."""
    check_selection(n, l)
    return [_scan_point(params_base.with_lambda(float(lam)), float(lam), n, l)
            for lam in lambdas]


def scan_mass_ratio(params_base: ModelParams, ratios, n: int, l: int) -> list[ScanPoint]:
    """Energy of level (n, l) for M = ratio * omega at fixed omega and lambda."""
    check_selection(n, l)
    out = []
    for ratio in np.asarray(ratios, dtype=float):
        p = ModelParams(float(ratio) * params_base.omega, params_base.omega,
                        params_base.lam, params_base.lambda_eps)
        out.append(_scan_point(p, float(ratio), n, l))
    return out
