"""Closed-form radial wavefunctions, norms, nodes and mode functions.

Bound states (any lambda != 0):

    R(r) = N (1 + lam w^2 r^2)^p r^l 2F1(-n_r, 2p + l + n_r; l + 3/2; -lam w^2 r^2)

with p = p_minus for lam > 0 and p = p_plus for lam < 0.  At lam = 0 the
undeformed oscillator form r^l F(-n_r, l+3/2, M w r^2) exp(-M w r^2 / 2) is used.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from . import specfun
from .errors import (DivergenceError, DomainError, ResolutionError,
                     ThresholdError)
from .metric import HORIZON_MARGIN
from .model import ModelParams, QuantumNumbers, derive, nu
from .spectrum import continuum_threshold, energy_squared, n_max

NORM_RTOL = 1e-14
MAX_DOUBLINGS = 60


@dataclass(frozen=True)
class RadialState:
    params: ModelParams
    qn: QuantumNumbers
    kind: str  # "bound" | "continuum"
    E: float
    p_used: float | None = None
    norm_constant: float | None = None
    coefficients: np.ndarray = field(default=None, repr=False, compare=False)
    hyp_params: tuple = field(default=None, repr=False, compare=False)

    @property
    def r0(self) -> float:
        return derive(self.params, 0).r0

    def normalized(self) -> "RadialState":
        if self.kind != "bound":
            raise DomainError("continuum states are not normalizable")
        norm = norm_squared(self)
        return _replace_norm(self, 1.0 / math.sqrt(norm))


def _replace_norm(state, value):
    return RadialState(state.params, state.qn, state.kind, state.E, state.p_used,
                       value, state.coefficients, state.hyp_params)


def bound_state(params: ModelParams, n_r: int, l: int, m: int = 0, *,
                normalize: bool = True, enforce_cutoff: bool = True) -> RadialState:
    """Bound state (n_r, l); normalized to unit norm unless ``normalize=False``.

    With ``enforce_cutoff=False`` a lambda > 0 state above n_max can still be
    built (its norm integral then diverges), which is how the cutoff is probed.
    """
    qn = QuantumNumbers(n_r, l, m)
    lam = params.lam_eff
    if lam > 0 and enforce_cutoff and qn.n > n_max(params):
        energy_squared(params, qn.n, l)  # raises CutoffError
    if lam == 0:
        coef = specfun.kummer_coefficients(n_r, l + 1.5)
        p = None
        E = math.sqrt(energy_squared(params, qn.n, l))
        hyp = (-n_r, l + 1.5)
    else:
        p = derive(params, l).p_selected
        coef = specfun.gauss_coefficients(n_r, 2 * p + l + n_r, l + 1.5)
        hyp = (-n_r, 2 * p + l + n_r, l + 1.5)
        w2 = params.omega ** 2
        # closed form evaluated directly so states past the cutoff still get an E
        e2 = (params.mass ** 2 - lam * w2 * (4 * p * (qn.n + 1.5) + qn.n ** 2)
              + (1 + lam) * w2 * l * (l + 1))
        E = math.sqrt(e2) if e2 > 0 else float("nan")
    state = RadialState(params, qn, "bound", E, p, 1.0, coef, hyp)
    return state.normalized() if normalize else state


def continuum_state(params: ModelParams, E: float, l: int, m: int = 0) -> RadialState:
    """Unnormalized continuum solution of energy E (lambda > 0, E above threshold)."""
    lam = params.lam_eff
    if lam <= 0:
        raise DomainError("continuum solutions exist only for lambda > 0")
    w2 = params.omega ** 2
    lhs = E * E - (1 + lam) * w2 * l * (l + 1)
    rhs = continuum_threshold(params) ** 2
    if lhs < rhs * (1 - 1e-13):
        raise ThresholdError(f"E={E} lies below the continuum threshold for l={l}")
    # at the threshold itself rounding would leave a spurious tiny imaginary part
    v = 0.0 if lhs <= rhs * (1 + 1e-13) else min(nu(params, E * E, l), 0.0)
    p = derive(params, l).p_minus
    root = 1j * math.sqrt(-v)
    hyp = (p + l / 2 - root, p + l / 2 + root, l + 1.5)
    return RadialState(params, QuantumNumbers(0, l, m), "continuum", E, p, None, None, hyp)


def continuum_radial(params: ModelParams, E: float, l: int, r):
    return radial_unnormalized(continuum_state(params, E, l), r)


def _check_r(state, r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    r0 = state.r0
    if math.isfinite(r0) and np.any(r >= r0 * (1 - HORIZON_MARGIN)):
        raise DomainError(f"radius at or beyond the horizon r0={r0}")
    return r


def _prefactor(state, r):
    """Positive factor multiplying r^l times the hypergeometric part."""
    params = state.params
    if params.lam_eff == 0:
        return np.exp(-0.5 * params.mass * params.omega * r * r)
    k = params.lam_eff * params.omega ** 2
    return np.exp(state.p_used * np.log1p(k * r * r))


def _argument(state, r):
    params = state.params
    if params.lam_eff == 0:
        return params.mass * params.omega * r * r
    return -params.lam_eff * params.omega ** 2 * r * r


def polynomial_factor(state, r):
    """Hypergeometric polynomial part of a bound state at radius r."""
    return np.polynomial.polynomial.polyval(_argument(state, np.asarray(r, float)),
                                            state.coefficients)


def radial_unnormalized(state: RadialState, r):
    """Closed-form R(r) with the normalization constant set to 1."""
    r = _check_r(state, r)
    if state.kind == "bound":
        val = _prefactor(state, r) * r ** state.qn.l * polynomial_factor(state, r)
    else:
        a, b, c = state.hyp_params
        f = np.vectorize(lambda y: specfun.gauss_2f1(a, b, c, y).real, otypes=[float])
        val = _prefactor(state, r) * r ** state.qn.l * f(_argument(state, r))
    return float(val) if val.ndim == 0 else val


def radial(state: RadialState, r):
    """Normalized R(r) (bound states); continuum states are returned unnormalized."""
    N = 1.0 if state.norm_constant is None else state.norm_constant
    return N * radial_unnormalized(state, r)


def radial_derivatives(state: RadialState, r):
    """Analytic (R, R', R'') of a normalized bound state."""
    if state.kind != "bound":
        raise DomainError("analytic derivatives are provided for bound states only")
    r = _check_r(state, r)
    params, l = state.params, state.qn.l
    P = np.polynomial.Polynomial(state.coefficients)
    dP, d2P = P.deriv(1), P.deriv(2)
    if params.lam_eff == 0:
        g = params.mass * params.omega
        f1 = np.exp(-0.5 * g * r * r)
        f1p = -g * r * f1
        f1pp = (g * g * r * r - g) * f1
        z, dz, d2z = g * r * r, 2 * g * r, 2 * g
    else:
        k = params.lam_eff * params.omega ** 2
        p = state.p_used
        B = 1 + k * r * r
        f1 = np.exp(p * np.log1p(k * r * r))
        f1p = 2 * k * p * r * f1 / B
        f1pp = (2 * k * p / B + p * (p - 1) * (2 * k * r / B) ** 2) * f1
        z, dz, d2z = -k * r * r, -2 * k * r, -2 * k
    f2 = r ** l
    f2p = l * r ** (l - 1) if l >= 1 else np.zeros_like(r)
    f2pp = l * (l - 1) * r ** (l - 2) if l >= 2 else np.zeros_like(r)
    f3 = P(z)
    f3p = dP(z) * dz
    f3pp = d2P(z) * dz * dz + dP(z) * d2z
    N = state.norm_constant
    R = f1 * f2 * f3
    dR = f1p * f2 * f3 + f1 * f2p * f3 + f1 * f2 * f3p
    d2R = (f1pp * f2 * f3 + f1 * f2pp * f3 + f1 * f2 * f3pp
           + 2 * (f1p * f2p * f3 + f1p * f2 * f3p + f1 * f2p * f3p))
    return N * R, N * dR, N * d2R


def length_scale(params: ModelParams) -> float:
    """Oscillator length 1/sqrt(M w), capped by a fraction of the horizon."""
    ell = 1.0 / math.sqrt(params.mass * params.omega)
    r0 = derive(params, 0).r0
    return min(ell, r0 / 4) if math.isfinite(r0) else ell


def _quad(f, a, b, epsabs=0.0):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, _ = integrate.quad(f, a, b, epsabs=epsabs, epsrel=1e-13, limit=500)
        except integrate.IntegrationWarning as exc:
            raise DivergenceError(f"quadrature failed on [{a}, {b}]: {exc}") from None
    return val


def weighted_integral(params: ModelParams, f, r_start: float | None = None,
                      epsabs: float = 0.0) -> float:
    """Integral of f(r) r^2 (1 + lam w^2 r^2)^(-3/2) over the radial domain.

    lam < 0 uses r = r0 sin(theta), which turns the endpoint factor
    beta^(-3/2) into cos^(-2) and leaves a smooth integrand.  lam > 0 uses
    r = sinh(t)/sqrt(lam w^2), and the unbounded range is covered by
    doubling R_max until the increment falls below 1e-14 of the total.
    """
    lam, w = params.lam_eff, params.omega
    if lam < 0:
        r0 = 1.0 / (w * math.sqrt(-lam))

        def g(theta):
            s, c = math.sin(theta), math.cos(theta)
            if s >= 1.0 - 2 * HORIZON_MARGIN:
                return 0.0
            return f(r0 * s) * r0 ** 3 * s * s / (c * c)

        return _quad(g, 0.0, math.pi / 2, epsabs)

    if lam > 0:
        sk = w * math.sqrt(lam)

        def g(t):
            sh, ch = math.sinh(t), math.cosh(t)
            return f(sh / sk) * sh * sh / (ch * ch) / sk ** 3

        to_var = lambda r: math.asinh(sk * r)  # noqa: E731
    else:
        g = lambda r: f(r) * r * r  # noqa: E731
        to_var = lambda r: r  # noqa: E731

    R = r_start or 4.0 * length_scale(params)
    total = _quad(g, 0.0, to_var(R), epsabs)
    for _ in range(MAX_DOUBLINGS):
        inc = _quad(g, to_var(R), to_var(2 * R), epsabs)
        total += inc
        R *= 2
        if abs(inc) <= max(NORM_RTOL * abs(total), epsabs):
            return total
    raise DivergenceError(f"norm integral still growing at R_max={R:.3g}")


def inner_product(s1: RadialState, s2: RadialState) -> float:
    """Radial scalar product <R1, R2> under the weight r^2 beta^(-3/2)."""
    if s1.params != s2.params:
        raise DomainError("states belong to different models")
    r_start = 4.0 * length_scale(s1.params) * math.sqrt(1 + max(s1.qn.n, s2.qn.n))
    scale = math.sqrt(norm_squared(s1) * norm_squared(s2))
    return weighted_integral(
        s1.params, lambda r: radial(s1, r) * radial(s2, r), r_start, epsabs=1e-14 * scale)


def norm_squared(state: RadialState) -> float:
    """<R, R> of the state with its current normalization constant."""
    if state.kind != "bound":
        raise DomainError("continuum states are not square integrable")
    r_start = 4.0 * length_scale(state.params) * math.sqrt(1 + state.qn.n)
    return weighted_integral(state.params, lambda r: radial(state, r) ** 2, r_start)


def _node_grid(state, cells):
    params = state.params
    tau = (np.arange(1, cells) / cells)
    if params.lam_eff < 0:
        return state.r0 * np.sin(0.5 * np.pi * tau)
    return length_scale(params) * tau / (1 - tau)


def _sign_changes(values) -> int:
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def count_nodes(state: RadialState, grid_resolution: int = 1024) -> int:
    """Interior sign changes of R on (0, r0).

    The positive prefactor is dropped so that underflow far out cannot hide a
    sign; the grid is doubled until two successive counts agree.
    """
    if state.kind != "bound":
        raise DomainError("nodes are counted for bound states only")
    cells = max(int(grid_resolution), 16)
    prev = _sign_changes(polynomial_factor(state, _node_grid(state, cells)))
    while cells < 2 ** 20:
        cells *= 2
        cur = _sign_changes(polynomial_factor(state, _node_grid(state, cells)))
        if cur == prev:
            return cur
        prev = cur
    raise ResolutionError("node count did not stabilize within 2^20 cells")


def mode_function(state: RadialState, r, t: float, direction: str = "positive"):
    """Radial mode value e^(-/+ i E t) R(r) / sqrt(2E); angular factor excluded."""
    if direction not in ("positive", "negative"):
        raise ValueError("direction must be 'positive' or 'negative'")
    sign = -1 if direction == "positive" else 1
    phase = cmath.exp(sign * 1j * state.E * t) / math.sqrt(2 * state.E)
    return phase * np.asarray(radial(state, r))
