"""Independent numerical checks of the closed-form spectrum and states.

Three routes, none of which uses the closed-form energies:

* ``ode_residual`` plugs a closed-form state into the radial equation
      beta R'' + (beta + 1)/r R' - alpha l(l+1)/r^2 R + (E^2 - alpha M^2/beta) R = 0
* ``fd_eigensolve`` discretizes the self-adjoint form of that equation.
* ``shoot_eigenvalue`` integrates it from both ends and matches.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import integrate, optimize
from scipy.linalg import eigh_tridiagonal

from .errors import BracketError, ConvergenceError, DomainError
from .model import ModelParams, derive, nu
from .radial import RadialState, length_scale, radial, radial_derivatives

D1_6 = np.array([-1, 9, -45, 0, 45, -9, 1]) / 60.0
D2_6 = np.array([2, -27, 270, -490, 270, -27, 2]) / 180.0


@dataclass(frozen=True)
class GridSpec:
    """Discretization settings for the finite-difference oracle.

    The grid is uniform in the Liouville variable x = int dr / sqrt(beta),
    which for lam < 0 clusters points like (1 - y)^(-1/2) toward the horizon
    and for lam > 0 turns power-law tails into exponential ones.
    """

    n_points: int | None = None
    points_per_length: int = 200
    r_max: float | None = None
    refinements: int = 3
    truncation_rtol: float = 1e-8

    def __post_init__(self):
        if self.n_points is not None and self.n_points < 64:
            raise DomainError("n_points must be at least 64")
        if self.refinements < 2:
            raise DomainError("at least two grids are needed for extrapolation")


# --- coefficient functions of the radial equation ---------------------------

def _coefficients(params: ModelParams, r):
    w2 = params.omega ** 2
    lam = params.lam_eff
    alpha = 1 + (1 + lam) * w2 * r * r
    beta = 1 + lam * w2 * r * r
    return alpha, beta


def kg_terms(params: ModelParams, l: int, E_squared: float, r, R, dR, d2R):
    """The five terms of the radial Klein-Gordon equation, stacked."""
    alpha, beta = _coefficients(params, r)
    M2 = params.mass ** 2
    return np.stack([
        beta * d2R,
        (beta + 1) / r * dR,
        -alpha * l * (l + 1) / (r * r) * R,
        E_squared * R,
        -alpha / beta * M2 * R,
    ])


def default_residual_grid(state: RadialState, n_points: int = 200) -> np.ndarray:
    ell = length_scale(state.params)
    r0 = state.r0
    r_hi = 4 * ell * math.sqrt(state.qn.n + 2)
    if math.isfinite(r0):
        r_hi = min(r_hi, 0.9 * r0)
    return np.linspace(0.05 * ell, r_hi, n_points)


def ode_residual(state: RadialState, E_squared: float, grid=None, *,
                 method: str = "fd6", step: float | None = None) -> float:
    """Max over the grid of |sum of terms| / max |term| for the radial equation.

    ``method='fd6'`` differentiates the closed form with 7-point centered
    stencils; ``method='analytic'`` uses exact derivatives (bound states).
    """
    r = default_residual_grid(state) if grid is None else np.asarray(grid, float)
    params = state.params
    if method == "analytic":
        R, dR, d2R = radial_derivatives(state, r)
    elif method == "fd6":
        if step is None:
            # step follows the local decay length so the stencil error stays uniform
            ell = length_scale(params)
            kap2 = np.abs(_kappa2(params, state.qn.l, E_squared, r))
            h = 0.02 / np.sqrt(kap2 + 1.0 / ell ** 2)
        else:
            h = np.full_like(r, step)
        if np.any(r - 3 * h <= 0) or (math.isfinite(state.r0) and np.any(r + 3 * h >= state.r0)):
            raise DomainError("residual grid too close to a singular endpoint")
        offsets = np.arange(-3, 4)[:, None] * h[None, :]
        samples = np.asarray(radial(state, r[None, :] + offsets))
        R = samples[3]
        dR = D1_6 @ samples / h
        d2R = D2_6 @ samples / (h * h)
    else:
        raise ValueError(f"unknown method {method!r}")
    terms = kg_terms(params, state.qn.l, E_squared, r, R, dR, d2R)
    scale = np.max(np.abs(terms), axis=0)
    return float(np.max(np.abs(terms.sum(axis=0)) / scale))


# --- self-adjointness --------------------------------------------------------

def weight_identity_check(params: ModelParams, sample_count: int = 1000, seed: int = 0,
                          radii=None) -> float:
    """Max relative violation of (w beta)' = w (beta + 1)/r with w = r^2 beta^(-3/2).

    The derivative is taken by complex-step differentiation, which is exact
    to rounding and independent of the algebra behind the identity.
    """
    k = params.lam_eff * params.omega ** 2
    if radii is None:
        rng = np.random.default_rng(seed)
        r0 = derive(params, 0).r0
        top = 0.99 * r0 if math.isfinite(r0) else 10 * length_scale(params)
        radii = rng.uniform(1e-3 * top, top, sample_count)
    r = np.asarray(radii, float)
    h = 1e-30 * np.maximum(r, 1.0)
    rc = r + 1j * h
    wbeta = rc ** 2 * (1 + k * rc ** 2) ** -0.5
    lhs = wbeta.imag / h
    beta = 1 + k * r * r
    rhs = r * r * beta ** -1.5 * (beta + 1) / r
    return float(np.max(np.abs(lhs - rhs) / np.abs(rhs)))


# --- finite-difference eigensolver ------------------------------------------

def _liouville_map(params: ModelParams, x):
    """r(x) and beta(x) for x = int_0^r dr / sqrt(beta)."""
    k = params.lam_eff * params.omega ** 2
    if k < 0:
        s = math.sqrt(-k)
        return np.sin(s * x) / s, np.cos(s * x) ** 2
    if k > 0:
        s = math.sqrt(k)
        return np.sinh(s * x) / s, np.cosh(s * x) ** 2
    return x, np.ones_like(x)


def _x_of_r(params: ModelParams, r: float) -> float:
    k = params.lam_eff * params.omega ** 2
    if k > 0:
        return math.asinh(math.sqrt(k) * r) / math.sqrt(k)
    if k < 0:
        return math.asin(min(1.0, math.sqrt(-k) * r)) / math.sqrt(-k)
    return r


def liouville_potential(params: ModelParams, l: int, x):
    """Potential of -u'' + V u = E^2 u with u = r beta^(-1/2) R.

    The Liouville transformation of -(w beta R')' + w q R = E^2 w R gives
    V = alpha l(l+1)/r^2 + (alpha M^2 - 2 lam w^2)/beta.
    """
    r, beta = _liouville_map(params, x)
    alpha = 1 + (1 + params.lam_eff) * params.omega ** 2 * r * r
    return (alpha * l * (l + 1) / (r * r)
            + (alpha * params.mass ** 2 - 2 * params.lam_eff * params.omega ** 2) / beta)


def continuum_floor(params: ModelParams, l: int) -> float:
    """Limit of the Liouville potential at infinity (lam > 0), else inf."""
    lam = params.lam_eff
    if lam <= 0:
        return math.inf
    return (1 + 1 / lam) * params.mass ** 2 + (1 + lam) * params.omega ** 2 * l * (l + 1)


def _fd_solve(params, l, k, x_max, n_cells, vectors=False):
    h = x_max / n_cells
    x = h * np.arange(1, n_cells)
    d = 2.0 / h ** 2 + liouville_potential(params, l, x)
    e = np.full(n_cells - 2, -1.0 / h ** 2)
    out = eigh_tridiagonal(d, e, eigvals_only=not vectors, select="i",
                           select_range=(0, k - 1))
    return (x, h, *out) if vectors else out


def _converged_box(params, l, k, r_max, h, floor, rtol, max_doublings=100):
    """Double R_max until every eigenvalue below the continuum floor is stable."""
    def solve(r):
        x = _x_of_r(params, r)
        return _fd_solve(params, l, k, x, max(64, int(x / h)))

    prev = solve(r_max)
    for _ in range(max_doublings):
        r_max *= 2
        cur = solve(r_max)
        mask = cur < floor * (1 - 1e-9)
        same_count = np.count_nonzero(mask) == np.count_nonzero(prev < floor * (1 - 1e-9))
        if (mask.all() or not math.isfinite(floor)) and same_count and np.all(
                np.abs(cur - prev)[mask] <= rtol * np.abs(cur[mask])):
            return r_max
        prev = cur
    if np.any(prev < floor):
        return r_max
    raise ConvergenceError("far boundary did not converge")


@dataclass
class FDResult:
    eigenvalues: np.ndarray  # Richardson-extrapolated E^2
    raw: list  # per-grid E^2, coarsest first
    cells: list
    x_max: float
    r_max: float
    below_continuum: np.ndarray
    r: np.ndarray = field(repr=False)
    R: np.ndarray = field(repr=False)  # columns: normalized eigenvectors on finest grid


def fd_raw_eigenvalues(params: ModelParams, l: int, k: int, n_cells: int,
                       x_max: float) -> np.ndarray:
    """Lowest k E^2 of the plain second-order discretization (no extrapolation)."""
    return _fd_solve(params, l, k, x_max, n_cells)


def fd_eigensolve(params: ModelParams, l: int, k: int, grid: GridSpec | None = None) -> FDResult:
    """Lowest k eigenvalues E^2 of the radial problem by finite differences.

    Successive grids halve h; consecutive pairs are Richardson extrapolated
    assuming O(h^2) error, and the last two extrapolants must agree to
    10 x ``truncation_rtol``.
    """
    grid = grid or GridSpec()
    ell = length_scale(params)
    r0 = derive(params, 0).r0
    floor = continuum_floor(params, l)

    def cells_for(x_max):
        if grid.n_points is not None:
            return grid.n_points
        return max(64, int(math.ceil(grid.points_per_length * x_max / ell)))

    if math.isfinite(r0):
        r_max = r0
        x_max = _x_of_r(params, r0)
    else:
        r_max = grid.r_max or 6 * ell * math.sqrt(k + l + 2)
        if grid.r_max is None:
            r_max = _converged_box(params, l, k, r_max, ell / grid.points_per_length,
                                   floor, grid.truncation_rtol)
        x_max = _x_of_r(params, r_max)

    n0 = cells_for(x_max)
    cells = [n0 * 2 ** j for j in range(grid.refinements)]
    raw = [_fd_solve(params, l, k, x_max, n) for n in cells[:-1]]
    x, h, vals, vecs = _fd_solve(params, l, k, x_max, cells[-1], vectors=True)
    raw.append(vals)
    ext = [(4 * raw[j + 1] - raw[j]) / 3 for j in range(len(raw) - 1)]
    best = ext[-1]
    if len(ext) >= 2:
        drift = np.abs(ext[-1] - ext[-2]) / np.abs(ext[-1])
        mask = best < floor
        if np.any(drift[mask] > 10 * grid.truncation_rtol):
            raise ConvergenceError(f"eigenvalue drift {drift.max():.2e} across refinement")

    r, beta = _liouville_map(params, x)
    R = vecs * (np.sqrt(beta) / r)[:, None] / math.sqrt(h)
    for j in range(R.shape[1]):
        first = R[:, j][np.abs(R[:, j]) > 1e-3 * np.abs(R[:, j]).max()][0]
        if first < 0:
            R[:, j] *= -1
    return FDResult(best, raw, cells, x_max, r_max, best < floor, r, R)


# --- shooting ---------------------------------------------------------------

def _rhs(params, l, e2):
    """Radial equation as a first-order system in r for (R, R')."""
    w2 = params.omega ** 2
    lam = params.lam_eff
    M2 = params.mass ** 2
    L = l * (l + 1)

    def f(r, y):
        R, P = y
        rr = r * r
        alpha = 1 + (1 + lam) * w2 * rr
        beta = 1 + lam * w2 * rr
        d2 = (-(beta + 1) / r * P + alpha * L / rr * R - (e2 - alpha * M2 / beta) * R) / beta
        return [P, d2]

    return f


def _rhs_log(params, l, e2):
    """Same equation in rho = ln r for (R, Q = r R'), suited to power-law tails."""
    w2 = params.omega ** 2
    lam = params.lam_eff
    M2 = params.mass ** 2
    L = l * (l + 1)

    def f(rho, y):
        R, Q = y
        rr = math.exp(2 * rho)
        alpha = 1 + (1 + lam) * w2 * rr
        beta = 1 + lam * w2 * rr
        r2d2 = (-(beta + 1) * Q + alpha * L * R - rr * (e2 - alpha * M2 / beta) * R) / beta
        return [Q, Q + r2d2]

    return f


def _kappa2(params, l, e2, r):
    """Local decay rate squared of the radial equation (WKB, first-derivative term dropped)."""
    alpha, beta = _coefficients(params, r)
    return (alpha * params.mass ** 2 / beta + alpha * l * (l + 1) / (r * r) - e2) / beta


def _turning_point(params, l, e2, r_lo, r_hi):
    r = np.geomspace(r_lo, r_hi, 4000)
    k2 = _kappa2(params, l, e2, r)
    allowed = np.nonzero(k2 < 0)[0]
    if allowed.size == 0:
        # below the potential minimum: any point is a valid match point
        return r[int(np.argmin(k2))]
    i = allowed[-1]
    if i + 1 >= r.size:
        return r[-1]
    return optimize.brentq(lambda t: _kappa2(params, l, e2, t), r[i], r[i + 1])


@dataclass
class ShotResult:
    E_squared: float
    nodes: int
    r_match: float
    r_far: float
    evaluations: int


def _integrate(f, a, b, y0, samples=400):
    t_eval = np.linspace(a, b, samples)
    sol = integrate.solve_ivp(f, (a, b), y0, method="DOP853", rtol=1e-12,
                              atol=1e-300, t_eval=t_eval)
    if not sol.success:
        raise ConvergenceError(f"ODE integration failed: {sol.message}")
    return sol.y


def _shoot(params, l, e2, ell, r0):
    """Outward and inward solutions as (R, R') samples ending at the match point."""
    lam = params.lam_eff
    k = lam * params.omega ** 2
    r_s = 1e-3 * ell
    # Frobenius start R = r^l (1 + c r^2)
    c1 = -(e2 - params.mass ** 2 + k * l * l
           - (1 + lam) * params.omega ** 2 * l * (l + 1)) / (4 * l + 6)
    q_out = l + 2 * c1 * r_s ** 2 / (1 + c1 * r_s * r_s)
    r_top = 0.999 * r0 if math.isfinite(r0) else 1e4 * ell
    r_m = _turning_point(params, l, e2, r_s, r_top)

    if lam < 0:
        p_plus = derive(params, l).p_plus
        beta_s = max(1e-4, math.exp(-150 / p_plus))
        r_far = r0 * math.sqrt(1 - beta_s)
        if r_m >= r_far:
            r_m = 0.5 * (r_m + r_far)
        inn = _integrate(_rhs(params, l, e2), r_far, r_m,
                         [1.0, 2 * p_plus * k * r_far / beta_s])
    else:
        # march outward until the WKB exponent reaches 18 e-folds
        acc, rho, rho_m = 0.0, math.log(r_m), math.log(r_m)
        while acc < 18:
            mid = math.exp(rho + 0.025)
            acc += math.sqrt(max(_kappa2(params, l, e2, mid), 0.0)) * mid * 0.05
            rho += 0.05
            if rho - rho_m > 700 or rho > 340:
                raise BracketError("no decaying region: trial energy too close to the continuum")
        r_far = math.exp(rho)
        if lam > 0:
            v = nu(params, e2, l)
            if v <= 0:
                raise BracketError("trial energy lies in the continuum")
            q_in = -2 * math.sqrt(v)
        else:
            q_in = -r_far * math.sqrt(_kappa2(params, l, e2, r_far))
        inn = _integrate(_rhs_log(params, l, e2), rho, rho_m, [1.0, q_in])
        inn[1] /= np.exp(np.linspace(rho, rho_m, inn.shape[1]))
    out = _integrate(_rhs_log(params, l, e2), math.log(r_s), math.log(r_m), [1.0, q_out])
    out[1] /= np.exp(np.linspace(math.log(r_s), math.log(r_m), out.shape[1]))
    return out, inn, r_m, r_far


def _mismatch(out, inn, ell):
    Ro, Po = out[:, -1]
    Ri, Pi = inn[:, -1]
    return ell * (Ro * Pi - Po * Ri) / (math.hypot(Ro, ell * Po) * math.hypot(Ri, ell * Pi))


def shoot_eigenvalue(params: ModelParams, l: int, n_r: int, bracket) -> ShotResult:
    """E^2 of the state with n_r nodes inside ``bracket`` by two-sided shooting.

    The outward solution starts from the Frobenius series at r ~ 0, the
    inward one from the decaying branch (beta^p_plus at the horizon for
    lam < 0, power or Gaussian decay otherwise); the normalized Wronskian at
    the outer turning point is driven to zero with Brent's method.
    """
    lo, hi = map(float, bracket)
    floor = continuum_floor(params, l)
    hi = min(hi, floor * (1 - 1e-9))
    if not lo < hi:
        raise BracketError("empty bracket")
    ell = length_scale(params)
    r0 = derive(params, 0).r0
    count = [0]

    def g(e2):
        count[0] += 1
        out, inn, _, _ = _shoot(params, l, e2, ell, r0)
        return _mismatch(out, inn, ell)

    g_lo = g(lo)
    while True:
        try:
            g_hi = g(hi)
            break
        except BracketError:
            # too close to the continuum for a decaying tail; back off from the floor
            hi = floor - 10 * (floor - hi)
            if not lo < hi:
                raise
    if g_lo * g_hi > 0:
        raise BracketError(f"no sign change of the matching function on [{lo}, {hi}]")
    e2 = optimize.brentq(g, lo, hi, xtol=1e-13 * abs(hi), rtol=1e-15, maxiter=200)
    out, inn, r_m, r_far = _shoot(params, l, e2, ell, r0)
    sign = math.copysign(1.0, out[0, -1] * inn[0, -1])
    nodes = _count_changes(np.concatenate([out[0], sign * inn[0][::-1]]))
    if nodes != n_r:
        raise BracketError(f"converged state has {nodes} nodes, expected {n_r}")
    return ShotResult(e2, nodes, r_m, r_far, count[0])


def _count_changes(values):
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def seeded_bracket(e2: float, width: float = 0.05) -> tuple[float, float]:
    return e2 * (1 - width), e2 * (1 + width)


# --- reporting ---------------------------------------------------------------

@dataclass
class Check:
    name: str
    closed_form: float | None
    oracle: float | None
    error: float
    tolerance: float
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = bool(self.error <= self.tolerance)


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    def add(self, name, closed_form, oracle, error, tolerance) -> Check:
        c = Check(name, closed_form, oracle, float(error), float(tolerance))
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"passed": self.passed,
                "n_checks": len(self.checks),
                "n_failed": len(self.failures()),
                "checks": [asdict(c) for c in self.checks]}


def relative_error(a: float, b: float) -> float:
    return abs(a - b) / abs(b)
