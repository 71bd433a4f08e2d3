"""Model parameters, quantum numbers and derived scalars.

A model of the family is fixed by a mass ``M``, a frequency ``omega`` and
the deformation parameter ``lam``.  Everything else in the package is built
on the quantities computed here.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import DomainError, SelectionRuleError

LAMBDA_EPS = 1e-12


class Regime(enum.Enum):
    DE_SITTER_LIKE = "deSitterLike"
    MINKOWSKI_LIKE = "minkowskiLike"
    ANTI_DE_SITTER_LIKE = "antiDeSitterLike"
    EXACT_ADS = "exactAdS"


@dataclass(frozen=True)
class ModelParams:
    """Physical triple (M, omega, lambda) in natural units.

    ``lambda_eps`` sets the half-width of the window around zero that is
    treated as the undeformed (lambda = 0) branch.
    """

    mass: float
    omega: float
    lam: float
    lambda_eps: float = field(default=LAMBDA_EPS, compare=False)

    def __post_init__(self):
        for name in ("mass", "omega", "lam"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        if self.omega <= 0:
            raise DomainError(f"omega must be positive, got {self.omega}")

    @property
    def is_flat(self) -> bool:
        """True when lambda falls in the snapping window around zero."""
        return abs(self.lam) < self.lambda_eps

    @property
    def lam_eff(self) -> float:
        return 0.0 if self.is_flat else self.lam

    @property
    def regime(self) -> Regime:
        lam = self.lam_eff
        if lam > 0:
            return Regime.DE_SITTER_LIKE
        if lam == 0:
            return Regime.MINKOWSKI_LIKE
        if abs(lam + 1.0) <= self.lambda_eps:
            return Regime.EXACT_ADS
        return Regime.ANTI_DE_SITTER_LIKE

    def with_lambda(self, lam: float) -> "ModelParams":
        return ModelParams(self.mass, self.omega, lam, self.lambda_eps)

    def as_dict(self) -> dict:
        return {"mass": self.mass, "omega": self.omega, "lambda": self.lam}


@dataclass(frozen=True)
class QuantumNumbers:
    n_r: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.n_r < 0 or self.l < 0:
            raise SelectionRuleError(f"n_r and l must be non-negative: {self}")
        if abs(self.m) > self.l:
            raise SelectionRuleError(f"|m| must not exceed l: {self}")

    @property
    def n(self) -> int:
        return 2 * self.n_r + self.l

    @classmethod
    def from_main(cls, n: int, l: int, m: int = 0) -> "QuantumNumbers":
        check_selection(n, l)
        return cls((n - l) // 2, l, m)


def check_selection(n: int, l: int) -> None:
    if n < 0 or l < 0 or l > n or (n - l) % 2:
        raise SelectionRuleError(
            f"(n={n}, l={l}) violates 0 <= l <= n with equal parity"
        )


def allowed_l_values(n: int) -> list[int]:
    """Angular momenta compatible with main quantum number ``n``, ascending."""
    if n < 0:
        raise DomainError("n must be non-negative")
    return list(range(n % 2, n + 1, 2))


def degeneracy(l: int) -> int:
    return 2 * l + 1


def p_roots(mu: float) -> tuple[float, float]:
    """Roots (p_plus, p_minus) of 4 p^2 - 6 p - mu^2 = 0.

    The small root comes from Vieta's product so it keeps full relative
    accuracy when mu is small.
    """
    p_plus = 0.75 * (1.0 + math.hypot(1.0, 2.0 * mu / 3.0))
    p_minus = -mu * mu / (4.0 * p_plus)
    return p_plus, p_minus


def event_horizon(params: ModelParams) -> float:
    lam = params.lam_eff
    if lam < 0:
        return 1.0 / (params.omega * math.sqrt(-lam))
    return math.inf


@dataclass(frozen=True)
class DerivedParams:
    l: int
    s: float
    r0: float
    mu: float | None = None
    p_plus: float | None = None
    p_minus: float | None = None
    p_selected: float | None = None
    threshold: float | None = None


def derive(params: ModelParams, l: int) -> DerivedParams:
    """Per-(model, l) scalars; the lambda = 0 branch leaves mu and p unset."""
    if l < 0:
        raise DomainError("l must be non-negative")
    lam = params.lam_eff
    r0 = event_horizon(params)
    if lam == 0:
        return DerivedParams(l=l, s=l / 2, r0=r0)
    mu = params.mass / (lam * params.omega)
    p_plus, p_minus = p_roots(mu)
    threshold = params.mass * math.sqrt(1.0 + 1.0 / lam) if lam > 0 else None
    return DerivedParams(
        l=l,
        s=l / 2,
        r0=r0,
        mu=mu,
        p_plus=p_plus,
        p_minus=p_minus,
        p_selected=p_minus if lam > 0 else p_plus,
        threshold=threshold,
    )


def epsilon(params: ModelParams, energy: float) -> float:
    lam = params.lam_eff
    if lam == 0:
        raise DomainError("epsilon is undefined for lambda = 0")
    return energy / (lam * params.omega)


def nu(params: ModelParams, energy_squared: float, l: int) -> float:
    """Spectral parameter nu at energy E (passed as E^2) and angular momentum l.

    Written in the form ``[(1+lam) M^2/lam - E^2 + (1+lam) w^2 l(l+1)] / (4 lam w^2)``,
    algebraically equal to the definition through mu and epsilon.
    """
    lam = params.lam_eff
    if lam == 0:
        raise DomainError("nu is undefined for lambda = 0")
    w2 = params.omega ** 2
    num = (1.0 + lam) * params.mass ** 2 / lam - energy_squared + (1.0 + lam) * w2 * l * (l + 1)
    return num / (4.0 * lam * w2)


def nu_from_reduced(mu: float, eps: float, lam: float, l: int) -> float:
    """nu written directly in the reduced variables mu, epsilon."""
    return 0.25 * ((1.0 + lam) * mu * mu - lam * eps * eps + (1.0 + lam) / lam * l * (l + 1))
