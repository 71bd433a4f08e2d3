"""Deformed (anti-)de Sitter static metrics.

    ds^2 = (alpha/beta) dt^2 - (1/beta) (delta_ij + omega^2 x^i x^j / beta) dx^i dx^j

with alpha = 1 + (1+lam) omega^2 r^2 and beta = 1 + lam omega^2 r^2.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import ModelParams, event_horizon

HORIZON_MARGIN = 1e-12


def _check_radius(params: ModelParams, r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be non-negative")
    r0 = event_horizon(params)
    if np.isfinite(r0) and np.any(r > r0 * (1.0 - HORIZON_MARGIN)):
        raise DomainError(f"radius outside the horizon r0={r0}")
    return r


def alpha_beta(params: ModelParams, r):
    """Profile functions (alpha, beta) at radius ``r`` (scalar or array)."""
    r = _check_radius(params, r)
    w2r2 = (params.omega * r) ** 2
    lam = params.lam_eff
    alpha = 1.0 + (1.0 + lam) * w2r2
    beta = 1.0 + lam * w2r2
    if alpha.ndim == 0:
        return float(alpha), float(beta)
    return alpha, beta


@dataclass(frozen=True)
class MetricComponents:
    r: float
    alpha: float
    beta: float
    g_tt: float
    g_rr: float
    g_thth: float
    g_phph: float  # at sin(theta) = 1
    det_g: float  # r^4 sin^2(theta) stripped

    def as_matrix(self, theta: float = np.pi / 2) -> np.ndarray:
        return np.diag([self.g_tt, self.g_rr, self.g_thth, self.g_phph * np.sin(theta) ** 2])


def metric_spherical(params: ModelParams, r: float) -> MetricComponents:
    alpha, beta = alpha_beta(params, r)
    return MetricComponents(
        r=float(r),
        alpha=alpha,
        beta=beta,
        g_tt=alpha / beta,
        g_rr=-alpha / beta ** 2,
        g_thth=-(r ** 2) / beta,
        g_phph=-(r ** 2) / beta,
        det_g=-(alpha ** 2) / beta ** 5,
    )


def metric_cartesian(params: ModelParams, x) -> np.ndarray:
    """Full 4x4 metric at Cartesian point ``x`` (coordinates t, x1, x2, x3)."""
    x = np.asarray(x, dtype=float)
    alpha, beta = alpha_beta(params, np.linalg.norm(x))
    g = np.zeros((4, 4))
    g[0, 0] = alpha / beta
    g[1:, 1:] = -(np.eye(3) + params.omega ** 2 * np.outer(x, x) / beta) / beta
    return g


def spatial_inverse(params: ModelParams, x) -> np.ndarray:
    """Inverse of the spatial block by Sherman-Morrison.

    The block is -(I + c x x^T)/beta with c = omega^2/beta and
    1 + c r^2 = alpha/beta, hence the inverse -beta (I - omega^2 x x^T/alpha).
    """
    x = np.asarray(x, dtype=float)
    alpha, beta = alpha_beta(params, np.linalg.norm(x))
    return -beta * (np.eye(3) - params.omega ** 2 * np.outer(x, x) / alpha)


def spatial_determinant(params: ModelParams, r) -> float:
    """det of the Cartesian spatial block, equal to -alpha/beta^4."""
    alpha, beta = alpha_beta(params, r)
    return -alpha / beta ** 4


def metric_determinant(params: ModelParams, r) -> float:
    alpha, beta = alpha_beta(params, r)
    return -(alpha ** 2) / beta ** 5


def radial_weight(params: ModelParams, r):
    """Radial measure r^2 sqrt(-g) g^00 of the Klein-Gordon scalar product.

    sqrt(-g) = alpha / beta^(5/2) and g^00 = beta/alpha, so the weight
    reduces to r^2 beta^(-3/2).
    """
    alpha, beta = alpha_beta(params, r)
    r = np.asarray(r, dtype=float)
    sqrt_minus_g = np.sqrt(-metric_determinant(params, r))
    return r ** 2 * sqrt_minus_g * beta / alpha


def spherical_jacobian(r: float, theta: float, phi: float) -> np.ndarray:
    """d(t, x, y, z) / d(t, r, theta, phi)."""
    st, ct, sp, cp = np.sin(theta), np.cos(theta), np.sin(phi), np.cos(phi)
    J = np.zeros((4, 4))
    J[0, 0] = 1.0
    J[1:, 1] = [st * cp, st * sp, ct]
    J[1:, 2] = [r * ct * cp, r * ct * sp, -r * st]
    J[1:, 3] = [-r * st * sp, r * st * cp, 0.0]
    return J
