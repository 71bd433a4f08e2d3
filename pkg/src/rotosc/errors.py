"""Exception types raised across the package."""


class DomainError(ValueError):
    """Input lies outside the region where a quantity is defined."""


class SelectionRuleError(DomainError):
    """Quantum numbers violate n = 2 n_r + l or the parity rule."""


class CutoffError(DomainError):
    """Requested level lies above the finite cutoff of a lambda > 0 model."""


class ThresholdError(DomainError):
    """Continuum state requested below the continuum threshold."""


class DivergenceError(RuntimeError):
    """A norm integral failed to converge (state is not square integrable)."""


class ConvergenceError(RuntimeError):
    """An iterative numerical procedure failed to converge."""


class BracketError(RuntimeError):
    """A root bracket does not enclose a sign change."""


class ResolutionError(RuntimeError):
    """Sampling grid too coarse to resolve the requested feature."""
