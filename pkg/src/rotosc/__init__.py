"""Spectra and mode functions of scalar fields on deformed (A)dS oscillator backgrounds."""

__version__ = "0.1.0"

from .errors import (BracketError, ConvergenceError, CutoffError, DivergenceError,
                     DomainError, ResolutionError, SelectionRuleError, ThresholdError)
from .model import (DerivedParams, ModelParams, QuantumNumbers, Regime,
                    allowed_l_values, degeneracy, derive, event_horizon, nu)
from .spectrum import (EnergyLevel, SpectrumResult, continuum_threshold,
                       discrete_spectrum, e_max_bound, energy, energy_squared,
                       n_max, scan_lambda, scan_mass_ratio)
from .radial import (RadialState, bound_state, continuum_state, count_nodes,
                     inner_product, mode_function, norm_squared, radial,
                     radial_unnormalized)
