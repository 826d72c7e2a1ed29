"""Probabilistic labor market for graduates with a Boltzmann-Gibbs choice
rule, coupled to a macroscopic unemployment/inflation map."""

__version__ = "0.1.0"

from .fit import FitResult, fit_offset_power_law, linear_fit_given_b
from .market import MarketParams, MarketState, YearOutcome, step
from .neugart import MacroState, NeugartParams, coupled_run, fixed_point, js_star, run_macro
from .observables import beveridge_sweep, gamma_sweep, order_parameter, simulate

__all__ = [
    "FitResult", "MacroState", "MarketParams", "MarketState", "NeugartParams", "YearOutcome",
    "beveridge_sweep", "coupled_run", "fit_offset_power_law", "fixed_point", "gamma_sweep",
    "js_star", "linear_fit_given_b", "order_parameter", "run_macro", "simulate", "step",
]
