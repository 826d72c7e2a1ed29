"""Macroscopic unemployment/inflation maps and their coupling to the market.

The macro model tracks ``(U, pi, pi_e)``:

    o_t       = (Js + Gamma (m - pi_t)) / (U_t + d (1 - U_t))
    U_{t+1}   = U_t + xi (1 - U_t) - U_t o_t
    pi_{t+1}  = [mu/(1-mu) + c1 pi_t + (1-c1)(delta pi_t - (mu - (1-c2) U_t)/(1-mu))
                 - (1-c2)/(1-mu) * U_{t+1}] / delta
    pi_e,t+1  = c1 pi_t + (1 - c1) pi_e,t

The ``U_{t+1}`` inside the inflation map is always the macro prediction
computed from ``(U_t, pi_t)``, also in coupled mode where ``U_t`` itself comes
from the microscopic simulator.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .market import MarketParams, MarketState, make_rng, step


@dataclass(frozen=True)
class NeugartParams:
    xi: float = 0.18
    d: float = 0.01
    c1: float = 0.5
    c2: float = 0.5
    mu: float = 0.04
    Gamma: float = 0.5
    delta: float = 2.0
    m: float = 0.03
    Js: float = 0.0

    def __post_init__(self) -> None:
        for name in ("xi", "d", "c1", "c2"):
            val = getattr(self, name)
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {val}")
        if not 0.0 < self.mu < 1.0:
            raise ValueError(f"mu must lie in (0, 1), got {self.mu}")
        if self.delta == 0:
            raise ValueError("delta must be non-zero")
        if self.Gamma < 0 or self.Js < 0:
            raise ValueError("Gamma and Js must be non-negative")

    def at_fixed_point(self) -> "NeugartParams":
        """Copy with ``Js = Js*`` so that the fixed point is stationary."""
        U_star, _ = fixed_point(self)
        return replace(self, Js=js_star(self, U_star))


@dataclass(frozen=True)
class MacroState:
    U: float
    pi: float
    pi_e: float


def job_finding_rate(U: float, pi: float, params: NeugartParams) -> float:
    denom = U + params.d * (1.0 - U)
    if denom <= 0:
        raise ValueError(f"job seekers U + d(1-U) = {denom} must be positive")
    return (params.Js + params.Gamma * (params.m - pi)) / denom


def next_unemployment(U: float, pi: float, params: NeugartParams) -> float:
    """Unclamped macro prediction of next year's unemployment."""
    return U + params.xi * (1.0 - U) - U * job_finding_rate(U, pi, params)


def next_inflation(U: float, pi: float, params: NeugartParams) -> float:
    p = params
    wage_gap = (p.mu - (1.0 - p.c2) * U) / (1.0 - p.mu)
    first = p.mu / (1.0 - p.mu) + p.c1 * pi + (1.0 - p.c1) * (p.delta * pi - wage_gap)
    second = (1.0 - p.c2) / (1.0 - p.mu) * next_unemployment(U, pi, p)
    return (first - second) / p.delta


def macro_step(state: MacroState, params: NeugartParams) -> tuple[MacroState, bool]:
    """Advance one year.  Returns the new state and whether ``U`` was clamped."""
    U_raw = next_unemployment(state.U, state.pi, params)
    pi = next_inflation(state.U, state.pi, params)
    pi_e = params.c1 * state.pi + (1.0 - params.c1) * state.pi_e
    U = min(1.0, max(0.0, U_raw))
    return MacroState(U, pi, pi_e), U != U_raw


def fixed_point(params: NeugartParams) -> tuple[float, float]:
    """``(U*, pi*)`` with ``pi* = m``.

    Stationarity of the inflation map at ``U_{t+1} = U_t`` gives
    ``(delta - 1) pi = (mu - (1 - c2) U) / (1 - mu)``.
    """
    p = params
    if p.c2 == 1.0:
        raise ValueError("c2 = 1 leaves U* undefined")
    U_star = (p.mu - p.m * (p.delta - 1.0) * (1.0 - p.mu)) / (1.0 - p.c2)
    if not 0.0 < U_star < 1.0:
        raise ValueError(f"fixed point U* = {U_star} lies outside (0, 1)")
    return U_star, p.m


def js_star(params: NeugartParams, U_star: float) -> float:
    if not 0.0 < U_star < 1.0:
        raise ValueError(f"U* must lie in (0, 1), got {U_star}")
    p = params
    return p.xi * (1.0 - U_star) * (U_star + p.d * (1.0 - U_star)) / U_star


def stationary_inflation(U: float, params: NeugartParams) -> float:
    """Fixed point of the inflation map when ``U`` is held constant.

    The map is affine in ``pi`` for fixed ``U``; the macro unemployment
    predictor inside it contributes ``G0 + g1 * pi``.
    """
    p = params
    seekers = U + p.d * (1.0 - U)
    g1 = p.Gamma * U / seekers
    G0 = U + p.xi * (1.0 - U) - U * (p.Js + p.Gamma * p.m) / seekers
    num = p.c1 * p.mu + (1.0 - p.c1) * (1.0 - p.c2) * U - (1.0 - p.c2) * G0
    den = (1.0 - p.mu) * p.c1 * (p.delta - 1.0) + (1.0 - p.c2) * g1
    if den == 0:
        raise ValueError("inflation map has no isolated fixed point")
    return num / den


@dataclass
class Trajectory:
    U: np.ndarray
    pi: np.ndarray
    pi_e: np.ndarray
    clamp_events: int = 0

    def __len__(self) -> int:
        return len(self.U)

    def points(self) -> np.ndarray:
        return np.column_stack([self.U, self.pi])


def default_initial_state(params: NeugartParams) -> MacroState:
    U_star, _ = fixed_point(params)
    return MacroState(U_star + 0.05, 0.0, 0.0)


def run_macro(
    params: NeugartParams,
    initial: MacroState | None = None,
    T: int = 1000,
    burn_in: int = 0,
) -> Trajectory:
    """Iterate ``macro_step``; records the ``T`` states after ``burn_in`` steps."""
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    state = default_initial_state(params) if initial is None else initial
    U = np.empty(T)
    pi = np.empty(T)
    pi_e = np.empty(T)
    clamps = 0
    for t in range(burn_in + T):
        state, clamped = macro_step(state, params)
        clamps += clamped
        if t >= burn_in:
            j = t - burn_in
            U[j], pi[j], pi_e[j] = state.U, state.pi, state.pi_e
    return Trajectory(U, pi, pi_e, clamps)


def coupled_run(
    market: MarketParams,
    macro: NeugartParams,
    T: int | None = None,
    pi0: float | None = None,
    rng: np.random.Generator | None = None,
) -> Trajectory:
    """Drive the inflation map with the simulated unemployment series.

    Year ``t`` records ``(U_t, pi_t)`` where ``U_t`` is the microscopic
    unemployment rate; ``pi_{t+1}`` follows from the inflation map at
    ``(U_t, pi_t)``.  ``pi_e`` starts equal to ``pi0``.
    """
    T = market.horizon if T is None else T
    rng = make_rng(market.seed) if rng is None else rng
    pi = macro.m if pi0 is None else pi0
    pi_e = pi
    state = MarketState.initial(market)
    U_out = np.empty(T)
    pi_out = np.empty(T)
    pi_e_out = np.empty(T)
    for t in range(T):
        state, outcome = step(state, market, rng)
        U = outcome.unemployment
        U_out[t], pi_out[t], pi_e_out[t] = U, pi, pi_e
        pi, pi_e = next_inflation(U, pi, macro), macro.c1 * pi + (1.0 - macro.c1) * pi_e
    return Trajectory(U_out, pi_out, pi_e_out)
