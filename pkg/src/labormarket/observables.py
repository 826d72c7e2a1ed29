"""Time series, histograms, long-run averages, sweeps and closed-form estimates."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .market import MarketParams, iterate
from .seeding import cell_seed


@dataclass
class SeriesObservables:
    U_series: np.ndarray
    sheet_count_series: np.ndarray | None = None
    application_count_series: np.ndarray | None = None

    def order_parameter(self, burn_in: int = 0) -> float:
        return order_parameter(self.U_series, burn_in)


@dataclass(frozen=True)
class Histogram:
    support: np.ndarray
    mass: np.ndarray

    def as_dict(self) -> dict[int, float]:
        return {int(k): float(m) for k, m in zip(self.support, self.mass)}


@dataclass
class SweepResult:
    parameter: str
    grid: np.ndarray
    employment_mean: np.ndarray
    employment_stderr: np.ndarray
    trials: int
    samples: np.ndarray = field(repr=False)
    seeds: np.ndarray = field(repr=False)


def unemployment_rate(s: Sequence[int]) -> float:
    s = np.asarray(s)
    if s.size == 0:
        raise ValueError("need at least one student")
    return float(np.count_nonzero(s == 0)) / s.size


def order_parameter(U_series: Sequence[float], burn_in: int = 0) -> float:
    U = np.asarray(U_series, dtype=float)[burn_in:]
    if U.size == 0:
        raise ValueError(f"no samples left after burn_in={burn_in}")
    # shifted mean: exact for constant series
    return float(U[0] + np.mean(U - U[0]))


def empirical_distribution(values: Sequence[int] | np.ndarray) -> Histogram:
    arr = np.asarray(values).ravel()
    if arr.size == 0:
        raise ValueError("empty series")
    support, counts = np.unique(arr, return_counts=True)
    return Histogram(support, counts / arr.size)


def analytic_pk(k: int, K: int, gamma: float) -> float:
    """Continuum estimate of the selection probability without history terms."""
    if not 1 <= k <= K:
        raise ValueError(f"company index {k} outside 1..{K}")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    if gamma == 0:
        return 1.0 / K
    # (g+1)/K * (1+k/K)^g / (2^(g+1) - 1), in logs for large gamma
    log_num = math.log(gamma + 1) - math.log(K) + gamma * math.log1p(k / K)
    log_den = (gamma + 1) * math.log(2) + math.log1p(-(2.0 ** -(gamma + 1)))
    return math.exp(log_num - log_den)


def analytic_p_empty(a: float, N: int, K: int, gamma: float, which: str = "lowest") -> float:
    """Probability that the top (``"highest"``) or bottom (``"lowest"``) company
    receives no entry sheet, in the large-system limit."""
    if a <= 0 or N <= 0 or K <= 0:
        raise ValueError("a, N and K must be positive")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    if which == "highest":
        return math.exp(-a * N * (gamma + 1) / (2 * K))
    if which == "lowest":
        # (g+1) / 2^(g+1) underflows to 0 for large gamma, as it should
        share = math.exp(math.log(gamma + 1) - (gamma + 1) * math.log(2))
        return math.exp(-a * N * share / K)
    raise ValueError(f"which must be 'highest' or 'lowest', got {which!r}")


def residual_employment(v: int, N: int) -> float:
    if N < 1 or not 0 <= v <= N:
        raise ValueError(f"need 0 <= v <= N, got v={v}, N={N}")
    return v / N


def simulate(
    params: MarketParams,
    rng: np.random.Generator | None = None,
    *,
    record_sheets: bool = False,
    record_applications: bool = False,
) -> SeriesObservables:
    U = np.empty(params.horizon)
    sheets = np.empty((params.horizon, params.K), dtype=np.int64) if record_sheets else None
    apps = (
        np.empty((params.horizon, params.N), dtype=np.int64) if record_applications else None
    )
    for t, out in enumerate(iterate(params, rng)):
        U[t] = out.unemployment
        if sheets is not None:
            sheets[t] = out.sheet_counts
        if apps is not None:
            apps[t] = out.applications.sheets_per_student()
    return SeriesObservables(U, sheets, apps)


def empty_fraction_series(sheet_count_series: np.ndarray) -> np.ndarray:
    """Per-year fraction of companies that received no entry sheet."""
    return np.mean(np.asarray(sheet_count_series) == 0, axis=1)


def expected_empty_fraction(P: np.ndarray, a: float, N: int) -> float:
    """Mean over companies of ``exp(-N min(1, a P_k))``."""
    p = np.minimum(1.0, a * np.asarray(P, dtype=float))
    return float(np.mean(np.exp(-N * p)))


def employment(params: MarketParams) -> float:
    """Long-run employment rate ``1 - U`` of one seeded run."""
    U = simulate(params).U_series
    return 1.0 - order_parameter(U, params.burn_in)


def _sweep(
    tag: str,
    base: MarketParams,
    grid: Sequence[float],
    make: Callable[[MarketParams, float], MarketParams],
    trials: int,
    workers: int,
) -> SweepResult:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("empty grid")
    seeds = np.array(
        [[cell_seed(base.seed, tag, i, j) for j in range(trials)] for i in range(grid.size)],
        dtype=np.uint64,
    )
    jobs = []
    for i, x in enumerate(grid):
        try:
            cell = make(base, float(x))
        except ValueError as exc:
            raise ValueError(f"{tag} cell {i} ({tag}={x}): {exc}") from exc
        jobs.extend(replace(cell, seed=int(seeds[i, j])) for j in range(trials))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(employment, jobs))
    else:
        values = [employment(p) for p in jobs]
    samples = np.array(values).reshape(grid.size, trials)
    mean = samples.mean(axis=1)
    if trials > 1:
        stderr = samples.std(axis=1, ddof=1) / np.sqrt(trials)
    else:
        stderr = np.zeros(grid.size)
    return SweepResult(tag, grid, mean, stderr, trials, samples, seeds)


def beveridge_sweep(
    base: MarketParams, alphas: Sequence[float], trials: int = 5, workers: int = 1
) -> SweepResult:
    """Employment rate against the job offer ratio.

    ``alpha`` is realized by the homogeneous quota ``v = round(alpha N / K)``
    at fixed ``N`` and ``K``; the grid stores the realized ratio.
    """
    realized = []
    for i, x in enumerate(alphas):
        try:
            realized.append(base.with_alpha(x).alpha)
        except ValueError as exc:
            raise ValueError(f"alpha cell {i} (alpha={x}): {exc}") from exc
    return _sweep("alpha", base, realized, lambda p, x: p.with_alpha(x), trials, workers)


def gamma_sweep(
    base: MarketParams, gammas: Sequence[float], trials: int = 5, workers: int = 1
) -> SweepResult:
    return _sweep("gamma", base, gammas, lambda p, g: replace(p, gamma=g), trials, workers)
