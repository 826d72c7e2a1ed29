"""One business year of the probabilistic graduate labor market.

Companies ``k = 1..K`` carry a static rank ``eps_k = 1 + k/K`` and a fixed
quota ``v*_k``.  Each year every company gets a local energy

    E_k = -gamma * ln(eps_k) + sum_l beta_l * h_k(t - l)

where ``h_k = |v*_k - v_k| / V`` is last years' normalized mismatch between
applicants and quota.  Students post entry sheets to company ``k`` with
probability ``min(1, a * P_k)`` where ``P_k`` is the Boltzmann-Gibbs weight
``exp(-E_k) / Z``.  Over-subscribed companies draw their winners uniformly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence

import numpy as np


@dataclass(frozen=True)
class MarketParams:
    """Microscopic model constants.

    ``quotas`` overrides the homogeneous quota ``v`` when given.  The job
    offer ratio ``alpha = V / N`` is always derived from quotas and ``N``.
    """

    K: int = 50
    N: int = 500
    v: int = 10
    quotas: tuple[int, ...] | None = None
    a: float = 1.0
    gamma: float = 1.0
    beta_history: tuple[float, ...] = (1.0,)
    horizon: int = 1000
    burn_in: int = 0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.quotas is not None:
            object.__setattr__(self, "quotas", tuple(int(q) for q in self.quotas))
            if len(self.quotas) != self.K:
                raise ValueError(f"expected {self.K} quotas, got {len(self.quotas)}")
            if any(q < 0 for q in self.quotas):
                raise ValueError("quotas must be non-negative")
        elif self.v < 0:
            raise ValueError(f"v must be non-negative, got {self.v}")
        if self.V <= 0:
            raise ValueError("total vacancies V must be positive")
        if not np.isfinite(self.a) or self.a < 0:
            raise ValueError(f"a must be a finite non-negative number, got {self.a}")
        if not np.isfinite(self.gamma) or self.gamma < 0:
            raise ValueError(f"gamma must be finite and >= 0, got {self.gamma}")
        object.__setattr__(self, "beta_history", tuple(float(b) for b in self.beta_history))
        if len(self.beta_history) < 1:
            raise ValueError("beta_history needs at least one weight")
        if self.horizon < 1:
            raise ValueError(f"horizon must be >= 1, got {self.horizon}")
        if not 0 <= self.burn_in < self.horizon:
            raise ValueError(f"burn_in must lie in [0, horizon), got {self.burn_in}")

    @property
    def quota_array(self) -> np.ndarray:
        if self.quotas is not None:
            return np.asarray(self.quotas, dtype=np.int64)
        return np.full(self.K, self.v, dtype=np.int64)

    @property
    def V(self) -> int:
        return int(self.quota_array.sum())

    @property
    def alpha(self) -> float:
        return self.V / self.N

    @property
    def tau(self) -> int:
        return len(self.beta_history)

    def with_alpha(self, alpha: float) -> "MarketParams":
        """Homogeneous-quota copy with ``v = round(alpha * N / K)``."""
        v = int(round(alpha * self.N / self.K))
        if v < 1:
            raise ValueError(f"alpha={alpha} gives a zero quota for N={self.N}, K={self.K}")
        return replace(self, v=v, quotas=None)


@dataclass
class MarketState:
    """Market state at the start of business year ``t``.

    ``mismatch_history[l]`` holds ``h_k(t - 1 - l)``, newest first.
    """

    t: int
    sheet_counts: np.ndarray
    mismatch_history: np.ndarray
    acceptance_counts: np.ndarray

    @classmethod
    def initial(cls, params: MarketParams) -> "MarketState":
        # no market history before the first year
        return cls(
            t=0,
            sheet_counts=np.zeros(params.K, dtype=np.int64),
            mismatch_history=np.zeros((params.tau, params.K)),
            acceptance_counts=np.zeros(params.N, dtype=np.int64),
        )


@dataclass
class Applications:
    """Entry sheets posted in one year, stored company-wise.

    ``applicants[k]`` is the sorted array of students who applied to company
    ``k`` (0-based).
    """

    n_students: int
    applicants: list[np.ndarray]

    @property
    def sheet_counts(self) -> np.ndarray:
        return np.array([len(x) for x in self.applicants], dtype=np.int64)

    def sheets_per_student(self) -> np.ndarray:
        if not self.applicants:
            return np.zeros(self.n_students, dtype=np.int64)
        return np.bincount(np.concatenate(self.applicants), minlength=self.n_students)

    def per_student(self) -> list[set[int]]:
        sets: list[set[int]] = [set() for _ in range(self.n_students)]
        for k, students in enumerate(self.applicants):
            for i in students:
                sets[int(i)].add(k)
        return sets

    @classmethod
    def from_student_sets(cls, sets: Sequence[Sequence[int]], K: int) -> "Applications":
        buckets: list[list[int]] = [[] for _ in range(K)]
        for i, companies in enumerate(sets):
            for k in companies:
                if not 0 <= k < K:
                    raise ValueError(f"student {i} applied to unknown company {k}")
                buckets[k].append(i)
        return cls(len(sets), [np.array(sorted(b), dtype=np.int64) for b in buckets])


@dataclass
class YearOutcome:
    probabilities: np.ndarray
    applications: Applications
    hires: np.ndarray
    acceptance_counts: np.ndarray
    unemployment: float
    sheet_counts: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        self.sheet_counts = self.applications.sheet_counts


def ranking_factor(k: int, K: int) -> float:
    """Rank score ``1 + k/K`` of company ``k`` (1-based, ``k = K`` is the top)."""
    if K < 1 or not 1 <= k <= K:
        raise ValueError(f"company index {k} outside 1..{K}")
    return 1.0 + k / K


def ranking_factors(K: int) -> np.ndarray:
    return 1.0 + np.arange(1, K + 1) / K


def mismatch(v_star: float, v: float, V: float) -> float:
    if V <= 0:
        raise ValueError(f"total vacancies must be positive, got {V}")
    if v_star < 0 or v < 0:
        raise ValueError("quota and applicant count must be non-negative")
    return abs(v_star - v) / V


def local_energy(
    eps: float,
    h_hist: Sequence[float],
    beta_history: Sequence[float],
    gamma: float,
) -> float:
    if len(h_hist) != len(beta_history):
        raise ValueError(
            f"history length {len(h_hist)} does not match {len(beta_history)} weights"
        )
    if eps <= 0:
        raise ValueError(f"ranking factor must be positive, got {eps}")
    return -gamma * np.log(eps) + float(np.dot(beta_history, h_hist))


def local_energies(
    eps: np.ndarray,
    mismatch_history: np.ndarray,
    beta_history: Sequence[float],
    gamma: float,
) -> np.ndarray:
    """Vectorized ``local_energy`` over all companies.

    ``mismatch_history`` has shape ``(tau, K)``, newest row first.
    """
    hist = np.atleast_2d(mismatch_history)
    beta = np.asarray(beta_history, dtype=float)
    if hist.shape[0] != beta.size:
        raise ValueError(
            f"history length {hist.shape[0]} does not match {beta.size} weights"
        )
    return -gamma * np.log(eps) + beta @ hist


def selection_probabilities(energies: Sequence[float]) -> np.ndarray:
    """Boltzmann-Gibbs weights ``exp(-E_k) / Z``, shifted by ``min E`` against overflow."""
    e = np.asarray(energies, dtype=float)
    if e.size == 0:
        raise ValueError("no energies given")
    if not np.all(np.isfinite(e)):
        raise ValueError("energies must be finite")
    w = np.exp(-(e - e.min()))
    return w / w.sum()


def sample_applications(
    P: np.ndarray, a: float, N: int, rng: np.random.Generator
) -> Applications:
    """Post entry sheets; student ``i`` applies to ``k`` with prob. ``min(1, a P_k)``.

    All pairs are independent, so the applicant set of company ``k`` is a
    uniform subset of size ``Binomial(N, p_k)``; sampling it that way is
    exact and avoids an ``N x K`` draw.
    """
    p = np.minimum(1.0, a * np.asarray(P, dtype=float))
    counts = rng.binomial(N, p)
    applicants = []
    for n_k in counts:
        if n_k == N:
            applicants.append(np.arange(N, dtype=np.int64))
        elif n_k == 0:
            applicants.append(np.empty(0, dtype=np.int64))
        else:
            applicants.append(np.sort(rng.choice(N, size=n_k, replace=False)))
    return Applications(N, applicants)


def match(
    applications: Applications, quotas: np.ndarray, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Select winners; return per-student acceptance counts and per-company hires.

    Companies at or under quota take every applicant, the others pick
    ``v*_k`` winners uniformly without replacement.  A student may hold
    several offers and each one uses up a slot.
    """
    quotas = np.asarray(quotas)
    if len(quotas) != len(applications.applicants):
        raise ValueError("one quota per company required")
    winners = []
    hires = np.zeros(len(quotas), dtype=np.int64)
    for k, students in enumerate(applications.applicants):
        q = int(quotas[k])
        if len(students) > q:
            students = rng.choice(students, size=q, replace=False)
        winners.append(students)
        hires[k] = len(students)
    if winners:
        s = np.bincount(np.concatenate(winners).astype(np.int64), minlength=applications.n_students)
    else:
        s = np.zeros(applications.n_students, dtype=np.int64)
    return s, hires


def step(
    state: MarketState, params: MarketParams, rng: np.random.Generator
) -> tuple[MarketState, YearOutcome]:
    quotas = params.quota_array
    energies = local_energies(
        ranking_factors(params.K), state.mismatch_history, params.beta_history, params.gamma
    )
    P = selection_probabilities(energies)
    apps = sample_applications(P, params.a, params.N, rng)
    s, hires = match(apps, quotas, rng)
    U = float(np.count_nonzero(s == 0)) / params.N

    v = apps.sheet_counts
    h = np.abs(quotas - v) / params.V
    history = np.vstack([h[None, :], state.mismatch_history[:-1]])
    new_state = MarketState(
        t=state.t + 1,
        sheet_counts=v,
        mismatch_history=history,
        acceptance_counts=s,
    )
    return new_state, YearOutcome(P, apps, hires, s, U)


def make_rng(seed: int | np.random.SeedSequence) -> np.random.Generator:
    return np.random.default_rng(seed)


def iterate(
    params: MarketParams,
    rng: np.random.Generator | None = None,
    state: MarketState | None = None,
) -> Iterator[YearOutcome]:
    """Yield ``params.horizon`` consecutive business years."""
    rng = make_rng(params.seed) if rng is None else rng
    state = MarketState.initial(params) if state is None else state
    for _ in range(params.horizon):
        state, outcome = step(state, params, rng)
        yield outcome
