"""Independent reference computations used by the tests.

Nothing here calls into the simulator's sampling or matching code.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np


def boltzmann_no_history(K: int, gamma: float) -> np.ndarray:
    """Selection probabilities with zero history: ``(1 + k/K)**gamma`` normalized."""
    w = np.array([(1.0 + k / K) ** gamma for k in range(1, K + 1)])
    return w / w.sum()


def exact_expected_unemployment(p: list[float], quotas: list[int], N: int) -> float:
    """E[U] by enumerating every application matrix and every winner draw.

    ``p[k]`` is the per-student probability of applying to company ``k``.
    """
    K = len(p)
    total = 0.0
    for bits in itertools.product((0, 1), repeat=N * K):
        a = np.array(bits).reshape(N, K)
        prob = 1.0
        for i in range(N):
            for k in range(K):
                prob *= p[k] if a[i, k] else 1.0 - p[k]
        if prob == 0.0:
            continue
        # each company's winner set is independent given the applications
        per_company = []
        for k in range(K):
            applicants = [i for i in range(N) if a[i, k]]
            q = quotas[k]
            if len(applicants) <= q:
                per_company.append([(frozenset(applicants), 1.0)])
            else:
                n_sets = comb(len(applicants), q)
                per_company.append(
                    [(frozenset(c), 1.0 / n_sets) for c in itertools.combinations(applicants, q)]
                )
        for combo in itertools.product(*per_company):
            w = prob
            employed: set[int] = set()
            for winners, pw in combo:
                w *= pw
                employed |= winners
            total += w * (N - len(employed)) / N
    return total


def bernoulli_pattern_probability(pattern: np.ndarray, p: np.ndarray) -> float:
    """Probability of an ``N x K`` 0/1 application matrix under independent pairs."""
    return float(np.prod(np.where(pattern == 1, p[None, :], 1.0 - p[None, :])))


def synthetic_power_law(C: float, b: float, c: float, U: np.ndarray) -> np.ndarray:
    return np.column_stack([U, C * U ** (-c) - b])


def hand_two_company_probabilities() -> tuple[Fraction, Fraction]:
    """K=2, beta=0, gamma=1: weights eps_k**gamma = 3/2 and 2."""
    w1, w2 = Fraction(3, 2), Fraction(2)
    return w1 / (w1 + w2), w2 / (w1 + w2)
