"""Entry-sheet and application-count distributions in a large market.

Prints the pooled distribution of sheets received per company, the
distribution of sheets posted per student, and the empty-company fraction
next to its analytic estimate.
"""
import argparse

import numpy as np

from labormarket.market import MarketParams, local_energies, ranking_factors, selection_probabilities
from labormarket.observables import (
    empirical_distribution,
    empty_fraction_series,
    expected_empty_fraction,
    simulate,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--K", type=int, default=1000)
    ap.add_argument("--N", type=int, default=10000)
    ap.add_argument("--a", type=float, default=1.0)
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--beta", type=float, default=0.0)
    ap.add_argument("--years", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = MarketParams(K=args.K, N=args.N, v=30, a=args.a, gamma=args.gamma,
                          beta_history=(args.beta,), horizon=args.years, seed=args.seed)
    obs = simulate(params, record_sheets=True, record_applications=True)

    sheets = empirical_distribution(obs.sheet_count_series)
    per_student = empirical_distribution(obs.application_count_series)
    print("sheets per company (pooled over companies and years)")
    for k, m in sheets.as_dict().items():
        if m >= 1e-4:
            print(f"  {k:4d}  {m:.5f}")
    print("sheets per student")
    for k, m in per_student.as_dict().items():
        print(f"  {k:4d}  {m:.5f}")

    empty = empty_fraction_series(obs.sheet_count_series).mean()
    if args.beta == 0.0:
        P = selection_probabilities(local_energies(ranking_factors(args.K), np.zeros((1, args.K)), [0.0], args.gamma))
        print(f"empty fraction {empty:.6f}, estimate {expected_empty_fraction(P, args.a, args.N):.6f}")
    else:
        print(f"empty fraction {empty:.6f}")
    print(f"mean unemployment {obs.order_parameter():.5f}")


if __name__ == "__main__":
    main()
