"""Employment rate versus ranking weight gamma for several job offer ratios."""
import argparse

import numpy as np

from labormarket.market import MarketParams
from labormarket.observables import gamma_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alphas", type=float, nargs="+", default=[1.0, 3.0, 10.0])
    ap.add_argument("--a", type=float, default=10.0)
    ap.add_argument("--gammas", type=float, nargs="+",
                    default=[1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 100, 200, 400])
    ap.add_argument("--horizon", type=int, default=2000)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    base = MarketParams(K=50, N=500, v=10, a=args.a, horizon=args.horizon, seed=args.seed)
    print("gamma " + " ".join(f"alpha={al:<8g}" for al in args.alphas))
    cols = []
    for alpha in args.alphas:
        res = gamma_sweep(base.with_alpha(alpha), args.gammas, args.trials, args.workers)
        cols.append(res.employment_mean)
    for i, g in enumerate(args.gammas):
        print(f"{g:<5g} " + " ".join(f"{c[i]:<14.4f}" for c in cols))
    for alpha, col in zip(args.alphas, cols):
        below = np.flatnonzero(col < 0.5)
        where = f"first below 0.5 at gamma={args.gammas[below[0]]:g}" if below.size else "never below 0.5"
        print(f"alpha={alpha:g}: {where}")


if __name__ == "__main__":
    main()
