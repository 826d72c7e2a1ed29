"""Employment rate versus job offer ratio for a few application budgets."""
import argparse

from labormarket.market import MarketParams
from labormarket.observables import beveridge_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budgets", type=float, nargs="+", default=[1.0, 3.0, 5.0])
    ap.add_argument("--alphas", type=float, nargs="+", default=[0.5, 1, 2, 3, 5, 7.5, 10])
    ap.add_argument("--gamma", type=float, default=1.0)
    ap.add_argument("--horizon", type=int, default=2000)
    ap.add_argument("--trials", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for a in args.budgets:
        base = MarketParams(K=50, N=500, v=10, a=a, gamma=args.gamma, horizon=args.horizon, seed=args.seed)
        res = beveridge_sweep(base, args.alphas, args.trials, args.workers)
        print(f"a = {a:g}")
        for al, m, se in zip(res.grid, res.employment_mean, res.employment_stderr):
            print(f"  alpha={al:<6.3g} 1-U={m:.4f} +/- {se:.4f}")


if __name__ == "__main__":
    main()
