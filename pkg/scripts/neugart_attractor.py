"""Iterate the macroscopic maps at J_s = J_s* and fit the attractor.

Also reports the sse at a few fixed offsets so the flatness of the
objective in b is visible.
"""
import argparse
import math

from labormarket.fit import fit_offset_power_law, linear_fit_given_b
from labormarket.neugart import NeugartParams, fixed_point, run_macro


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=100_000)
    ap.add_argument("--burn-in", type=int, default=1000)
    ap.add_argument("--offsets", type=float, nargs="+", default=[0.5, 1.0, 2.0, 5.0])
    args = ap.parse_args()

    p = NeugartParams().at_fixed_point()
    print(f"fixed point {fixed_point(p)}, Js* = {p.Js:.6f}")
    tr = run_macro(p, T=args.steps, burn_in=args.burn_in)
    print(f"U in [{tr.U.min():.4f}, {tr.U.max():.4f}], pi in [{tr.pi.min():.4f}, {tr.pi.max():.4f}], "
          f"clamps {tr.clamp_events}")
    pts = tr.points()
    res = fit_offset_power_law(pts)
    print(f"free fit: b={res.b:.4f} c={res.c:.6f} C={math.exp(res.logC):.4f} sse={res.sse:.4e}")
    for b in args.offsets:
        c, logC, sse = linear_fit_given_b(pts, b)
        print(f"b fixed at {b:g}: c={c:.6f} sse={sse:.4e}")


if __name__ == "__main__":
    main()
