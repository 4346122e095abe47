"""Deviation of the non-outlier roots from equidistant points as n grows.

    python scripts/asymptotic_convergence.py --m 4 --ns 250,500,1000,2000,4000
"""

import argparse

from pslab.exact import exact_spectrum
from pslab.model import Model, ModelSpec
from pslab.symbol import asymptotic_predicted_roots, compare_to_prediction


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--ns", default="250,500,1000,2000,4000")
    args = p.parse_args()
    print(f"{'n':>6} {'p1':>5} {'max dev':>10} {'mean dev':>10} {'outlier':>10}")
    for n in (int(x) for x in args.ns.split(",")):
        spec = ModelSpec(Model.MODEL1, n, args.m, args.delta)
        ex = exact_spectrum(spec)
        d = compare_to_prediction(ex.nonzero_roots, asymptotic_predicted_roots(spec), ex.outlier)
        print(f"{n:6d} {(n - 1) // args.m:5d} {d.max_deviation:10.4f} {d.mean_deviation:10.4f} {ex.outlier.real:10.4f}")


if __name__ == "__main__":
    main()
