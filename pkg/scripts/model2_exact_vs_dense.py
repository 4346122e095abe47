"""Exact model-2 roots against the dense eigensolver, for every m.

The dense solver loses accuracy on the nonnormal matrix; the gap column shows
how far the two spectra are apart after greedy matching.

    python scripts/model2_exact_vs_dense.py --n 200 --a 1
"""

import argparse

import numpy as np

from pslab.exact import exact_spectrum
from pslab.linalg import eigenvalues
from pslab.model import Model, ModelSpec, build_model
from pslab.symbol import greedy_match


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--ms", default="1,2,3,4,10,50,100,199,200")
    args = p.parse_args()
    print(f"{'m':>4} {'p1+1':>5} {'outlier':>12} {'3.995-m/100':>12} {'max gap':>10} {'median gap':>10}")
    for m in (int(x) for x in args.ms.split(",")):
        spec = ModelSpec(Model.MODEL2, args.n, m, args.delta, args.a)
        ex = exact_spectrum(spec)
        dense = eigenvalues(build_model(spec)).values
        big = dense[np.argsort(-np.abs(dense))][: ex.nonzero_roots.size]
        gaps = [d for _, _, d in greedy_match(ex.nonzero_roots, big)]
        print(f"{m:4d} {ex.nonzero_roots.size:5d} {ex.outlier.real:12.6f} {3.995 - m / 100:12.6f} "
              f"{max(gaps):10.2e} {np.median(gaps):10.2e}")


if __name__ == "__main__":
    main()
