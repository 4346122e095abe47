"""Resolvent-norm heatmaps of model 1 for m = 1..4 and the origin component size.

    python scripts/pseudospectra_panels.py --n 50 --out out/pseudospectra
"""

import argparse
from pathlib import Path

import numpy as np

from pslab import io
from pslab.model import Model, ModelSpec, build_model
from pslab.pseudospectrum import EPS_LADDER, GridRegion, epsilon_region_containing_origin, grid_scan
from pslab.svg import PlotSpec, write_svg


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--ms", default="1,2,3,4")
    p.add_argument("--nx", type=int, default=101)
    p.add_argument("--ny", type=int, default=61)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="out/pseudospectra")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    region = GridRegion(-1.5, 3.5, -1.5, 1.5, args.nx, args.ny)

    rows = []
    for m in (int(x) for x in args.ms.split(",")):
        grid = grid_scan(build_model(ModelSpec(Model.MODEL1, args.n, m, args.delta)), region, workers=args.workers)
        io.write_matrix_csv(out / f"sigma-m{m}.csv", grid.sigma)
        write_svg(out / f"resolvent-m{m}.svg",
                  PlotSpec("heatmap", (region.re_min, region.re_max), (region.im_min, region.im_max),
                           title=f"log10 resolvent norm, m={m}"), 1 / grid.sigma)
        for eps in EPS_LADDER[:6]:
            c = epsilon_region_containing_origin(grid, eps)
            rows.append((m, eps, c.area, c.max_abs, c.cells))
        print(f"m={m}: log10 max resolvent {np.log10(1 / grid.sigma.min()):.2f}")
    io.write_table_csv(out / "origin-components.csv", ("m", "eps", "area", "max_abs", "cells"), rows)
    for r in rows:
        if r[1] == 1e-3:
            print(f"m={r[0]} eps=1e-3 area={r[2]:.4f} max_abs={r[3]:.4f}")


if __name__ == "__main__":
    main()
