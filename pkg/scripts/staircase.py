"""Mean radius R(m) and its increments for the random and deterministic processes.

    python scripts/staircase.py --n 200 --samples 200 --out out/staircase
"""

import argparse
import os
from pathlib import Path

import numpy as np

from pslab import io
from pslab.experiments import detect_kinks, detect_spikes, staircase_run, staircase_run_deterministic
from pslab.model import Model, ModelSpec
from pslab.svg import PlotSpec, write_svg


def save(series, out: Path, tag: str):
    rows = []
    for i in range(series.n):
        d = (series.dR[i], series.dR_stderr[i]) if i < series.n - 1 else (np.nan, np.nan)
        rows.append((i + 1, series.R[i], series.R_stderr[i], *d))
    io.write_table_csv(out / f"{tag}.csv", ("m", "R", "R_stderr", "dR", "dR_stderr"), rows)
    lo, hi = float(series.dR.min()), float(series.dR.max())
    pad = 0.05 * (hi - lo or 1)
    write_svg(out / f"{tag}-dR.svg", PlotSpec("line", (1, series.n - 1), (lo - pad, hi + pad), title=f"{tag} dR"), series.dR)
    print(f"{tag}: spikes {detect_spikes(series.dR)} kinks {detect_kinks(series.dR)} marks {series.marks}")


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default="out/staircase")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    save(staircase_run(args.n, args.delta, args.samples, args.seed, workers=args.workers), out, "random")
    save(staircase_run_deterministic(ModelSpec(Model.MODEL1, args.n, 1, args.delta)), out, "model1")
    save(staircase_run_deterministic(ModelSpec(Model.MODEL2, args.n, 1, args.delta, 1.0)), out, "model2")


if __name__ == "__main__":
    main()
