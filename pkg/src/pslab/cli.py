"""Command-line interface: ``pslab <command> [flags]``.

Every run writes ``<out>/<command>-<timestamp>/`` holding the outputs and a
``manifest.json`` with the parameters, seeds and sha256 digests of each file.
Exit status: 0 success, 1 domain error, 2 usage error.
"""

import argparse
import json
import math
import os
import shutil
import sys
from pathlib import Path

import numpy as np

from pslab import io, svg
from pslab.errors import PslabError
from pslab.exact import (
    catalan,
    classify_roots,
    compute_p_indices,
    exact_spectrum,
    outlier_series,
    rouche_regions,
)
from pslab.experiments import conjecture1_probe, conjecture4_probe, detect_spikes, staircase_run
from pslab.linalg import eigenvalues
from pslab.model import Model, ModelSpec, RandomMatrixSpec, build_model, build_random_perturbed
from pslab.pseudospectrum import GridRegion, epsilon_region_containing_origin, grid_scan
from pslab.symbol import (
    DEFAULT_SAMPLES,
    asymptotic_predicted_roots,
    compare_to_prediction,
    symbol_curve,
)

COMMANDS = (
    "exact-spectrum", "dense-spectrum", "pseudospectrum", "symbol-curve", "outlier-series",
    "rouche", "staircase", "conjecture-probe", "asymptotic-check",
)


def _number(text: str) -> complex | float:
    """Real if possible, else a Python complex literal such as ``0.01+0.002j``."""
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _grid(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--grid takes re0,re1,im0,im1")
    try:
        return tuple(float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad --grid value {text!r}") from None


def _pairs(text: str) -> list:
    try:
        return [tuple(int(x) for x in p.split(":")) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("--pairs takes n:m,n:m,...") from None


def _default_seed() -> int:
    raw = os.environ.get("PSLAB_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"pslab: PSLAB_SEED must be an integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=int, choices=(1, 2), default=1)
    common.add_argument("--n", type=int, default=200)
    common.add_argument("--m", type=int, default=1)
    common.add_argument("--delta", type=_number, default=0.01)
    common.add_argument("--a", type=_number, default=0.0)
    common.add_argument("--seed", type=int, default=None, help="default: $PSLAB_SEED or 0")
    common.add_argument("--out", default="runs")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--plot", action="store_true", help="also write an SVG")

    gridded = argparse.ArgumentParser(add_help=False)
    gridded.add_argument("--grid", type=_grid, default=(-1.5, 3.5, -1.5, 1.5))
    gridded.add_argument("--nx", type=int, default=101)
    gridded.add_argument("--ny", type=int, default=61)
    gridded.add_argument("--eps", type=float, default=1e-3)
    gridded.add_argument("--workers", type=int, default=1)

    p = argparse.ArgumentParser(prog="pslab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("exact-spectrum", parents=[common], help="roots of the characteristic polynomial")
    d = sub.add_parser("dense-spectrum", parents=[common], help="dense eigensolver on the model matrix")
    d.add_argument("--random", action="store_true", help="use S^m + delta Z with Gaussian Z instead")
    sub.add_parser("pseudospectrum", parents=[common, gridded], help="sigma_min(zI - A) on a grid")
    s = sub.add_parser("symbol-curve", parents=[common], help="symbol z^m + a z^(m+1) on the unit circle")
    s.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    o = sub.add_parser("outlier-series", parents=[common], help="truncated Catalan series for the outlier")
    o.add_argument("--order", type=int, default=10)
    sub.add_parser("rouche", parents=[common], help="annuli and root counts")
    st = sub.add_parser("staircase", parents=[common], help="Monte Carlo mean radius R(m) of S^m + delta Z")
    st.add_argument("--samples", type=int, default=20)
    st.add_argument("--workers", type=int, default=1)
    st.add_argument("--per-time-noise", action="store_true", help="fresh Z for every (m, sample)")
    c = sub.add_parser("conjecture-probe", parents=[common, gridded], help="symbol-curve and scaling probes")
    c.add_argument("--which", type=int, choices=(1, 4), default=1)
    c.add_argument("--pairs", type=_pairs, default=None, help="n:m,n:m,... for --which 4")
    c.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    sub.add_parser("asymptotic-check", parents=[common], help="roots vs. equidistant points on a circle")
    return p


def _spec(args) -> ModelSpec:
    return ModelSpec(Model(args.model), args.n, args.m, args.delta, args.a if args.model == 2 else 0.0)


def _region(args) -> GridRegion:
    re0, re1, im0, im1 = args.grid
    return GridRegion(re0, re1, im0, im1, args.nx, args.ny)


class _Run:
    """Output directory plus manifest bookkeeping for one command."""

    def __init__(self, args, params):
        self.args = args
        self.dir = io.run_directory(args.out, args.command)
        self.manifest = io.RunManifest(command=args.command, parameters=params, seeds=[args.seed])

    def path(self, name) -> Path:
        return self.dir / name

    def done(self, name):
        self.manifest.record(self.path(name))

    def table(self, name, columns, rows):
        io.write_table_csv(self.path(name), columns, rows)
        self.done(name)

    def report(self, name, obj):
        io.write_json(self.path(name), obj)
        self.done(name)

    def plot(self, name, spec, data):
        if self.args.plot:
            svg.write_svg(self.path(name), spec, data)
            self.done(name)

    def close(self):
        self.manifest.finish(self.dir)
        print(self.dir)


def _bounds(z, pad=0.1):
    z = np.asarray(z, dtype=np.complex128)
    lo = min(z.real.min(), z.imag.min())
    hi = max(z.real.max(), z.imag.max())
    span = max(hi - lo, 1e-9)
    return (lo - pad * span, hi + pad * span)


def _spectrum_output(run, spectrum, values):
    if run.args.format == "json":
        rows = [{"index": i, "re": complex(z).real, "im": complex(z).imag, "kind": kind}
                for i, (z, kind) in enumerate(io.spectrum_rows(spectrum))]
        run.report("spectrum.json", rows)
    else:
        io.write_spectrum_csv(run.path("spectrum.csv"), spectrum)
        run.done("spectrum.csv")
    r = _bounds(values)
    run.plot("spectrum.svg", svg.PlotSpec("scatter", r, r, title=run.args.command), values)


def cmd_exact_spectrum(run, args):
    ex = exact_spectrum(_spec(args))
    print(f"outlier {ex.outlier.real:.12g}{ex.outlier.imag:+.12g}j  nonzero roots {ex.nonzero_roots.size}  "
          f"zeros {ex.zero_algebraic_multiplicity}")
    _spectrum_output(run, ex, ex.all_eigenvalues())


def cmd_dense_spectrum(run, args):
    if args.random:
        a = build_random_perturbed(RandomMatrixSpec(args.n, args.m, args.delta, args.seed))
    else:
        a = build_model(_spec(args))
    res = eigenvalues(a)
    _spectrum_output(run, res, res.values)


def cmd_pseudospectrum(run, args):
    region = _region(args)
    grid = grid_scan(build_model(_spec(args)), region, workers=args.workers)
    comp = epsilon_region_containing_origin(grid, args.eps) if (
        region.re_min <= 0 <= region.re_max and region.im_min <= 0 <= region.im_max) else None
    header = {
        "re_min": region.re_min, "re_max": region.re_max, "im_min": region.im_min, "im_max": region.im_max,
        "nx": region.nx, "ny": region.ny, "values": "sigma_min(zI - A); row j has im = im_min + j*dy",
        "eps": args.eps,
        "origin_component": None if comp is None else {"area": comp.area, "max_abs": comp.max_abs,
                                                       "cells": comp.cells},
    }
    if args.format == "json":
        header["sigma"] = grid.sigma
        run.report("grid.json", header)
    else:
        io.write_matrix_csv(run.path("grid.csv"), grid.sigma)
        run.done("grid.csv")
        run.report("grid.json", header)
    with np.errstate(divide="ignore"):
        norms = 1.0 / grid.sigma
    run.plot("pseudospectrum.svg",
             svg.PlotSpec("heatmap", (region.re_min, region.re_max), (region.im_min, region.im_max),
                          title="log10 resolvent norm"), norms)


def cmd_symbol_curve(run, args):
    a = args.a if args.model == 2 or args.a != 0 else 0.0
    curve = symbol_curve(args.m, a, args.samples)
    rows = [(float(t), z.real, z.imag) for t, z in zip(curve.thetas, curve.points)]
    if args.format == "json":
        run.report("curve.json", {"m": args.m, "a": complex(a), "theta": curve.thetas, "points": curve.points})
    else:
        run.table("curve.csv", ("theta", "re", "im"), rows)
    r = _bounds(curve.points)
    run.plot("curve.svg", svg.PlotSpec("scatter", r, r, marker_radius=0.6, title="symbol curve"), curve.points)


def cmd_outlier_series(run, args):
    spec = _spec(args)
    exact = exact_spectrum(spec).outlier
    p1 = compute_p_indices(spec.n, spec.m).p1
    top = min(args.order, p1, 30)
    rows = []
    for k in range(top + 1):
        v = outlier_series(spec, k)
        rows.append({"order": k, "re": v.real, "im": v.imag, "error": abs(v - exact)})
    result = {"exact_outlier": exact, "catalan": [catalan(k) for k in range(top + 1)], "series": rows}
    if args.format == "json":
        run.report("outlier-series.json", result)
    else:
        run.table("outlier-series.csv", ("order", "re", "im", "abs_error"),
                  [(r["order"], r["re"], r["im"], r["error"]) for r in rows])
    run.plot("outlier-series.svg",
             svg.PlotSpec("line", (1, max(len(rows), 2)), _log_bounds([r["error"] for r in rows]),
                          title="log10 |series - exact|"),
             np.log10(np.maximum([r["error"] for r in rows], 1e-300)))


def _log_bounds(values):
    v = np.log10(np.maximum(np.asarray(values, dtype=float), 1e-300))
    lo, hi = float(v.min()), float(v.max())
    return (lo - 1, hi + 1)


def cmd_rouche(run, args):
    spec = _spec(args)
    regions = rouche_regions(args.n, abs(args.delta))
    ex = exact_spectrum(spec)
    counts = classify_roots(ex.nonzero_roots, regions)
    result = {
        "r_plus": regions.r_plus, "r_minus": regions.r_minus, "outer_radius": regions.outer_radius,
        "outer": counts.outer, "gap": counts.gap, "inner": counts.inner, "outside": counts.outside,
        "p1": compute_p_indices(args.n, args.m).p1,
    }
    print(json.dumps(result))
    if args.format == "json":
        run.report("rouche.json", result)
    else:
        run.table("rouche.csv", tuple(result), [tuple(result.values())])
    r = (-regions.outer_radius * 1.1, regions.outer_radius * 1.1)
    run.plot("rouche.svg", svg.PlotSpec("scatter", r, r, title="nonzero roots"), ex.nonzero_roots)


def cmd_staircase(run, args):
    series = staircase_run(args.n, args.delta, args.samples, args.seed, workers=args.workers,
                           per_time_noise=args.per_time_noise)
    spikes = detect_spikes(series.dR)
    if args.format == "json":
        run.report("staircase.json", {
            "R": series.R, "R_stderr": series.R_stderr, "dR": series.dR, "dR_stderr": series.dR_stderr,
            "marks": series.marks, "spikes": spikes, "skipped": series.skipped,
        })
    else:
        rows = []
        for i in range(args.n):
            d = (series.dR[i], series.dR_stderr[i]) if i < args.n - 1 else (math.nan, math.nan)
            rows.append((i + 1, series.R[i], series.R_stderr[i], *d))
        run.table("staircase.csv", ("m", "R", "R_stderr", "dR", "dR_stderr"), rows)
        run.report("staircase-summary.json", {"marks": series.marks, "spikes": spikes, "skipped": series.skipped})
    lo, hi = float(np.min(series.dR)), float(np.max(series.dR))
    pad = 0.05 * max(hi - lo, 1e-12)
    run.plot("staircase-dR.svg", svg.PlotSpec("line", (1, max(args.n - 1, 2)), (lo - pad, hi + pad),
                                              title="dR(m)"), series.dR)
    lo, hi = float(np.min(series.R)), float(np.max(series.R))
    pad = 0.05 * max(hi - lo, 1e-12)
    run.plot("staircase-R.svg", svg.PlotSpec("line", (1, args.n), (lo - pad, hi + pad), title="R(m)"), series.R)


def cmd_conjecture_probe(run, args):
    if args.which == 1:
        rep = conjecture1_probe(_spec(args), _region(args), args.eps, args.samples)
        result = {"outer_match_distance": rep.outer_match_distance,
                  "origin_component_size": rep.origin_component_size, "notes": rep.notes, **rep.details}
    else:
        pairs = args.pairs or [(args.n, args.m)]
        result = conjecture4_probe(pairs, args.delta, args.a if args.model == 2 else 0.0, args.eps, _region(args))
    print(json.dumps(io.to_jsonable(result)))
    if args.format == "json":
        run.report("probe.json", result)
    else:
        rows = result["pairs"] if args.which == 4 else [result]
        cols = tuple(k for k in rows[0] if not isinstance(rows[0][k], (dict, list, str)))
        run.table("probe.csv", cols, [tuple(r[k] for k in cols) for r in rows])


def cmd_asymptotic_check(run, args):
    spec = _spec(args)
    pred = asymptotic_predicted_roots(spec)
    ex = exact_spectrum(spec)
    dev = compare_to_prediction(ex.nonzero_roots, pred, ex.outlier)
    result = {"max_deviation": dev.max_deviation, "mean_deviation": dev.mean_deviation,
              "outlier": ex.outlier, "points": int(pred.points.size)}
    print(json.dumps(io.to_jsonable(result)))
    if args.format == "json":
        run.report("asymptotic.json", result)
    else:
        run.table("asymptotic.csv", ("max_deviation", "mean_deviation", "outlier_re", "outlier_im", "points"),
                  [(dev.max_deviation, dev.mean_deviation, ex.outlier.real, ex.outlier.imag, pred.points.size)])
    pts = np.concatenate([pred.points, ex.non_outlier_roots])
    r = _bounds(pts)
    run.plot("asymptotic.svg", svg.PlotSpec("scatter", r, r, title="roots and predicted points"), pts)


_HANDLERS = {
    "exact-spectrum": cmd_exact_spectrum,
    "dense-spectrum": cmd_dense_spectrum,
    "pseudospectrum": cmd_pseudospectrum,
    "symbol-curve": cmd_symbol_curve,
    "outlier-series": cmd_outlier_series,
    "rouche": cmd_rouche,
    "staircase": cmd_staircase,
    "conjecture-probe": cmd_conjecture_probe,
    "asymptotic-check": cmd_asymptotic_check,
}


def parameters(args) -> dict:
    """The parameter record stored in the manifest (everything except --out)."""
    return {k: v for k, v in vars(args).items() if k != "out"}


def argv_from_manifest(path, out) -> list:
    """Rebuild a command line that repeats the run recorded in ``manifest.json``."""
    with open(path, encoding="utf-8") as f:
        params = json.load(f)["parameters"]
    argv = [params.pop("command")]
    for key, value in params.items():
        flag = "--" + key.replace("_", "-")
        if isinstance(value, bool):
            if value:
                argv.append(flag)
        elif value is None:
            continue
        elif isinstance(value, dict):
            argv += [flag, repr(complex(value["re"], value["im"]))]
        elif isinstance(value, list) and key == "grid":
            argv += [flag, ",".join(repr(float(v)) for v in value)]
        elif isinstance(value, list) and key == "pairs":
            argv += [flag, ",".join(f"{n}:{m}" for n, m in value)]
        else:
            argv += [flag, repr(value) if isinstance(value, float) else str(value)]
    return argv + ["--out", str(out)]


def _glue_values(argv):
    """Attach values to --grid so a leading minus sign is not read as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--grid":
            out.append(f"--grid={next(it, '')}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.seed is None:
        try:
            args.seed = _default_seed()
        except SystemExit as exc:
            print(exc, file=sys.stderr)
            return 2
    run = None
    try:
        run = _Run(args, parameters(args))
        _HANDLERS[args.command](run, args)
        run.close()
    except (PslabError, OSError) as exc:
        print(f"pslab {args.command}: {exc}", file=sys.stderr)
        if run is not None:
            shutil.rmtree(run.dir, ignore_errors=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
