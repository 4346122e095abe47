"""Empirical studies: mean-radius staircases and conjecture probes.

The probes only report measurements; the assertions that belong to them live
in the test suite.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from pslab.errors import DomainError, EigensolverError, PslabError
from pslab.exact import exact_spectrum
from pslab.linalg import eigenvalues
from pslab.model import Model, ModelSpec, build_model
from pslab.pseudospectrum import GridRegion, epsilon_region_containing_origin, grid_scan
from pslab.rng import complex_gaussian
from pslab.symbol import symbol_curve

log = logging.getLogger(__name__)

SKIP_LIMIT = 0.01


@dataclass(frozen=True)
class StaircaseSeries:
    n: int
    delta: complex
    samples: int
    seed: int | None
    R: np.ndarray  # R[m-1] for m = 1..n
    dR: np.ndarray  # dR[m-1] = R(m+1) - R(m), m = 1..n-1
    R_stderr: np.ndarray
    dR_stderr: np.ndarray
    marks: tuple = ()
    skipped: int = 0

    @property
    def times(self) -> np.ndarray:
        return np.arange(1, self.n + 1)


@dataclass
class ConjectureReport:
    spec: ModelSpec
    outer_match_distance: float
    origin_component_size: float
    notes: str = ""
    details: dict = field(default_factory=dict)


def mean_radius(eigs) -> float:
    eigs = np.asarray(eigs)
    if eigs.size == 0:
        raise DomainError("mean radius of an empty eigenvalue set")
    return float(np.abs(eigs).mean())


def staircase_marks(n: int, kmax: int = 13) -> tuple:
    """Times m = (n-1)//k, k = 1..kmax, where the degree p1 + 1 drops."""
    return tuple((n - 1) // k for k in range(1, kmax + 1) if (n - 1) // k >= 1)


def _sample_path(n, delta, seed, sample, per_time_noise):
    """Mean radii along one sample process m = 1..n (NaN where the solver failed)."""
    radii = np.full(n, np.nan)
    z = None if per_time_noise else delta * complex_gaussian(seed, (n, n), stream=sample)
    for m in range(1, n + 1):
        if per_time_noise:
            z = delta * complex_gaussian(seed, (n, n), stream=(m << 32) | sample)
        a = np.eye(n, k=m, dtype=np.complex128) + z
        try:
            radii[m - 1] = mean_radius(eigenvalues(a).values)
        except EigensolverError:
            pass
    return radii


def _summarize(paths, n, delta, samples, seed, marks=()):
    skipped = int(np.isnan(paths).sum())
    if skipped > SKIP_LIMIT * paths.size:
        raise PslabError(f"{skipped} of {paths.size} eigensolves failed (limit {SKIP_LIMIT:.0%})")
    if skipped:
        log.warning("skipped %d failed eigensolves", skipped)
    counts = np.sum(~np.isnan(paths), axis=0)
    R = np.nanmean(paths, axis=0)
    inc = np.diff(paths, axis=1)
    dR = np.nanmean(inc, axis=0)
    if paths.shape[0] > 1:
        R_se = np.nanstd(paths, axis=0, ddof=1) / np.sqrt(counts)
        inc_counts = np.sum(~np.isnan(inc), axis=0)
        dR_se = np.nanstd(inc, axis=0, ddof=1) / np.sqrt(inc_counts)
    else:
        R_se = np.zeros(n)
        dR_se = np.zeros(n - 1)
    return StaircaseSeries(
        n=n, delta=delta, samples=samples, seed=seed, R=R, dR=dR,
        R_stderr=R_se, dR_stderr=dR_se, marks=tuple(marks), skipped=skipped,
    )


def staircase_run(n: int, delta: float, samples: int, seed: int, workers: int = 1,
                  per_time_noise: bool = False) -> StaircaseSeries:
    """Monte Carlo mean radius R(m) of the eigenvalues of S^m + delta Z.

    By default each sample is one process: a single Z drawn per sample and
    reused for every m, so increments R(m+1) - R(m) are paired.  With
    ``per_time_noise`` a fresh Z is keyed by (m, sample) instead.
    """
    if samples < 1:
        raise DomainError("staircase needs samples >= 1")
    args = [(n, delta, seed, s, per_time_noise) for s in range(samples)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            paths = list(pool.map(_sample_path, *zip(*args)))
    else:
        paths = [_sample_path(*a) for a in args]
    return _summarize(np.array(paths), n, delta, samples, seed, staircase_marks(n))


def staircase_run_deterministic(spec: ModelSpec) -> StaircaseSeries:
    """Mean radius of the dense-solver spectrum of the model for every m = 1..n.

    ``spec.m`` is ignored; the whole time range is swept.
    """
    radii = np.array([
        mean_radius(eigenvalues(build_model(spec.with_m(m))).values) for m in range(1, spec.n + 1)
    ])
    return _summarize(radii[None, :], spec.n, spec.delta, 1, None, staircase_marks(spec.n))


def detect_spikes(dR, window: int = 10, factor: float = 5.0) -> list:
    """Times m where |dR(m)| exceeds ``factor`` times the local median of |dR|.

    dR[i] belongs to m = i + 1; the median runs over m - window .. m + window.
    """
    mag = np.abs(np.asarray(dR, dtype=float))
    hits = []
    for i in range(mag.size):
        lo, hi = max(0, i - window), min(mag.size, i + window + 1)
        med = np.median(mag[lo:hi])
        if mag[i] > factor * med:
            hits.append(i + 1)
    return hits


def detect_kinks(dR, window: int = 10, factor: float = 5.0) -> list:
    """Times m where the slope of R changes abruptly.

    Applies the spike rule to the second difference dR(m) - dR(m-1), so a
    corner of R (a step in dR) shows up at the m where the new slope starts.
    """
    return [m + 1 for m in detect_spikes(np.diff(np.asarray(dR, dtype=float)), window, factor)]


def conjecture1_probe(spec: ModelSpec, grid: GridRegion, eps: float, curve_samples: int = 4096) -> ConjectureReport:
    """Outer exact roots vs. the symbol curve, and size of the origin pseudospectrum.

    Outer roots are the non-outlier roots with modulus above half the largest
    non-outlier modulus.
    """
    if spec.model != Model.MODEL2:
        raise DomainError("the symbol-curve probe needs model 2")
    ex = exact_spectrum(spec)
    if spec.m == spec.n:
        return ConjectureReport(
            spec=spec, outer_match_distance=0.0, origin_component_size=0.0,
            notes="m = n: the only nonzero eigenvalue is n*delta",
            details={"roots": ex.nonzero_roots.tolist()},
        )
    if spec.m < 2:
        raise DomainError("the symbol-curve probe needs m >= 2")
    rest = ex.non_outlier_roots
    threshold = 0.5 * np.abs(rest).max()
    outer = rest[np.abs(rest) > threshold]
    curve = symbol_curve(spec.m, spec.a, curve_samples)
    dists = np.abs(outer[:, None] - curve.points[None, :]).min(axis=1)
    comp = epsilon_region_containing_origin(grid_scan(build_model(spec), grid), eps)
    return ConjectureReport(
        spec=spec,
        outer_match_distance=float(dists.max()),
        origin_component_size=comp.max_abs,
        notes=f"outer subset: |z| > {threshold:.6g} (half the largest non-outlier modulus)",
        details={
            "outer_count": int(outer.size),
            "mean_distance": float(dists.mean()),
            "origin_component_area": comp.area,
            "eps": eps,
        },
    )


def conjecture4_probe(pairs, delta: float, a: complex = 0.0, eps: float = 1e-3,
                      grid: GridRegion | None = None, tolerance: float = 0.25) -> dict:
    """Size metrics for (n, m) pairs sharing one ratio m/n.

    Uses model 2 with coefficient ``a`` (``a = 0`` is model 1).  Variation of
    each metric above ``tolerance`` across pairs with n >= 100 is logged, not raised.
    """
    pairs = [(int(n), int(m)) for n, m in pairs]
    if not pairs:
        raise DomainError("the ratio probe needs at least one (n, m) pair")
    ratios = {Fraction(m, n) for n, m in pairs}
    if len(ratios) != 1:
        raise DomainError(f"pairs must share one ratio m/n, got {sorted(ratios)}")
    if any(n2 <= n1 for (n1, _), (n2, _) in zip(pairs, pairs[1:])):
        raise DomainError("pairs must have strictly increasing n")
    grid = grid or GridRegion(-2.0, 2.0, -2.0, 2.0, 41, 41)
    rows = []
    for n, m in pairs:
        spec = ModelSpec(Model.MODEL2, n, m, delta, a)
        ex = exact_spectrum(spec)
        rest = ex.non_outlier_roots
        comp = epsilon_region_containing_origin(grid_scan(build_model(spec), grid), eps)
        rows.append({
            "n": n, "m": m,
            "origin_component_size": comp.max_abs,
            "outer_radius": float(np.abs(rest).max()) if rest.size else 0.0,
        })
    variation = {}
    big = [r for r in rows if r["n"] >= 100]
    for key in ("origin_component_size", "outer_radius"):
        vals = [r[key] for r in big]
        if len(vals) >= 2 and max(vals) > 0:
            variation[key] = (max(vals) - min(vals)) / max(vals)
        else:
            variation[key] = 0.0
        if variation[key] >= tolerance:
            log.info("ratio probe: %s varies by %.1f%% across pairs", key, 100 * variation[key])
    return {
        "ratio": str(next(iter(ratios))),
        "delta": delta,
        "a": complex(a),
        "eps": eps,
        "pairs": rows,
        "variation": variation,
        "within_tolerance": all(v < tolerance for v in variation.values()),
        "degenerate": len(rows) == 1,
    }

