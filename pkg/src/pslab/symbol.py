"""Symbol curves of the banded Toeplitz operators S^m + a S^{m+1}.

The symbol is f(z) = z^m + a z^{m+1}; its curve is f on the unit circle.
"""

import math
from dataclasses import dataclass

import numpy as np

from pslab.errors import DomainError
from pslab.model import Model, ModelSpec

DEFAULT_SAMPLES = 4096
_MAX_REFINE = 40


class OnCurveError(DomainError):
    pass


@dataclass(frozen=True)
class SymbolCurve:
    m: int
    a: complex
    thetas: np.ndarray
    points: np.ndarray

    @property
    def tolerance(self) -> float:
        return 1e-9 + 1e-6 * abs(1 + self.a)


@dataclass(frozen=True)
class AsymptoticPrediction:
    points: np.ndarray
    excluded_point: complex


@dataclass(frozen=True)
class PredictionDeviation:
    max_deviation: float
    mean_deviation: float


def symbol_eval(m: int, a: complex, theta):
    if m < 1:
        raise DomainError(f"symbol needs m >= 1, got {m}")
    z = np.exp(1j * np.asarray(theta, dtype=float))
    return z**m + a * z ** (m + 1)


def symbol_curve(m: int, a: complex = 0.0, samples: int = DEFAULT_SAMPLES) -> SymbolCurve:
    thetas = 2 * np.pi * np.arange(samples) / samples
    return SymbolCurve(m=m, a=complex(a), thetas=thetas, points=symbol_eval(m, a, thetas))


def _closed(curve_thetas, curve_points):
    th = np.append(curve_thetas, 2 * np.pi)
    pts = np.append(curve_points, curve_points[0])
    return th, pts


def _segment_distance(p0, p1, w):
    seg = p1 - p0
    len2 = np.abs(seg) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(len2 > 0, ((w - p0) * np.conj(seg)).real / len2, 0.0)
    t = np.clip(t, 0.0, 1.0)
    return np.abs(w - (p0 + t * seg))


def distance_to_curve(curve: SymbolCurve, w: complex) -> float:
    """Distance from w to the closed piecewise-linear interpolant of the samples."""
    _, pts = _closed(curve.thetas, curve.points)
    return float(_segment_distance(pts[:-1], pts[1:], w).min())


def winding_number(curve: SymbolCurve, w: complex) -> int:
    """Winding number of the symbol curve about w.

    Intervals are bisected (re-evaluating the symbol) until every argument
    increment is below pi/2 and segments close to w are short enough that the
    polygon cannot cut across the true curve.
    """
    th, pts = _closed(curve.thetas, curve.points)
    tol = curve.tolerance
    for _ in range(_MAX_REFINE):
        dist = _segment_distance(pts[:-1], pts[1:], w)
        if dist.min() <= tol:
            raise OnCurveError(f"point {w!r} lies on the symbol curve (distance {dist.min():.3g})")
        with np.errstate(invalid="ignore", divide="ignore"):
            steps = np.angle((pts[1:] - w) / (pts[:-1] - w))
        seglen = np.abs(np.diff(pts))
        bad = (np.abs(steps) >= np.pi / 2) | ((dist < seglen) & (seglen > 1e-4))
        if not bad.any():
            return int(round(steps.sum() / (2 * np.pi)))
        mids = 0.5 * (th[:-1][bad] + th[1:][bad])
        th = np.sort(np.concatenate([th, mids]))
        pts = symbol_eval(curve.m, curve.a, th)
    raise DomainError(f"winding number about {w!r} did not resolve after {_MAX_REFINE} refinements")


def operator_spectrum_contains(m: int, a: complex, w: complex, samples: int = DEFAULT_SAMPLES) -> bool:
    """Membership of w in the spectrum of the Toeplitz operator with symbol z^m + a z^{m+1}."""
    curve = symbol_curve(m, a, samples)
    try:
        return winding_number(curve, w) != 0
    except OnCurveError:
        return True


def _real_param(x: complex, name: str) -> float:
    if complex(x).imag != 0:
        raise DomainError(f"the asymptotic hypothesis is stated for real {name}, got {x!r}")
    return complex(x).real


def asymptotic_predicted_roots(spec: ModelSpec) -> AsymptoticPrediction:
    n, m = spec.n, spec.m
    if m > n - 1:
        raise DomainError(f"asymptotic configuration needs m <= n - 1, got m={m}, n={n}")
    p1 = (n - 1) // m
    delta = _real_param(spec.delta, "delta")
    if spec.model == Model.MODEL1:
        bound = 4 * m / n**2
        if not delta > bound:
            raise DomainError(f"hypothesis delta > 4m/n^2 fails: {delta:g} <= {bound:g}")
        scale = 1.0 + 0j
    else:
        p2 = (n - 1) // (m + 1)
        if p1 != p2:
            raise DomainError(f"hypothesis p1 = p2 fails: p1={p1}, p2={p2}")
        a = _real_param(spec.a, "a")
        bound = 4 * ((1 + a) * m + a) / n**2
        if not delta > bound:
            raise DomainError(f"hypothesis delta > 4((1+a)m + a)/n^2 fails: {delta:g} <= {bound:g}")
        scale = complex(1 + a)
    ell = np.arange(1, p1 + 1)
    return AsymptoticPrediction(points=scale * np.exp(2j * np.pi * ell / (p1 + 1)), excluded_point=scale)


def greedy_match(a, b):
    """Pairs (i, j) accepted in order of increasing |a_i - b_j|, each index used once."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    d = np.abs(a[:, None] - b[None, :])
    order = np.argsort(d, axis=None, kind="stable")
    used_a = np.zeros(a.size, dtype=bool)
    used_b = np.zeros(b.size, dtype=bool)
    pairs = []
    for flat in order:
        i, j = divmod(int(flat), b.size)
        if used_a[i] or used_b[j]:
            continue
        used_a[i] = used_b[j] = True
        pairs.append((i, j, float(d[i, j])))
        if len(pairs) == min(a.size, b.size):
            break
    return pairs


def compare_to_prediction(roots, prediction: AsymptoticPrediction, outlier: complex) -> PredictionDeviation:
    roots = np.asarray(roots, dtype=np.complex128)
    if roots.size - 1 != prediction.points.size:
        raise DomainError(
            f"expected {prediction.points.size + 1} roots (prediction plus outlier), got {roots.size}"
        )
    drop = int(np.argmin(np.abs(roots - outlier)))
    rest = np.delete(roots, drop)
    if rest.size == 0:
        return PredictionDeviation(0.0, 0.0)
    dists = [d for _, _, d in greedy_match(rest, prediction.points)]
    return PredictionDeviation(max_deviation=max(dists), mean_deviation=math.fsum(dists) / len(dists))
