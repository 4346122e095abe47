"""Simultaneous polynomial root finding (Ehrlich-Aberth) with Newton polishing.

Coefficients are stored in ascending order: ``coeffs[k]`` multiplies ``z**k``.
Evaluation switches to the reversed polynomial in ``1/z`` for ``|z| > 1`` so
high-degree polynomials with large roots do not overflow.
"""

from dataclasses import dataclass

import numpy as np

from pslab.errors import DomainError, RootFindingError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ComplexPolynomial:
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.ndim != 1 or c.size == 0:
            raise DomainError("polynomial needs a nonempty 1-d coefficient sequence")
        if c[-1] == 0:
            raise DomainError("leading coefficient must be nonzero")
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        return horner(self.coeffs, z)


def horner(coeffs, z):
    z = np.asarray(z, dtype=np.complex128)
    acc = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        acc = acc * z + c
    return acc


def _eval_scaled(coeffs, z):
    """Return (p/p', backward error) at each z, overflow-safe.

    The backward error is |p(z)| / sum_k |c_k| |z|^k.
    """
    d = coeffs.size - 1
    z = np.asarray(z, dtype=np.complex128)
    absc = np.abs(coeffs)
    big = np.abs(z) > 1.0
    ratio = np.empty(z.shape, dtype=np.complex128)
    berr = np.empty(z.shape, dtype=float)

    small = ~big
    if small.any():
        x = z[small]
        p = np.full(x.shape, coeffs[-1], dtype=np.complex128)
        dp = np.zeros(x.shape, dtype=np.complex128)
        s = np.full(x.shape, absc[-1])
        ax = np.abs(x)
        for k in range(d - 1, -1, -1):
            dp = dp * x + p
            p = p * x + coeffs[k]
            s = s * ax + absc[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[small] = p / dp
        with np.errstate(divide="ignore", invalid="ignore"):
            berr[small] = np.where(s > 0, np.abs(p) / s, 0.0)

    if big.any():
        # p(z) = z^d q(w), w = 1/z, q(w) = sum_k c_k w^(d-k)
        # p/p' = z q / (d q - w q')
        w = 1.0 / z[big]
        q = np.full(w.shape, coeffs[0], dtype=np.complex128)
        dq = np.zeros(w.shape, dtype=np.complex128)
        s = np.full(w.shape, absc[0])
        aw = np.abs(w)
        for k in range(1, d + 1):
            dq = dq * w + q
            q = q * w + coeffs[k]
            s = s * aw + absc[k]
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio[big] = q / (d * q - w * dq) / w
        berr[big] = np.abs(q) / s
    return ratio, berr


def backward_error(coeffs, z) -> np.ndarray:
    """|p(z)| / sum_k |c_k| |z|^k, the relative coefficient perturbation making z exact."""
    return _eval_scaled(np.asarray(coeffs, dtype=np.complex128), z)[1]


def initial_guesses(coeffs) -> np.ndarray:
    """Starting points on circles read off the Newton polygon of log|c_k|."""
    d = coeffs.size - 1
    absc = np.abs(coeffs)
    nz = np.flatnonzero(absc > 0)
    logs = np.log(absc[nz])
    # upper convex hull of (k, log|c_k|)
    hull = []
    for k, y in zip(nz, logs):
        while len(hull) >= 2:
            (k1, y1), (k2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (k - k1) <= (y - y1) * (k2 - k1):
                hull.pop()
            else:
                break
        hull.append((k, y))
    z = np.empty(d, dtype=np.complex128)
    pos = 0
    sigma = 0.7
    for (k1, y1), (k2, y2) in zip(hull, hull[1:]):
        count = k2 - k1
        radius = np.exp((y1 - y2) / count)
        angles = 2 * np.pi * np.arange(count) / count + 2 * np.pi * pos / d + sigma
        z[pos:pos + count] = radius * np.exp(1j * angles)
        pos += count
    return z


def _aberth(coeffs, z, max_iter):
    d = z.size
    active = np.ones(d, dtype=bool)
    stop = 4 * _EPS
    for it in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            return z, it
        ratio, berr = _eval_scaled(coeffs, z[idx])
        diff = z[idx, None] - z[None, :]
        diff[np.arange(idx.size), idx] = np.inf
        recip = (1.0 / diff).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = ratio / (1.0 - ratio * recip)
        exact = berr == 0
        step[exact] = 0
        step[~np.isfinite(step)] = 0
        z[idx] = z[idx] - step
        done = exact | (berr <= stop) | (np.abs(step) <= stop * np.abs(z[idx]))
        active[idx[done]] = False
    return z, max_iter


def _polish(coeffs, z, sweeps=3):
    for _ in range(sweeps):
        ratio, berr = _eval_scaled(coeffs, z)
        if z.size > 1:
            gap = np.abs(z[:, None] - z[None, :])
            np.fill_diagonal(gap, np.inf)
            sep = gap.min(axis=1)
        else:
            sep = np.full(z.shape, np.inf)
        ok = np.isfinite(ratio) & (np.abs(ratio) < sep / 3)
        cand = np.where(ok, z - np.where(ok, ratio, 0), z)
        _, new_berr = _eval_scaled(coeffs, cand)
        better = ok & (new_berr < berr)
        if not better.any():
            break
        z = np.where(better, cand, z)
    return z


def solve_polynomial(poly, tol: float = 1e-12, max_iter: int = 1000) -> np.ndarray:
    """All ``degree`` roots of ``poly`` (a ComplexPolynomial or ascending coefficients).

    Raises RootFindingError, carrying the best iterate and its backward errors,
    when some root fails ``backward_error <= tol`` after ``max_iter`` sweeps.
    """
    if not isinstance(poly, ComplexPolynomial):
        poly = ComplexPolynomial(poly)
    c = poly.coeffs
    if poly.degree < 1:
        raise DomainError("polynomial degree must be at least 1")
    # exact zero roots are split off first
    lead_zero = int(np.argmax(c != 0))
    c = c[lead_zero:]
    d = c.size - 1
    if d == 0:
        return np.zeros(lead_zero, dtype=np.complex128)
    if d == 1:
        roots = np.array([-c[0] / c[1]])
    else:
        roots, _ = _aberth(c, initial_guesses(c), max_iter)
        roots = _polish(c, roots)
    berr = backward_error(c, roots)
    if not (np.all(np.isfinite(roots)) and np.all(berr <= tol)):
        raise RootFindingError(
            f"root finder did not reach backward error {tol:g} within {max_iter} iterations "
            f"(worst {np.nanmax(berr):.3g})",
            roots=roots,
            residuals=berr,
        )
    return np.concatenate([np.zeros(lead_zero, dtype=np.complex128), roots])
