"""Resolvent norms and epsilon-pseudospectra on rectangular grids."""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from pslab.errors import DomainError
from pslab.linalg import eigenvalues, matrix_2norm, singular_min
from pslab.rng import complex_gaussian

# default epsilon ladder 1e-1 ... 1e-8
EPS_LADDER = tuple(10.0 ** -k for k in range(1, 9))


@dataclass(frozen=True)
class GridRegion:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int
    ny: int

    def __post_init__(self):
        vals = (self.re_min, self.re_max, self.im_min, self.im_max)
        if not all(math.isfinite(v) for v in vals):
            raise DomainError("grid bounds must be finite")
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("grid needs re_min < re_max and im_min < im_max")
        if self.nx < 2 or self.ny < 2:
            raise DomainError("grid needs at least 2 nodes per axis")

    @property
    def dx(self) -> float:
        return (self.re_max - self.re_min) / (self.nx - 1)

    @property
    def dy(self) -> float:
        return (self.im_max - self.im_min) / (self.ny - 1)

    @property
    def re(self) -> np.ndarray:
        return self.re_min + np.arange(self.nx) * self.dx

    @property
    def im(self) -> np.ndarray:
        return self.im_min + np.arange(self.ny) * self.dy

    def nodes(self) -> np.ndarray:
        """ny x nx array of complex nodes; row j has imaginary part im[j]."""
        return self.re[None, :] + 1j * self.im[:, None]


@dataclass(frozen=True)
class PseudospectrumGrid:
    region: GridRegion
    sigma: np.ndarray

    @property
    def log_resolvent(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return -np.log10(self.sigma)


@dataclass(frozen=True)
class OriginComponent:
    area: float
    max_abs: float
    cells: int


@dataclass(frozen=True)
class ContainmentReport:
    violations: int
    max_margin: float
    perturbed_eigenvalues: np.ndarray


def resolvent_norm_at(a, z: complex) -> float:
    """||(zI - A)^{-1}||_2 = 1 / sigma_min(zI - A); inf once sigma_min < 1e-300."""
    a = np.asarray(a, dtype=np.complex128)
    s = singular_min(z * np.eye(a.shape[0]) - a)
    return math.inf if s < 1e-300 else 1.0 / s


def _sigma_rows(a, zs):
    eye = np.eye(a.shape[0])
    return np.array([[singular_min(z * eye - a) for z in row] for row in zs])


def grid_scan(a, region: GridRegion, workers: int = 1) -> PseudospectrumGrid:
    """sigma_min(zI - A) at every node; rows are split across ``workers`` processes."""
    a = np.ascontiguousarray(a, dtype=np.complex128)
    zs = region.nodes()
    if workers <= 1:
        sigma = _sigma_rows(a, zs)
    else:
        chunks = np.array_split(np.arange(region.ny), workers)
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sigma_rows, [a] * len(chunks), [zs[c] for c in chunks]))
        sigma = np.vstack([p for p in parts if p.size])
    return PseudospectrumGrid(region=region, sigma=sigma)


def epsilon_region_containing_origin(grid: PseudospectrumGrid, eps: float) -> OriginComponent:
    """4-connected component of {sigma < eps} containing the node nearest 0."""
    r = grid.region
    if eps <= 0:
        raise DomainError("eps must be positive")
    if not (r.re_min <= 0 <= r.re_max and r.im_min <= 0 <= r.im_max):
        raise DomainError("grid region does not contain the origin")
    j0 = int(round(-r.im_min / r.dy))
    k0 = int(round(-r.re_min / r.dx))
    mask = grid.sigma < eps
    if not mask[j0, k0]:
        return OriginComponent(area=0.0, max_abs=0.0, cells=0)
    labels, _ = ndimage.label(mask)  # default structure is 4-connected
    comp = labels == labels[j0, k0]
    cells = int(comp.sum())
    return OriginComponent(
        area=cells * r.dx * r.dy,
        max_abs=float(np.abs(r.nodes()[comp]).max()),
        cells=cells,
    )


def perturbation_containment_check(a, eps: float, trials: int, seed: int, fraction: float = 0.99) -> ContainmentReport:
    """Check sigma(A + E) lies in the eps-pseudospectrum for random ||E|| = fraction * eps."""
    if eps <= 0 or trials < 1:
        raise DomainError("need eps > 0 and trials >= 1")
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    tol = 1e-8 * matrix_2norm(a)
    eye = np.eye(n)
    violations = 0
    worst = -math.inf
    perturbed = np.empty((trials, n), dtype=np.complex128)
    for t in range(trials):
        e = complex_gaussian(seed, (n, n), stream=t)
        e *= fraction * eps / matrix_2norm(e)
        mu = eigenvalues(a + e).values
        perturbed[t] = mu
        for z in mu:
            margin = singular_min(z * eye - a) - eps
            worst = max(worst, margin)
            if margin > tol:
                violations += 1
    return ContainmentReport(violations=violations, max_margin=worst, perturbed_eigenvalues=perturbed)
