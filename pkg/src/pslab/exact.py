"""Exact nonzero eigenvalues of the rank-1 perturbed shift processes.

The nonzero eigenvalues of ``T + delta J`` with ``T = S^m`` (model 1) or
``T = S^m + a S^{m+1}`` (model 2) are the roots of a polynomial of degree
``p1 + 1`` with ``p1 = (n - 1) // m``; every other eigenvalue is zero.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from pslab.errors import DomainError
from pslab.linalg import matrix_2norm
from pslab.model import Model, ModelSpec, build_model, toeplitz_part
from pslab.roots import ComplexPolynomial, backward_error, solve_polynomial


@dataclass(frozen=True)
class PIndices:
    p1: int
    p2: int
    correction_active: bool
    in_I: bool
    in_T: bool


@dataclass(frozen=True)
class ExactSpectrum:
    spec: ModelSpec
    nonzero_roots: np.ndarray
    outlier_index: int
    zero_algebraic_multiplicity: int
    zero_geometric_multiplicity: int
    max_residual: float

    @property
    def outlier(self) -> complex:
        return complex(self.nonzero_roots[self.outlier_index])

    @property
    def non_outlier_roots(self) -> np.ndarray:
        return np.delete(self.nonzero_roots, self.outlier_index)

    def all_eigenvalues(self) -> np.ndarray:
        zeros = np.zeros(self.zero_algebraic_multiplicity, dtype=np.complex128)
        return np.concatenate([self.nonzero_roots, zeros])


@dataclass(frozen=True)
class RoucheRegions:
    r_plus: float
    r_minus: float
    outer_radius: float


@dataclass(frozen=True)
class RootCounts:
    outer: int
    gap: int
    inner: int
    outside: int


@dataclass(frozen=True)
class ZeroMultiplicities:
    algebraic: int
    geometric: int
    defective: bool


def compute_p_indices(n: int, m: int) -> PIndices:
    if n < 1 or not 1 <= m <= n:
        raise DomainError(f"need 1 <= m <= n, got n={n}, m={m}")
    p1 = (n - 1) // m
    p2 = (n - 1) // (m + 1)
    active = p1 >= p2 + 1 and (m + 1) * p1 >= n + 1
    in_i = n >= 2 and math.isqrt(n - 2) + 1 <= m <= n - 1  # ceil(sqrt(n-1)) = isqrt(n-2) + 1
    # m = (n-1)//k for some k iff (n-1)//((n-1)//m) == m
    in_t = 1 <= m <= n - 1 and (n - 1) // ((n - 1) // m) == m
    return PIndices(p1=p1, p2=p2, correction_active=active, in_I=in_i, in_T=in_t)


def _require_delta(spec: ModelSpec):
    if spec.delta == 0:
        raise DomainError("delta must be nonzero for the exact characteristic equation")
    if spec.model == Model.MODEL2 and spec.a == -1:
        raise DomainError("model 2 with a = -1 is not supported (the normalized equation divides by 1 + a)")


def correction_sum(n: int, m: int, a: complex, k: int) -> complex:
    """Inner binomial sum of the model-2 correction for the z^k coefficient.

    sum_{q = n - m(p1-k) + 1}^{p1-k} a^q C(p1-k, q) [q - (n - m(p1-k))] / n
    """
    p1 = (n - 1) // m
    j = p1 - k
    base = n - m * j
    total = 0j
    for q in range(max(base + 1, 0), j + 1):
        try:
            total += a**q * float(math.comb(j, q)) * (q - base) / n
        except OverflowError as exc:
            raise DomainError(f"binomial weights overflow double precision (n={n}, m={m})") from exc
    return total


def truncated_binomial_sum(n: int, m: int, a: complex, k: int) -> complex:
    """sum_{q=0}^{n - m j - 1} C(j, q) a^q (n - m j - q) / n with j = p1 - k.

    Equal to (1+a)^j (1 - j mu) minus the correction sum, but summed term by
    term: the closed form subtracts two nearly equal large numbers once
    (1+a)^j is big, while here no cancellation occurs for a > 0.
    """
    p1 = (n - 1) // m
    j = p1 - k
    base = n - m * j
    terms = []
    for q in range(0, min(j, base - 1) + 1):
        try:
            terms.append(a**q * float(math.comb(j, q)) * (base - q) / n)
        except OverflowError as exc:
            raise DomainError(f"binomial weights overflow double precision (n={n}, m={m})") from exc
    re = math.fsum(t.real for t in np.asarray(terms, dtype=np.complex128))
    im = math.fsum(t.imag for t in np.asarray(terms, dtype=np.complex128))
    return complex(re, im)


def assemble_charpoly(spec: ModelSpec) -> ComplexPolynomial:
    """Monic polynomial whose roots are the nonzero eigenvalues."""
    _require_delta(spec)
    n, m = spec.n, spec.m
    idx = compute_p_indices(n, m)
    p1 = idx.p1
    nd = n * spec.delta
    c = np.zeros(p1 + 2, dtype=np.complex128)
    c[p1 + 1] = 1.0
    k = np.arange(p1 + 1)
    if spec.model == Model.MODEL1:
        c[: p1 + 1] = -nd * (1.0 - (p1 - k) * m / n)
        return ComplexPolynomial(c)

    a = spec.a
    mu = m / n + a / ((1 + a) * n)
    with np.errstate(over="raise", invalid="raise"):
        try:
            c[: p1 + 1] = -nd * (1 + a) ** (p1 - k).astype(float) * (1.0 - (p1 - k) * mu)
        except FloatingPointError as exc:
            raise DomainError(f"(1 + a)^p1 overflows double precision (p1={p1})") from exc
    if idx.correction_active and a != 0:
        # corrected coefficients: evaluate the cancellation-free equivalent
        for kk in range(p1 - idx.p2):
            c[kk] = -nd * truncated_binomial_sum(n, m, a, kk)
    if not np.all(np.isfinite(c)):
        raise DomainError("characteristic polynomial coefficients are not finite")
    return ComplexPolynomial(c)


def exact_spectrum(spec: ModelSpec, tol: float = 1e-12, max_iter: int = 1000) -> ExactSpectrum:
    poly = assemble_charpoly(spec)
    roots = solve_polynomial(poly, tol=tol, max_iter=max_iter)
    mods = np.abs(roots)
    # largest modulus, ties broken by larger real part
    order = np.lexsort((roots.real, mods))
    zm = zero_multiplicities(spec)
    return ExactSpectrum(
        spec=spec,
        nonzero_roots=roots,
        outlier_index=int(order[-1]),
        zero_algebraic_multiplicity=zm.algebraic,
        zero_geometric_multiplicity=zm.geometric,
        max_residual=float(backward_error(poly.coeffs, roots).max()),
    )


def rouche_regions(n: int, delta_abs: float) -> RoucheRegions:
    nd = n * delta_abs
    if not nd > 3 + 2 * math.sqrt(2):
        raise DomainError(f"Rouche regions undefined: n*|delta| = {nd:g} must exceed 3 + 2*sqrt(2)")
    disc = math.sqrt((nd + 1) ** 2 - 8 * nd)
    return RoucheRegions(r_plus=(nd + 1 + disc) / 2, r_minus=(nd + 1 - disc) / 2, outer_radius=nd + 1)


def classify_roots(roots, regions: RoucheRegions) -> RootCounts:
    r = np.abs(np.asarray(roots, dtype=np.complex128))
    return RootCounts(
        outer=int(np.count_nonzero((r >= regions.r_plus) & (r < regions.outer_radius))),
        gap=int(np.count_nonzero((r > regions.r_minus) & (r < regions.r_plus))),
        inner=int(np.count_nonzero(r <= regions.r_minus)),
        outside=int(np.count_nonzero(r >= regions.outer_radius)),
    )


def catalan(k: int) -> int:
    if not 0 <= k <= 30:
        raise DomainError(f"Catalan index must lie in [0, 30], got {k}")
    return math.comb(2 * k, k) // (k + 1)


def outlier_series(spec: ModelSpec, order: int) -> complex:
    """Truncated Catalan expansion of the outlier eigenvalue.

    Model 2 uses the substitution nd -> nd/(1+a), m/n -> m/n + a/((1+a)n),
    z -> z/(1+a); its O((n delta)^-p2) correction is not included.
    """
    n, m = spec.n, spec.m
    p1 = (n - 1) // m
    nd = n * spec.delta
    if not abs(nd) > 1:
        raise DomainError(f"series needs |n delta| > 1, got {abs(nd):g}")
    if not 0 <= order <= p1:
        raise DomainError(f"order must lie in [0, p1={p1}], got {order}")
    if p1 == 0:
        return complex(nd)
    if order > 30:
        raise DomainError("orders above 30 exceed the exact Catalan range")
    s = spec.coefficient
    scale = 1 + s
    mu = m / n + s / (scale * n)
    x = scale / nd
    total = sum(catalan(k) * mu ** (k + 1) * x**k for k in range(order))
    return complex(nd + scale - scale * total)


def eigenvector_for(spec: ModelSpec, lam: complex, rtol: float = 1e-8) -> np.ndarray:
    """Eigenvector delta (lam I - T)^{-1} 1, normalized to have entry sum 1."""
    if lam == 0:
        raise DomainError("eigenvector_for needs a nonzero eigenvalue")
    _require_delta(spec)
    n = spec.n
    shifted = lam * np.eye(n) - toeplitz_part(spec)
    # lam I - T is upper triangular with nonzero diagonal
    v = spec.delta * sla.solve_triangular(shifted, np.ones(n, dtype=np.complex128), check_finite=False)
    total = v.sum()
    if total == 0 or not np.all(np.isfinite(v)):
        raise DomainError(f"cannot normalize eigenvector at lambda={lam!r}")
    v = v / total
    a = build_model(spec)
    res = np.linalg.norm(a @ v - lam * v)
    bound = rtol * matrix_2norm(a) * np.linalg.norm(v)
    if res > bound:
        raise DomainError(f"lambda={lam!r} is not an eigenvalue: residual {res:.3g} exceeds {bound:.3g}")
    return v


def zero_multiplicities(spec: ModelSpec) -> ZeroMultiplicities:
    p1 = (spec.n - 1) // spec.m
    alg = spec.n - p1 - 1
    geo = spec.m - 1
    return ZeroMultiplicities(algebraic=alg, geometric=geo, defective=geo < alg)
