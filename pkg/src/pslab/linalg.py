"""Dense complex linear algebra used as the numerical oracle layer.

Eigenvalues come from LAPACK's Hessenberg reduction plus shifted QR (``zgeev``
through numpy); shifted solves use LU with partial pivoting and a condition
estimate so that shifts sitting on the spectrum are reported, not solved.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from pslab.errors import DomainError, EigensolverError, SingularShiftError

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray
    backward_error: float = float("nan")
    vectors: np.ndarray | None = None


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def eigenvalues(a, vectors: bool = False) -> EigenResult:
    a = _square(a)
    try:
        if vectors:
            w, v = np.linalg.eig(a)
        else:
            w, v = np.linalg.eigvals(a), None
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"QR iteration failed to converge for {a.shape[0]}x{a.shape[0]} matrix: {exc}") from exc
    berr = float("nan")
    if v is not None:
        norm = matrix_2norm(a) if a.size else 0.0
        res = np.linalg.norm(a @ v - v * w, axis=0) / np.maximum(np.linalg.norm(v, axis=0), _EPS)
        berr = float(res.max() / norm) if norm > 0 else float(res.max(initial=0.0))
    return EigenResult(values=w, backward_error=berr, vectors=v)


def singular_values(a) -> np.ndarray:
    a = np.asarray(a, dtype=np.complex128)
    return sla.svdvals(a, check_finite=False)


def singular_min(a) -> float:
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0:
        return 0.0
    return float(singular_values(a)[-1])


def matrix_2norm(a, max_iter: int = 500, rtol: float = 1e-13) -> float:
    """Largest singular value by power iteration on A^H A, with an SVD fallback."""
    a = np.asarray(a, dtype=np.complex128)
    if a.size == 0 or not np.any(a):
        return 0.0
    n = a.shape[1]
    # deterministic, generically non-orthogonal start
    x = np.exp(0.5j * np.arange(n)) * (1.0 + np.arange(n) / n)
    x /= np.linalg.norm(x)
    est = 0.0
    for _ in range(max_iter):
        y = a.conj().T @ (a @ x)
        ny = np.linalg.norm(y)
        if ny == 0:
            break
        new = np.sqrt(ny)
        x = y / ny
        if abs(new - est) <= rtol * new:
            return float(np.linalg.norm(a @ x))
        est = new
    return float(singular_values(a)[0])


def solve_shifted(a, z: complex, b) -> np.ndarray:
    """Solve (zI - A) x = b by LU with partial pivoting.

    Raises SingularShiftError when zI - A is singular to working precision.
    """
    a = _square(a)
    n = a.shape[0]
    b = np.asarray(b, dtype=np.complex128)
    m = z * np.eye(n) - a
    scale = abs(z) + matrix_2norm(a)
    lu, piv = sla.lu_factor(m, check_finite=False)
    # 1-norm reciprocal condition estimate
    rcond, info = sla.lapack.zgecon(lu, np.linalg.norm(m, 1), norm="1")
    if info != 0 or not np.all(np.diag(lu)) or rcond <= n * _EPS:
        raise SingularShiftError(f"zI - A is singular to working precision at z={z!r} (rcond={rcond:.3g})")
    x = sla.lu_solve((lu, piv), b, check_finite=False)
    res = np.linalg.norm(m @ x - b)
    if res > 1e-10 * scale * np.linalg.norm(x):
        raise SingularShiftError(f"shifted solve residual {res:.3g} too large at z={z!r}")
    return x
