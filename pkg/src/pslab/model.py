"""Matrices of the two deterministic processes and the Gaussian-perturbed one.

All constructors return dense ``complex128`` arrays flagged read-only.
"""

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from pslab.errors import DomainError
from pslab.rng import complex_gaussian


class Model(IntEnum):
    MODEL1 = 1  # S^m + delta J
    MODEL2 = 2  # S^m + a S^{m+1} + delta J


@dataclass(frozen=True)
class ModelSpec:
    model: Model
    n: int
    m: int
    delta: complex
    a: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "model", Model(self.model))
        object.__setattr__(self, "delta", complex(self.delta))
        object.__setattr__(self, "a", complex(self.a))
        if self.n < 1:
            raise DomainError(f"matrix size n must be >= 1, got n={self.n}")
        if not 1 <= self.m <= self.n:
            raise DomainError(f"time index must satisfy 1 <= m <= n, got m={self.m}, n={self.n}")

    @property
    def coefficient(self) -> complex:
        """Weight of S^{m+1} (zero for model 1)."""
        return self.a if self.model == Model.MODEL2 else 0j

    def with_m(self, m: int) -> "ModelSpec":
        return ModelSpec(self.model, self.n, m, self.delta, self.a)


@dataclass(frozen=True)
class RandomMatrixSpec:
    n: int
    m: int
    delta: complex
    seed: int
    stream: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"matrix size n must be >= 1, got n={self.n}")
        if not 1 <= self.m <= self.n:
            raise DomainError(f"time index must satisfy 1 <= m <= n, got m={self.m}, n={self.n}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def _frozen(a):
    a.flags.writeable = False
    return a


def build_shift_power(n: int, m: int) -> np.ndarray:
    """n x n matrix with ones on the m-th superdiagonal (S^m)."""
    if n < 1 or m < 0:
        raise DomainError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    return _frozen(np.eye(n, k=m, dtype=np.complex128))


def toeplitz_part(spec: ModelSpec) -> np.ndarray:
    """S^m + a S^{m+1}, the banded part without the rank-1 term."""
    t = np.eye(spec.n, k=spec.m, dtype=np.complex128)
    if spec.model == Model.MODEL2 and spec.m + 1 < spec.n:
        t += spec.a * np.eye(spec.n, k=spec.m + 1)
    return t


def build_model(spec: ModelSpec) -> np.ndarray:
    a = toeplitz_part(spec)
    a += spec.delta
    return _frozen(a)


def build_random_perturbed(spec: RandomMatrixSpec) -> np.ndarray:
    """S^m + delta Z with Z entries drawn from the keyed counter stream."""
    a = np.eye(spec.n, k=spec.m, dtype=np.complex128)
    if spec.delta != 0:
        a += complex(spec.delta) * complex_gaussian(spec.seed, (spec.n, spec.n), spec.stream)
    return _frozen(a)


def ones_quadratic_form(n: int, l: int) -> int:
    """<S^l 1, 1> for the n x n shift: n - l when 0 <= l <= n - 1, else 0.

    l = 0 gives <1, 1> = n, the value of the explicit quadratic form.
    """
    if n < 1 or l < 0:
        raise DomainError(f"need n >= 1 and l >= 0, got n={n}, l={l}")
    return n - l if l <= n - 1 else 0
