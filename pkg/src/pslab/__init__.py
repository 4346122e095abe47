"""Exact spectra and pseudospectra of S^m (+ a S^{m+1}) + delta J."""

from pslab.errors import DomainError, EigensolverError, PslabError, RootFindingError
from pslab.model import Model, ModelSpec, RandomMatrixSpec, build_model, build_random_perturbed, build_shift_power

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "EigensolverError",
    "Model",
    "ModelSpec",
    "PslabError",
    "RandomMatrixSpec",
    "RootFindingError",
    "build_model",
    "build_random_perturbed",
    "build_shift_power",
]
