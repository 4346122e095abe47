import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslab import DomainError
from pslab.errors import SingularShiftError
from pslab.linalg import eigenvalues, matrix_2norm, singular_min, singular_values, solve_shifted
from pslab.model import ModelSpec, build_model, build_shift_power


def test_diagonal_eigenvalues():
    w = eigenvalues(np.diag([1, 2j, -3])).values
    assert sorted(w, key=lambda z: (z.real, z.imag)) == [-3, 2j, 1]


def test_terminal_state_eigenvalues():
    w = eigenvalues(build_model(ModelSpec(1, 200, 200, 0.01))).values
    w = w[np.argsort(-abs(w))]
    assert abs(w[0] - 2) < 1e-10
    assert np.abs(w[1:]).max() < 1e-10


def test_companion_matrix():
    comp = np.array([[4, 1], [1, 0]], dtype=complex)  # char poly z^2 - 4z - 1
    w = np.sort_complex(eigenvalues(comp).values)
    assert np.allclose(w, [2 - np.sqrt(5), 2 + np.sqrt(5)], atol=1e-13)


def test_vectors_and_backward_error():
    a = np.random.default_rng(0).standard_normal((20, 20))
    r = eigenvalues(a, vectors=True)
    assert r.vectors.shape == (20, 20)
    assert r.backward_error < 1e-13


def test_rejects_nonsquare_and_nonfinite():
    with pytest.raises(DomainError):
        eigenvalues(np.ones((2, 3)))
    with pytest.raises(DomainError):
        eigenvalues(np.array([[np.nan]]))


@pytest.mark.parametrize("n", [1, 4, 9])
def test_singular_min_of_shift(n):
    assert singular_min(build_shift_power(n, 1)) == 0


def test_singular_min_examples():
    assert abs(singular_min(np.eye(5)) - 1) < 1e-15
    assert abs(singular_min(np.diag([3, 0.5])) - 0.5) < 1e-15


@pytest.mark.parametrize(
    "a, expected",
    [(np.ones((7, 7)), 7.0), (build_shift_power(10, 1), 1.0), (0.01 * np.ones((200, 200)), 2.0)],
)
def test_matrix_2norm_examples(a, expected):
    assert abs(matrix_2norm(a) - expected) < 1e-12 * expected


@given(st.integers(1, 15), st.integers(0, 2**32 - 1))
def test_matrix_2norm_matches_svd(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    assert abs(matrix_2norm(a) - singular_values(a)[0]) <= 1e-9 * singular_values(a)[0]


def test_solve_shifted_zero_matrix():
    x = solve_shifted(np.zeros((3, 3)), 2.0, np.ones(3))
    assert np.allclose(x, 0.5)


def test_solve_shifted_suffix_sums():
    # (I - S)^{-1} 1 accumulates suffix sums
    x = solve_shifted(build_shift_power(3, 1), 1.0, np.ones(3))
    assert np.allclose(x, [3, 2, 1])


def test_solve_shifted_at_eigenvalue():
    with pytest.raises(SingularShiftError):
        solve_shifted(np.diag([1.0, 2.0]), 2.0, np.ones(2))
