import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslab import DomainError
from pslab.model import (
    Model,
    ModelSpec,
    RandomMatrixSpec,
    build_model,
    build_random_perturbed,
    build_shift_power,
    ones_quadratic_form,
    toeplitz_part,
)


def test_shift_n3():
    assert np.array_equal(build_shift_power(3, 1), [[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def test_shift_nilpotent():
    assert not build_shift_power(3, 3).any()


@given(st.integers(1, 12), st.integers(0, 14), st.integers(0, 14))
def test_shift_powers_multiply(n, p, q):
    prod = build_shift_power(n, p) @ build_shift_power(n, q)
    assert np.array_equal(prod, build_shift_power(n, p + q))


def test_shift_square_matches_product():
    s = build_shift_power(4, 1)
    assert np.array_equal(build_shift_power(4, 2), s @ s)


def test_outputs_read_only():
    a = build_model(ModelSpec(Model.MODEL1, 4, 1, 0.1))
    with pytest.raises(ValueError):
        a[0, 0] = 1


def test_model1_small():
    a = build_model(ModelSpec(1, 2, 1, 0.5))
    assert np.array_equal(a, [[0.5, 1.5], [0.5, 0.5]])


def test_model2_nilpotent_part_vanishes():
    a = build_model(ModelSpec(2, 2, 2, 1.0, 7.0))
    assert np.array_equal(a, np.ones((2, 2)))


def test_model2_band():
    t = toeplitz_part(ModelSpec(2, 5, 2, 0.1, 3.0))
    assert np.array_equal(t, np.eye(5, k=2) + 3 * np.eye(5, k=3))


def test_terminal_state_is_rank_one():
    a = build_model(ModelSpec(1, 200, 200, 0.01))
    assert np.allclose(a, 0.01)
    w = np.linalg.eigvals(a)
    assert abs(w[np.argmax(np.abs(w))] - 2) < 1e-10


@pytest.mark.parametrize("n, m", [(0, 1), (5, 0), (5, 6)])
def test_invalid_sizes(n, m):
    with pytest.raises(DomainError):
        ModelSpec(1, n, m, 0.1)


def test_random_deterministic():
    spec = RandomMatrixSpec(30, 2, 0.01, seed=5)
    assert np.array_equal(build_random_perturbed(spec), build_random_perturbed(spec))


def test_random_delta_zero_is_shift():
    a = build_random_perturbed(RandomMatrixSpec(50, 1, 0.0, seed=123))
    assert np.array_equal(a, build_shift_power(50, 1))


def test_random_seed_range():
    with pytest.raises(DomainError):
        RandomMatrixSpec(5, 1, 0.1, seed=-3)


@pytest.mark.parametrize("n, l, expected", [(5, 2, 3), (5, 5, 0), (7, 3, 4), (4, 0, 4)])
def test_ones_quadratic_form_values(n, l, expected):
    assert ones_quadratic_form(n, l) == expected


@given(st.integers(1, 20), st.integers(0, 22))
def test_ones_quadratic_form_brute_force(n, l):
    ones = np.ones(n)
    s = np.linalg.matrix_power(np.eye(n, k=1, dtype=np.int64), l)
    explicit = int(ones @ s @ ones)
    assert ones_quadratic_form(n, l) == explicit
