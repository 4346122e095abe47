import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslab import DomainError
from pslab.roots import ComplexPolynomial, backward_error, horner, initial_guesses, solve_polynomial


def _match(found, expected, tol):
    found = list(found)
    for z in expected:
        i = int(np.argmin([abs(f - z) for f in found]))
        assert abs(found[i] - z) <= tol, (z, found[i])
        found.pop(i)


def test_linear():
    nd = 3.7
    assert solve_polynomial(ComplexPolynomial([-nd, 1]))[0] == nd


def test_quadratic_oracle():
    # z^2 - 4z - 1
    roots = solve_polynomial(ComplexPolynomial([-1, -4, 1]))
    _match(roots, [2 + np.sqrt(5), 2 - np.sqrt(5)], 1e-13)


def test_cubic_round_trip():
    c = np.polynomial.polynomial.polyfromroots([1, 2, 3])
    _match(solve_polynomial(ComplexPolynomial(c)), [1, 2, 3], 1e-12)


def test_zero_roots_split_off():
    roots = solve_polynomial(ComplexPolynomial([0, 0, -2, 1]))
    assert sorted(abs(roots)) == [0, 0, 2]


def test_leading_zero_rejected():
    with pytest.raises(DomainError):
        ComplexPolynomial([1, 0])
    with pytest.raises(DomainError):
        ComplexPolynomial([])


def test_horner():
    p = ComplexPolynomial([1, 2, 3])
    assert p(2) == 17
    assert np.allclose(horner(p.coeffs, [0, 1j]), [1, 1 + 2j - 3])


def test_initial_guesses_count_and_scale():
    c = np.polynomial.polynomial.polyfromroots([1e-3, 1, 1e3])
    g = initial_guesses(np.asarray(c, dtype=complex))
    assert g.size == 3
    # Newton-polygon radii bracket the root moduli
    assert min(abs(g)) < 1e-2 and max(abs(g)) > 1e2


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=12))
def test_random_roots_small_backward_error(roots):
    c = np.polynomial.polynomial.polyfromroots(roots)
    if c[-1] == 0 or not np.all(np.isfinite(c)):
        return
    found = solve_polynomial(ComplexPolynomial(c))
    assert found.size == len(roots)
    assert backward_error(np.asarray(c, dtype=complex), found).max() <= 1e-12


def test_unit_roots_high_degree():
    # z^400 - 1
    c = np.zeros(401, dtype=complex)
    c[0], c[-1] = -1, 1
    found = solve_polynomial(ComplexPolynomial(c))
    assert np.allclose(abs(found), 1, atol=1e-12)
    ang = np.sort(np.mod(np.angle(found), 2 * np.pi))
    assert np.allclose(np.diff(ang), 2 * np.pi / 400, atol=1e-10)
