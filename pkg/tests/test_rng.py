import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pslab.rng import _unit, complex_gaussian, philox4x32


def _block(ctr, key):
    out = philox4x32([np.uint32(c) for c in ctr], key)
    return tuple(int(x) for x in out)


# Random123 known-answer vectors for philox4x32-10
@pytest.mark.parametrize(
    "ctr, key, expected",
    [
        ((0, 0, 0, 0), (0, 0), (0x6627E8D5, 0xE169C58D, 0xBC57AC4C, 0x9B00DBD8)),
        ((0xFFFFFFFF,) * 4, (0xFFFFFFFF, 0xFFFFFFFF), (0x408F276D, 0x41C83B0E, 0xA20BC7C6, 0x6D5451FD)),
        (
            (0x243F6A88, 0x85A308D3, 0x13198A2E, 0x03707344),
            (0xA4093822, 0x299F31D0),
            (0xD16CFE09, 0x94FDCCEB, 0x5001E420, 0x24126EA1),
        ),
    ],
)
def test_philox_known_answers(ctr, key, expected):
    assert _block(ctr, key) == expected


def test_unit_range():
    top = np.uint32(0xFFFFFFFF)
    assert _unit(np.uint32(0), np.uint32(0)) == 0.0
    assert _unit(top, top) < 1.0


def test_same_seed_same_matrix():
    a = complex_gaussian(11, (5, 7), stream=3)
    b = complex_gaussian(11, (5, 7), stream=3)
    assert np.array_equal(a, b)


@given(st.integers(0, 2**64 - 1), st.integers(0, 2**40), st.integers(1, 9), st.integers(1, 9))
def test_entries_independent_of_shape(seed, stream, rows, cols):
    big = complex_gaussian(seed, (9, 9), stream)
    small = complex_gaussian(seed, (rows, cols), stream)
    assert np.array_equal(big[:rows, :cols], small)


def test_streams_and_seeds_differ():
    a = complex_gaussian(1, (4, 4), 0)
    assert not np.array_equal(a, complex_gaussian(1, (4, 4), 1))
    assert not np.array_equal(a, complex_gaussian(2, (4, 4), 0))


def test_moments():
    z = complex_gaussian(2024, (400, 400)).ravel()
    # X and Y are standard normals: E|Z|^2 = 2
    assert abs(z.real.mean()) < 0.01 and abs(z.imag.mean()) < 0.01
    assert abs(z.real.var() - 1) < 0.01 and abs(z.imag.var() - 1) < 0.01
    assert abs(np.corrcoef(z.real, z.imag)[0, 1]) < 0.01


def test_seed_range_checked():
    with pytest.raises(ValueError):
        complex_gaussian(-1, (2, 2))
    with pytest.raises(ValueError):
        complex_gaussian(2**64, (2, 2))
