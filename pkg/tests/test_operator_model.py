import numpy as np
import pytest

from src.errors import DimensionMismatch
from src.gadgets import proj_finite, shift_power
from src.gaussian import ONE, ZERO
from src.groupoid_algebra import adjoint, convolve, identity
from src.operator_model import matmul, mismatches, to_matrix, window_equal
from src.sampling import random_element


def test_shift_matrix():
    s = to_matrix(shift_power(1), 4)
    assert s[1, 0] == ONE and s[3, 2] == ONE
    assert s[0, 0] == ZERO
    assert to_matrix(proj_finite(2), 4)[1, 1] == ONE
    assert to_matrix(proj_finite(2), 4)[2, 2] == ZERO


def test_truncation_loses_only_the_edge():
    s = to_matrix(shift_power(1), 6)
    s_star = to_matrix(adjoint(shift_power(1)), 6)
    product = matmul(s_star, s)
    exact = to_matrix(convolve(adjoint(shift_power(1)), shift_power(1)), 6)
    assert window_equal(product, exact, 5)
    assert mismatches(product, exact, 6) == [(5, 5)]


def test_convolution_matches_truncated_products():
    rng = np.random.default_rng(5)
    size, window = 24, 12
    for _ in range(10):
        f = random_element(1, rng, max_shift=4, window=6)
        g = random_element(1, rng, max_shift=4, window=6)
        lhs = to_matrix(convolve(f, g), size)
        rhs = matmul(to_matrix(f, size), to_matrix(g, size))
        assert mismatches(lhs, rhs, window) == []


def test_only_one_coordinate():
    with pytest.raises(DimensionMismatch):
        to_matrix(identity(2), 3)


def test_truncations_must_match():
    s4, s5 = to_matrix(shift_power(1), 4), to_matrix(shift_power(1), 5)
    with pytest.raises(DimensionMismatch):
        matmul(s4, s5)
    with pytest.raises(DimensionMismatch):
        window_equal(s4, s4, 5)
    with pytest.raises(DimensionMismatch):
        mismatches(s5, s4, 2)
    assert matmul(s4, s4)[2, 0] == ONE
