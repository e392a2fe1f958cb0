import numpy as np

from src.groupoid_algebra import is_homogeneous
from src.matrix_ops import is_projection, is_unitary
from src.sampling import (
    random_diagonal_projection,
    random_element,
    random_unitary,
    sample_degree_elements,
)


def test_same_seed_same_elements():
    a = random_element(2, np.random.default_rng(42))
    b = random_element(2, np.random.default_rng(42))
    assert a == b
    assert sample_degree_elements(2, 1, 3, 9) == sample_degree_elements(2, 1, 3, 9)


def test_degree_samples_are_homogeneous():
    for degree in (-2, 0, 3):
        for f in sample_degree_elements(3, degree, 4, seed=1):
            assert is_homogeneous(f, degree)


def test_random_projections_and_unitaries():
    rng = np.random.default_rng(0)
    for size in (1, 2, 3):
        p, symbol_rank, finite_rank = random_diagonal_projection(rng, size)
        assert is_projection(p)
        assert 0 <= symbol_rank <= size
        assert finite_rank >= 0
        assert is_unitary(random_unitary(rng, size))
