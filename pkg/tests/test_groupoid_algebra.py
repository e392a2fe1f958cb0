import numpy as np
import pytest

from src.cone_sets import INF, BoxRegion, ClopenSet
from src.errors import DimensionMismatch, NotAProjection
from src.gadgets import matrix_unit, proj_cofinite, proj_finite, shift_power
from src.gaussian import ONE, GaussianRational
from src.groupoid_algebra import (
    AlgebraElement,
    adjoint,
    convolve,
    degree_split,
    degree_zero_part,
    identity,
    in_compact_ideal,
    indicator,
    is_degree_zero,
    is_homogeneous,
    kappa,
    lam,
    quotient_equal,
    rank_of_projection,
    restrict_sigma,
    sigma_full,
    slot_element,
    tensor,
    trace,
    value_at,
    zero,
)
from src.sampling import random_element


def test_shift_is_an_isometry():
    s = shift_power(1)
    assert convolve(adjoint(s), s) == identity(1)
    assert convolve(s, adjoint(s)) == proj_cofinite(1)


def test_matrix_units_multiply():
    assert convolve(matrix_unit(1, 0), matrix_unit(0, 1)) == matrix_unit(1, 1)
    assert convolve(matrix_unit(0, 1), matrix_unit(0, 1)).is_zero()


def test_indicator_clips_to_valid_sources():
    f = indicator(1, (-2,), BoxRegion.full(1))
    assert f == shift_power(-2)
    ((_, term),) = f.terms
    assert term.support == BoxRegion.from_box((ClopenSet.tail_from(2),))


def test_sums_merge_overlapping_supports():
    total = proj_finite(3) + proj_cofinite(1)
    assert value_at(total, (0,), (0,)) == ONE
    assert value_at(total, (0,), (1,)) == GaussianRational(2)
    assert value_at(total, (0,), (7,)) == ONE
    assert (total - total).is_zero()


def test_tensor_matches_slot_placement():
    s = shift_power(1)
    assert tensor(s, identity(1)) == slot_element(2, 1, s)
    assert tensor(identity(1), s) == slot_element(2, 2, s)
    with pytest.raises(DimensionMismatch):
        slot_element(2, 3, s)


def test_degree_grading():
    f = tensor(shift_power(2), shift_power(-1))
    assert is_homogeneous(f, 1)
    g = f + identity(2)
    assert set(degree_split(g)) == {0, 1}
    assert degree_zero_part(g) == identity(2)
    assert is_degree_zero(tensor(shift_power(1), shift_power(-1)))


def test_trace_and_rank():
    assert trace(proj_finite(3)) == GaussianRational(3)
    assert trace(identity(1)) == INF
    assert rank_of_projection(proj_finite(4)).value == 4
    with pytest.raises(NotAProjection):
        rank_of_projection(shift_power(1))


def test_compact_ideal_and_quotient():
    assert in_compact_ideal(proj_finite(2))
    assert not in_compact_ideal(identity(1))
    assert quotient_equal(identity(1), proj_cofinite(5))
    assert not quotient_equal(identity(1), proj_finite(5))


def test_sigma_restrictions():
    s = shift_power(1)
    symbol = sigma_full(s)
    assert [e for e, _ in symbol.parts] == [(1,)]
    assert restrict_sigma(proj_finite(2), [1]).is_zero()
    assert trace(sigma_full(identity(2)).at_one()) == GaussianRational(1)

    f = tensor(s, proj_finite(1))
    assert lam(f).is_zero()
    assert not kappa(f).is_zero()
    assert kappa(f).at_one() == proj_finite(1)


def test_sigma_is_multiplicative():
    rng = np.random.default_rng(3)
    for _ in range(5):
        f = random_element(2, rng, max_terms=2, max_shift=2, window=4)
        g = random_element(2, rng, max_terms=2, max_shift=2, window=4)
        assert restrict_sigma(convolve(f, g), [2]) == restrict_sigma(f, [2]) * restrict_sigma(g, [2])


def test_star_algebra_laws_on_random_elements():
    rng = np.random.default_rng(11)
    for _ in range(10):
        f, g, h = (random_element(1, rng) for _ in range(3))
        assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))
        assert adjoint(convolve(f, g)) == convolve(adjoint(g), adjoint(f))
        assert adjoint(adjoint(f)) == f


def test_ambient_mismatch():
    with pytest.raises(DimensionMismatch):
        convolve(identity(1), identity(2))
    with pytest.raises(DimensionMismatch):
        identity(1) + zero(2)


def test_json_round_trip():
    f = tensor(shift_power(-1), proj_finite(2)).scale(GaussianRational(1, -1)) + identity(2)
    assert AlgebraElement.from_json(f.to_json()) == f
