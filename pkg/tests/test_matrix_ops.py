import pytest

from src.cone_sets import INF, ExtNat
from src.errors import DimensionMismatch, NotAProjection, NotInvertible
from src.gadgets import GadgetName, GadgetSpec, build, proj_cofinite, proj_finite, shift_power
from src.gaussian import GaussianRational
from src.groupoid_algebra import identity, tensor, zero
from src.matrix_ops import (
    AlgMatrix,
    Mode,
    conjugate,
    diag,
    dsum,
    embed_2x2,
    equal,
    identity_matrix,
    is_partial_isometry,
    is_projection,
    is_unitary,
    mat_adjoint,
    mat_trace,
    matrix_rank,
    pad,
    rank_at,
    verify_equivalence,
    zero_matrix,
)


def test_diag_and_dsum_agree():
    a, b = proj_finite(2), proj_cofinite(1)
    assert diag(a, b) == dsum(AlgMatrix.scalar(a), AlgMatrix.scalar(b))
    assert diag(a, b)[0, 1].is_zero()


def test_pad_with_zero_or_identity():
    a = AlgMatrix.scalar(proj_finite(1))
    assert pad(a, 3) == diag(proj_finite(1), zero(1), zero(1))
    assert pad(a, 2, fill_identity=True) == diag(proj_finite(1), identity(1))
    with pytest.raises(DimensionMismatch):
        pad(diag(identity(1), identity(1)), 1)


def test_embed_2x2_places_block():
    w = AlgMatrix.of([[identity(1), shift_power(1)], [zero(1), identity(1)]])
    big = embed_2x2(w, 3, 2, 0)
    assert big[2, 0] == shift_power(1)
    assert big[1, 1] == identity(1)
    assert big[0, 2].is_zero()
    with pytest.raises(DimensionMismatch):
        embed_2x2(w, 3, 1, 1)


def test_isometry_flags():
    s = AlgMatrix.scalar(shift_power(1))
    assert not is_unitary(s)
    assert is_unitary(s, Mode.MOD_COMPACT)
    assert is_partial_isometry(s)


def test_absorbing_unitary_conjugates_finite_corner_away():
    u = build(GadgetSpec(GadgetName.U_PROP3, 1, slot=1))
    assert is_unitary(u)
    p = diag(proj_finite(1), identity(1))
    assert equal(conjugate(u, p), diag(zero(1), identity(1)))
    assert verify_equivalence(p, diag(zero(1), identity(1)), u)


def test_size_alignment_in_equality():
    p = AlgMatrix.scalar(proj_finite(2))
    assert equal(p, diag(proj_finite(2), zero(1), zero(1)))
    assert equal(AlgMatrix.scalar(identity(1)), AlgMatrix.scalar(proj_cofinite(3)), Mode.MOD_COMPACT)
    assert not equal(AlgMatrix.scalar(identity(1)), AlgMatrix.scalar(proj_cofinite(3)))


def test_conjugate_rejects_non_unitary_witness():
    s = AlgMatrix.scalar(shift_power(1))
    p = AlgMatrix.scalar(identity(1))
    with pytest.raises(NotInvertible):
        conjugate(s, p)
    assert not verify_equivalence(p, p, s)
    assert verify_equivalence(p, AlgMatrix.scalar(proj_cofinite(1)), s, Mode.MOD_COMPACT)


def test_trace_and_rank():
    assert mat_trace(diag(proj_finite(2), proj_finite(3))) == GaussianRational(5)
    assert matrix_rank(diag(proj_finite(2), proj_finite(3))) == ExtNat(5)
    assert matrix_rank(diag(identity(1), proj_finite(3))) == INF
    with pytest.raises(NotAProjection):
        matrix_rank(AlgMatrix.scalar(shift_power(1)))


def test_rank_at_the_face_at_infinity():
    p = diag(identity(1), proj_finite(3), proj_cofinite(2))
    assert rank_at(p, [1]) == ExtNat(2)
    q = diag(tensor(identity(1), proj_finite(1)), tensor(proj_finite(1), identity(1)))
    assert rank_at(q, [1]) == ExtNat(1)
    assert rank_at(q, [1, 2]) == ExtNat(0)


def test_adjoint_and_projection_flags():
    x = AlgMatrix.of([[zero(1), shift_power(1)], [zero(1), zero(1)]])
    assert mat_adjoint(x)[1, 0] == shift_power(-1)
    assert is_projection(identity_matrix(2, 3))
    assert is_projection(zero_matrix(1, 2))
    assert not is_projection(x)
