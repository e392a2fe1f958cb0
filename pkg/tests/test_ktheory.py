from itertools import product

import pytest

from src.errors import DimensionMismatch, DomainError, ParseError
from src.gadgets import proj_finite
from src.groupoid_algebra import identity, tensor
from src.ktheory import (
    ConeVerdict,
    ElementaryProj,
    K0Class,
    LayerDescriptor,
    class_of_elementary,
    class_of_standard_sum,
    class_of_tokens,
    composition_series,
    cone_contains,
    cone_witness,
    csr_upper,
    gl0_threshold,
    rank_of_class,
    stable_rank,
    v,
)
from src.projection_monoid import StandardSum


def test_class_arithmetic():
    a, b = K0Class.of((1, -2, 3)), K0Class.of((0, 1, 1))
    assert a + b == K0Class.of((1, -1, 4))
    assert a - b == K0Class.of((1, -3, 2))
    assert 2 * b == K0Class.of((0, 2, 2))
    assert K0Class.of((1, 2)).pad(4) == K0Class.of((1, 2, 0, 0))
    assert str(a) == "(1,-2,3)"
    with pytest.raises(DimensionMismatch):
        a + K0Class.of((1, 1))
    with pytest.raises(DimensionMismatch):
        a.pad(2)
    with pytest.raises(DomainError):
        K0Class.basis(2, 3)


def test_class_json():
    c = K0Class.of((5, -2, 7))
    assert K0Class.from_json(c.to_json()) == c
    with pytest.raises(ParseError):
        K0Class.from_json({"n": 2, "coords": [1, 2, 3]})


@pytest.mark.parametrize("n, k, expected", [
    (2, 0, (0, 1)),
    (2, 3, (-3, 1)),
    (3, 1, (0, -1, 1)),
    (3, 2, (1, -2, 1)),
])
def test_v(n, k, expected):
    assert v(n, k).coords == expected


def test_v_ends_in_minus_k_one():
    for n in range(2, 7):
        for k in range(1, 11):
            assert v(n, k).coords[-2:] == (-k, 1)


def test_v_domain():
    with pytest.raises(DomainError):
        v(1, 0)
    with pytest.raises(DomainError):
        v(3, -1)


def test_elementary_tokens():
    assert ElementaryProj(3, 2, 1).token == "I⊗P1⊗P1"
    assert ElementaryProj(3, 3, -2).token == "I⊗I⊗P-2"
    assert ElementaryProj(2, 1, 0).element() == tensor(identity(1), proj_finite(1))
    with pytest.raises(DomainError):
        ElementaryProj(2, 3, 0)


@pytest.mark.parametrize("e, expected", [
    (ElementaryProj(2, 2, 4), (4, 0)),
    (ElementaryProj(3, 2, 1), (1, 0, 0)),
    (ElementaryProj(3, 3, 2), (-1, 2, 0)),
    (ElementaryProj(3, 3, -2), (1, -2, 1)),
    (ElementaryProj(3, 3, 0), (0, 0, 1)),
    (ElementaryProj(1, 1, 3), (0,)),
    (ElementaryProj(1, 1, -3), (1,)),
])
def test_class_of_elementary(e, expected):
    assert class_of_elementary(e).coords == expected


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_finite_and_cofinite_pieces_add_up_to_the_identity(n, k):
    total = class_of_elementary(ElementaryProj(n, n, k)) + class_of_elementary(ElementaryProj(n, n, -k))
    assert total == K0Class.basis(n, n)


def test_lower_slots_embed():
    assert class_of_elementary(ElementaryProj(4, 2, -1)) == v(2, 1).pad(4)
    tokens = {ElementaryProj(3, 1, 0): 2, ElementaryProj(3, 3, -1): 1}
    assert class_of_tokens(3, tokens) == K0Class.of((2, -1, 1))
    with pytest.raises(DimensionMismatch):
        class_of_tokens(2, tokens)


def test_class_of_standard_sum():
    s = StandardSum.make("cpn", 3, [({1, 2}, 2), ({1}, 1)])
    assert class_of_standard_sum(s) == K0Class.of((1, 2, 0))
    with pytest.raises(DomainError):
        class_of_standard_sum(StandardSum.make("cpn", 3, [({2}, 1)]))


@pytest.mark.parametrize("coords, verdict", [
    ((-4, 2, 0), ConeVerdict.IN),
    ((1, 2, -3), ConeVerdict.NOT_IN),
    ((0, -1, 0), ConeVerdict.UNKNOWN),
    ((0, 0, 0), ConeVerdict.IN),
    ((3, -5, 1), ConeVerdict.IN),
])
def test_cone_contains(coords, verdict):
    assert cone_contains(K0Class.of(coords)) == verdict


def test_cone_witness_realizes_every_known_element():
    for coords in product(range(-3, 4), repeat=3):
        c = K0Class.of(coords)
        if cone_contains(c) != ConeVerdict.IN:
            with pytest.raises(DomainError):
                cone_witness(c)
            continue
        tokens = cone_witness(c)
        assert all(mult > 0 for mult in tokens.values())
        assert class_of_tokens(3, tokens) == c


def test_cone_witness_shape():
    tokens = cone_witness(K0Class.of((-4, 2, 0)))
    assert tokens == {ElementaryProj(3, 1, 0): 1, ElementaryProj(3, 2, -5): 1, ElementaryProj(3, 2, 0): 1}


def test_rank():
    assert rank_of_class(K0Class.of((5, -2, 7))) == 7
    assert rank_of_class(K0Class.basis(4, 4)) == 1


@pytest.mark.parametrize("n, expected", [(1, 2), (2, 2), (3, 2), (5, 3)])
def test_stable_rank(n, expected):
    assert stable_rank(n) == expected


def test_structure_numbers():
    assert stable_rank(1, "sphere") == 1
    assert csr_upper(3) == 3
    assert gl0_threshold(2) == 4
    assert gl0_threshold(1) == 1
    with pytest.raises(DomainError):
        stable_rank(0)


def test_composition_series():
    assert composition_series(2) == [
        LayerDescriptor(1, 2, 0), LayerDescriptor(2, 1, 1), LayerDescriptor(1, 0, 2)
    ]
    assert composition_series(1) == [LayerDescriptor(1, 1, 0), LayerDescriptor(1, 0, 1)]
    assert composition_series(2, "sphere") == [LayerDescriptor(2, 1, 1), LayerDescriptor(1, 0, 2)]
    assert LayerDescriptor(2, 1, 1).describe() == "⊕^2 (K(l2(Z>=)) ⊗ C(T))"
    with pytest.raises(DomainError):
        composition_series(2, "cpn")
