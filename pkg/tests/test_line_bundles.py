import pytest

from src.errors import DomainError
from src.ktheory import ElementaryProj, K0Class
from src.line_bundles import (
    class_of_L,
    closed_form_matches_recursion,
    decompose_A,
    decompose_L,
    lb_json,
    nu,
    nu_table,
    realize_decomposition,
    standard_token,
    verify_line_bundle_isometries,
)
from src.matrix_ops import Mode, is_projection, matrix_is_degree_zero


def Q(n, t):
    return standard_token(n, t)


@pytest.mark.parametrize("m, l, expected", [(0, 4, 1), (5, 1, 1), (2, 3, 6), (3, 3, 10)])
def test_nu(m, l, expected):
    assert nu(m, l) == expected


def test_nu_domain_and_table():
    with pytest.raises(DomainError):
        nu(-1, 2)
    with pytest.raises(DomainError):
        nu(2, 0)
    table = nu_table(3, 3)
    assert table.shape == (4, 4)
    assert table[2, 3] == 6
    assert table[0, 0] == 0


def test_pascal_rule():
    for m in range(1, 8):
        for l in range(2, 6):
            assert nu(m, l) == nu(m - 1, l) + nu(m, l - 1)


@pytest.mark.parametrize("n, r, l, expected", [
    (3, 4, 1, {1: 1}),
    (3, 2, 2, {1: 2, 2: 1}),
    (4, 1, 3, {1: 1, 2: 1, 3: 1}),
])
def test_decompose_A(n, r, l, expected):
    assert decompose_A(n, r, l) == {Q(n, t): c for t, c in expected.items()}


def test_decompose_A_domain():
    with pytest.raises(DomainError):
        decompose_A(3, 1, 3)
    with pytest.raises(DomainError):
        decompose_A(3, 0, 1)


def test_nonnegative_degree_is_identified_with_one_projection():
    d = decompose_L(3, 2)
    assert d.tokens == {ElementaryProj(3, 3, -2): 1}
    assert d.source == "identification"
    assert str(d) == "1×I⊗I⊗P-2"


@pytest.mark.parametrize("n, k, expected", [
    (3, -1, {1: 1, 2: 1, 3: 1}),
    (4, -2, {1: 4, 2: 3, 3: 2, 4: 1}),
    (3, -2, {1: 3, 2: 2, 3: 1}),
])
def test_negative_degree_closed_form(n, k, expected):
    d = decompose_L(n, k)
    assert d.source == "closed_form"
    assert d.tokens == {Q(n, t): c for t, c in expected.items()}
    assert decompose_L(n, k, method="recursion").tokens == d.tokens


def test_two_coordinates_use_the_recursion():
    d = decompose_L(2, -3)
    assert d.source == "recursion"
    assert d.tokens == {Q(2, 1): 3, Q(2, 2): 1}


@pytest.mark.parametrize("n", [3, 4, 5])
def test_closed_form_agrees_with_recursion(n):
    for k in range(-6, 0):
        assert closed_form_matches_recursion(n, k)


def test_closed_form_range():
    with pytest.raises(DomainError):
        closed_form_matches_recursion(2, -1)
    with pytest.raises(DomainError):
        closed_form_matches_recursion(3, 0)
    with pytest.raises(DomainError):
        decompose_L(1, -1)
    with pytest.raises(DomainError):
        decompose_L(3, -1, method="guess")


def test_classes():
    assert class_of_L(2, 1) == K0Class.of((-1, 1))
    assert class_of_L(3, -1) == K0Class.of((1, 1, 1))
    assert class_of_L(3, 1) + class_of_L(3, -1) - 2 * K0Class.basis(3, 3) == K0Class.of((1, 0, 0))


def test_every_line_bundle_has_rank_one():
    for n in range(2, 6):
        for k in range(-5, 6):
            assert decompose_L(n, k).rank == 1


def test_json_lists_summands_in_slot_order():
    data = lb_json(decompose_L(3, -1))
    assert data == {
        "n": 3,
        "k": -1,
        "summands": [
            {"token": "I⊗P1⊗P1", "mult": 1},
            {"token": "I⊗I⊗P1", "mult": 1},
            {"token": "I⊗I⊗I", "mult": 1},
        ],
        "k0": [1, 1, 1],
        "rank": 1,
        "source": "closed_form",
    }


def test_realization_is_a_degree_zero_projection():
    p = realize_decomposition(decompose_L(2, -2))
    assert (p.rows, p.cols) == (3, 3)
    assert is_projection(p, Mode.MOD_COMPACT)
    assert matrix_is_degree_zero(p)
    assert realize_decomposition(decompose_L(3, 2)).rows == 1


def test_module_isometries():
    report = verify_line_bundle_isometries(2, range(-2, 3), r_range=[1], samples=1)
    assert report.passed, [r.label() for r in report.failures]
    names = {r.name for r in report.results}
    assert {"linebundle.raise_degree", "linebundle.source_action", "chi.Bprime.range"} <= names
    with pytest.raises(DomainError):
        verify_line_bundle_isometries(1, [0])
