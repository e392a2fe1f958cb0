# src/sampling.py
"""Seeded random elements and projections for the identity suites and tests."""

from typing import List, Optional, Tuple

import numpy as np
from sympy.polys.domains import QQ_I

from src.cone_sets import BoxRegion, ClopenSet
from src.gaussian import GaussianRational
from src.gadgets import GadgetName, GadgetSpec, build, matrix_unit, proj_cofinite, proj_finite
from src.groupoid_algebra import AlgebraElement, GroupoidTerm, from_terms, identity, zero
from src.matrix_ops import AlgMatrix, diag, embed_2x2, identity_matrix, mat_mul, pad


def random_clopen(rng: np.random.Generator, window: int = 8, tail_prob: float = 0.4) -> ClopenSet:
    size = int(rng.integers(0, 4))
    finite = frozenset(int(x) for x in rng.integers(0, window + 1, size=size))
    tail = int(rng.integers(0, window + 1)) if rng.random() < tail_prob else None
    return ClopenSet(finite, tail)


def random_region(n: int, rng: np.random.Generator, window: int = 8, boxes: int = 2) -> BoxRegion:
    count = int(rng.integers(1, boxes + 1))
    return BoxRegion.from_boxes(
        n, [tuple(random_clopen(rng, window) for _ in range(n)) for _ in range(count)]
    )


def random_coefficient(rng: np.random.Generator, complex_prob: float = 0.2) -> GaussianRational:
    re = int(rng.integers(-2, 3)) or 1
    im = int(rng.integers(-1, 2)) if rng.random() < complex_prob else 0
    return GaussianRational.of(QQ_I(re, im))


def random_translation(n: int, rng: np.random.Generator, max_shift: int = 5,
                       degree: Optional[int] = None) -> Tuple[int, ...]:
    m = [int(x) for x in rng.integers(-max_shift, max_shift + 1, size=n)]
    if degree is not None:
        m[-1] = degree - sum(m[:-1])
    return tuple(m)


def random_element(
    n: int,
    rng: np.random.Generator,
    max_terms: int = 3,
    max_shift: int = 5,
    window: int = 8,
    degree: Optional[int] = None,
) -> AlgebraElement:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        m = random_translation(n, rng, max_shift, degree)
        terms.append((random_coefficient(rng), GroupoidTerm.make(m, random_region(n, rng, window))))
    return from_terms(n, terms)


# ---------------------------------------------------------------------------
# projections over the one-coordinate Toeplitz algebra
# ---------------------------------------------------------------------------

def random_diagonal_projection(rng: np.random.Generator, size: int) -> Tuple[AlgMatrix, int, int]:
    """
    diag of blocks from {0, P_a, I, P_{-b}}; returns the matrix together with the
    number of blocks with nonzero symbol and the total finite rank.
    """
    blocks, symbol_rank, finite_rank = [], 0, 0
    for _ in range(size):
        kind = int(rng.integers(0, 4))
        if kind == 0:
            blocks.append(zero(1))
        elif kind == 1:
            a = int(rng.integers(1, 4))
            blocks.append(proj_finite(a))
            finite_rank += a
        elif kind == 2:
            blocks.append(identity(1))
            symbol_rank += 1
        else:
            blocks.append(proj_cofinite(int(rng.integers(1, 4))))
            symbol_rank += 1
    return diag(*blocks), symbol_rank, finite_rank


def random_finite_idempotent(rng: np.random.Generator, window: int) -> AlgebraElement:
    """
    Nonzero idempotent living in [0, window): a sum of diagonal units e_jj over a
    random point set D, sometimes plus one e_ab with a in D and b outside D.
    """
    points = [j for j in range(window) if rng.random() < 0.5] or [int(rng.integers(0, window))]
    e = zero(1)
    for j in points:
        e = e + matrix_unit(j, j)
    free = [j for j in range(window) if j not in points]
    if free and rng.random() < 0.5:
        a = points[int(rng.integers(0, len(points)))]
        b = free[int(rng.integers(0, len(free)))]
        e = e + matrix_unit(a, b)
    return e


def random_unitary(rng: np.random.Generator, size: int, steps: int = 2) -> AlgMatrix:
    """Product of certified gadgets embedded in a size×size identity."""
    u = identity_matrix(1, size)
    for _ in range(steps):
        choice = int(rng.integers(0, 3))
        if choice == 0 and size >= 2:
            a, b = (int(x) for x in rng.choice(size, size=2, replace=False))
            w = build(GadgetSpec(GadgetName.U_PROP3, 1, slot=1))
            g = embed_2x2(w, size, a, b)
        elif choice == 1 and size >= 2:
            k = int(rng.integers(2, size + 1))
            g = pad(build(GadgetSpec(GadgetName.U_KN, 1, slot=1, k=k, N=int(rng.integers(1, 3)))),
                    size, fill_identity=True)
        elif choice == 2 and size >= 2:
            k = int(rng.integers(2, size + 1))
            g = pad(build(GadgetSpec(GadgetName.U_L, 1, slot=1, k=k, l=int(rng.integers(1, 3)))),
                    size, fill_identity=True)
        else:
            g = identity_matrix(1, size)
        u = mat_mul(g, u)
    return u


def sample_degree_elements(n: int, degree: int, count: int, seed: int) -> List[AlgebraElement]:
    rng = np.random.default_rng(seed)
    return [random_element(n, rng, max_terms=2, max_shift=3, window=5, degree=degree)
            for _ in range(count)]
