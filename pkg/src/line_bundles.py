# src/line_bundles.py
"""
Quantum line bundles L_k, the degree-k spectral subspaces of the quantum sphere,
as projective modules over the quantum projective space.

For k >= 0, L_k is cut out by the single elementary projection ∂(Î ⊗ P_{-k}).
For k < 0 it splits into standard pieces Q_t = ∂(I^t ⊗ P_1^(n-t)), either by
unfolding the A_{r,l} recursion or, for n > 2, by a closed form in the
binomial numbers ν(m, l) = C(m+l-1, m).
"""

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Optional, Tuple

import numpy as np

from src.errors import CertificationError, DomainError
from src.gadgets import (
    GadgetName,
    GadgetSpec,
    build,
    chi_b_checks,
    chi_b_expected,
    chi_b_prime_checks,
)
from src.groupoid_algebra import adjoint, convolve, is_homogeneous
from src.ktheory import ElementaryProj, K0Class, class_of_tokens
from src.matrix_ops import AlgMatrix, Mode, diag, is_projection, matrix_is_degree_zero
from src.report import VerificationReport
from src.sampling import sample_degree_elements


# ---------------------------------------------------------------------------
# ν numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _nu_recursive(m: int, l: int) -> int:
    if l == 1:
        return 1
    return sum(_nu_recursive(s, l - 1) for s in range(m + 1))


def nu(m: int, l: int) -> int:
    """ν(m, l), computed by the defining recursion and checked against C(m+l-1, m)."""
    if m < 0 or l < 1:
        raise DomainError(f"ν(m, l) needs m >= 0 and l >= 1, got ({m}, {l})")
    value = _nu_recursive(m, l)
    closed = comb(m + l - 1, m)
    if value != closed:
        raise CertificationError(f"ν({m},{l}): recursion {value} != closed form {closed}")
    return value


def nu_table(m_max: int, l_max: int) -> np.ndarray:
    """Rows m = 0..m_max, columns l = 0..l_max (column 0 unused); object dtype keeps big ints exact."""
    table = np.zeros((m_max + 1, l_max + 1), dtype=object)
    for m in range(m_max + 1):
        for l in range(1, l_max + 1):
            table[m, l] = nu(m, l)
    return table


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------

def standard_token(n: int, t: int) -> ElementaryProj:
    """Q_t = ∂(I^t ⊗ P_1^(n-t))."""
    return ElementaryProj(n, t, 0)


@lru_cache(maxsize=None)
def _a_counts(r: int, l: int) -> Tuple[int, ...]:
    """Multiplicities of Q_1..Q_l in A_{r,l}."""
    if l == 1:
        return (1,)
    counts = [0] * l
    for j in range(r):
        for t, c in enumerate(_a_counts(r - j, l - 1)):
            counts[t] += c
    counts[l - 1] += 1
    return tuple(counts)


def decompose_A(n: int, r: int, l: int) -> Dict[ElementaryProj, int]:
    if n < 2:
        raise DomainError(f"A_(r,l) needs n >= 2, got {n}")
    if r < 1 or not 1 <= l <= n - 1:
        raise DomainError(f"A_(r,l) needs r >= 1 and 1 <= l <= {n - 1}, got ({r}, {l})")
    return {standard_token(n, t + 1): c for t, c in enumerate(_a_counts(r, l)) if c}


@dataclass(frozen=True)
class LBDecomposition:
    n: int
    k: int
    summands: Tuple[Tuple[ElementaryProj, int], ...]
    source: str

    @classmethod
    def make(cls, n: int, k: int, tokens: Dict[ElementaryProj, int], source: str) -> "LBDecomposition":
        ordered = tuple(sorted(((e, c) for e, c in tokens.items() if c), key=lambda item: item[0].sort_key()))
        return cls(n, k, ordered, source)

    @property
    def tokens(self) -> Dict[ElementaryProj, int]:
        return dict(self.summands)

    @property
    def k0(self) -> K0Class:
        return class_of_tokens(self.n, self.tokens)

    @property
    def rank(self) -> int:
        return self.k0.rank

    def __str__(self) -> str:
        return " ⊞ ".join(f"{c}×{e.token}" for e, c in self.summands)


def _require_n(n: int):
    if n < 2:
        raise DomainError(f"line bundles need n >= 2, got {n}")


def _by_recursion(n: int, k: int) -> Dict[ElementaryProj, int]:
    total: Counter = Counter()
    size = -k
    for m in range(size):
        total.update(decompose_A(n, size - m, n - 1))
    total[standard_token(n, n)] += 1
    return dict(total)


def _by_closed_form(n: int, k: int) -> Dict[ElementaryProj, int]:
    size = -k
    tokens = {standard_token(n, 1): sum((size - m) * nu(m, n - 2) for m in range(size))}
    for l in range(1, n):
        t = n - l + 1
        tokens[standard_token(n, t)] = tokens.get(standard_token(n, t), 0) + nu(size - 1, l)
    return tokens


def decompose_L(n: int, k: int, method: str = "closed_form") -> LBDecomposition:
    """
    Elementary summands of L_k. method is "closed_form" or "recursion"; the closed
    form exists only for n > 2, so n = 2 always unfolds the recursion.
    """
    _require_n(n)
    if method not in ("closed_form", "recursion"):
        raise DomainError(f"unknown method {method!r}")
    if k >= 0:
        return LBDecomposition.make(n, k, {ElementaryProj(n, n, -k): 1}, "identification")
    if method == "closed_form" and n > 2:
        return LBDecomposition.make(n, k, _by_closed_form(n, k), "closed_form")
    return LBDecomposition.make(n, k, _by_recursion(n, k), "recursion")


def closed_form_matches_recursion(n: int, k: int) -> bool:
    if n <= 2 or k >= 0:
        raise DomainError(f"the closed form covers n > 2 and k < 0, got ({n}, {k})")
    return _by_closed_form(n, k) == _by_recursion(n, k)


def class_of_L(n: int, k: int) -> K0Class:
    return decompose_L(n, k).k0


def realize_decomposition(d: LBDecomposition) -> AlgMatrix:
    """Block diagonal of the summands, certified a degree-0 projection modulo compacts."""
    blocks = [e.element() for e, c in d.summands for _ in range(c)]
    p = diag(*blocks)
    if not is_projection(p, Mode.MOD_COMPACT):
        raise CertificationError(f"L_{d.k} at n={d.n}: realization is not a projection")
    if not matrix_is_degree_zero(p):
        raise CertificationError(f"L_{d.k} at n={d.n}: realization leaves the degree-0 part")
    return p


def lb_json(d: LBDecomposition) -> dict:
    return {
        "n": d.n,
        "k": d.k,
        "summands": [{"token": e.token, "mult": c} for e, c in d.summands],
        "k0": list(d.k0.coords),
        "rank": d.rank,
        "source": d.source,
    }


# ---------------------------------------------------------------------------
# the module isomorphisms
# ---------------------------------------------------------------------------

def _seed_for(seed: int, k: int, stream: int) -> int:
    return seed * 1000 + 4 * abs(k) + 2 * (k < 0) + stream


def verify_line_bundle_isometries(
    n: int,
    k_range: Iterable[int],
    r_range: Optional[Iterable[int]] = None,
    samples: int = 2,
    seed: int = 7,
) -> VerificationReport:
    """
    The χ_{B_k} and χ_{B'_{-r}} identities, and the module maps they induce:
    g ↦ g * χ_{B_k} sends degree 0 to degree k, f ↦ f * χ_{B_k}* sends degree k
    back to degree 0, and the round trips multiply by the stated projections.
    """
    _require_n(n)
    ks = list(k_range)
    report = VerificationReport()
    chi_b_checks(report, n, ks)
    chi_b_prime_checks(report, n, range(1, 4) if r_range is None else r_range)

    for k in ks:
        chi = build(GadgetSpec(GadgetName.CHI_B, n, k=k))[0, 0]
        chi_star = adjoint(chi)
        source, rng = chi_b_expected(n, k)
        for i, g in enumerate(sample_degree_elements(n, 0, samples, _seed_for(seed, k, 0))):
            moved = convolve(g, chi)
            report.check("linebundle.raise_degree", is_homogeneous(moved, k), n=n, k=k, sample=i)
            report.check("linebundle.range_action", convolve(moved, chi_star) == convolve(g, rng),
                         n=n, k=k, sample=i)
        for i, f in enumerate(sample_degree_elements(n, k, samples, _seed_for(seed, k, 1))):
            lowered = convolve(f, chi_star)
            report.check("linebundle.lower_degree", is_homogeneous(lowered, 0), n=n, k=k, sample=i)
            report.check("linebundle.source_action", convolve(lowered, chi) == convolve(f, source),
                         n=n, k=k, sample=i)
    return report

