# src/projection_monoid.py
"""
Standard projections and their ⊞-monoid over the Toeplitz cube, the quantum
sphere and the quantum projective space.

A standard projection is indexed by a subset A of {1..n}: the indicator that is
full in the coordinates of A and {0} elsewhere. A ⊞-sum of them is a StandardSum,
a map A ↦ multiplicity. Over the cube and the sphere a smaller index is absorbed
by a larger one (P_A' ⊞ P_A ~ P_A for A' ⊊ A), so every sum reduces to an
antichain, and reduced sums are told apart by the ρ vector of restriction ranks.
Over the projective space nothing is absorbed.
"""

import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.cone_sets import INF, ExtNat
from src.errors import DimensionMismatch, DomainError, NotIdempotent, ParseError
from src.gadgets import on_slot, proj_finite, shift_power, standard_projection
from src.groupoid_algebra import convolve, identity, trace, trace_to_rank, zero
from src.matrix_ops import (
    AlgMatrix,
    Mode,
    diag,
    dsum,
    embed_2x2,
    identity_matrix,
    is_idempotent,
    mat_mul,
    mat_trace,
    matrix_is_degree_zero,
    rank_at,
    restrict_at_one,
    verify_equivalence,
    zero_matrix,
)


class Ambient(str, Enum):
    TOEPLITZ = "toeplitz"
    SPHERE = "sphere"
    CPN = "cpn"

    @property
    def mode(self) -> Mode:
        return Mode.EXACT if self == Ambient.TOEPLITZ else Mode.MOD_COMPACT


@dataclass(frozen=True)
class ShuffleIndex:
    A: frozenset

    @classmethod
    def of(cls, items: Iterable[int]) -> "ShuffleIndex":
        return cls(frozenset(int(i) for i in items))

    def precedes(self, other: "ShuffleIndex") -> bool:
        """Strict inclusion, the ≺ order."""
        return self.A < other.A

    def sort_key(self):
        return (-len(self.A), tuple(sorted(self.A)))

    def __len__(self) -> int:
        return len(self.A)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in sorted(self.A)) + "}"


def omega(n: int, nonempty: bool = False) -> List[ShuffleIndex]:
    """All shuffle indices, ordered by size then lexicographically."""
    out = []
    for size in range(1 if nonempty else 0, n + 1):
        out.extend(ShuffleIndex.of(c) for c in combinations(range(1, n + 1), size))
    return out


@dataclass(frozen=True)
class StandardSum:
    ambient: Ambient
    n: int
    weights: Tuple[Tuple[ShuffleIndex, int], ...] = ()

    @classmethod
    def make(cls, ambient, n: int, items) -> "StandardSum":
        ambient = Ambient(ambient)
        if n < 1:
            raise DomainError(f"n must be >= 1, got {n}")
        pairs = items.items() if isinstance(items, dict) else items
        merged: Dict[ShuffleIndex, int] = {}
        for A, l in pairs:
            index = A if isinstance(A, ShuffleIndex) else ShuffleIndex.of(A)
            if not index.A <= set(range(1, n + 1)):
                raise DomainError(f"index {index} is not a subset of 1..{n}")
            if l < 0:
                raise DomainError(f"negative weight {l} at {index}")
            if l:
                merged[index] = merged.get(index, 0) + l
        ordered = tuple(sorted(merged.items(), key=lambda item: item[0].sort_key()))
        return cls(ambient, n, ordered)

    def weight(self, A) -> int:
        index = A if isinstance(A, ShuffleIndex) else ShuffleIndex.of(A)
        return dict(self.weights).get(index, 0)

    @property
    def indices(self) -> List[ShuffleIndex]:
        return [A for A, _ in self.weights]

    def is_empty(self) -> bool:
        return not self.weights

    def dsum(self, other: "StandardSum") -> "StandardSum":
        _check_same(self, other)
        return StandardSum.make(self.ambient, self.n, list(self.weights) + list(other.weights))

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.value,
            "n": self.n,
            "tokens": [{"A": sorted(A.A), "l": l} for A, l in self.weights],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StandardSum":
        try:
            return cls.make(data["ambient"], int(data["n"]),
                            [(t["A"], int(t["l"])) for t in data["tokens"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad standard sum: {exc}") from exc

    def __str__(self) -> str:
        return format_sum(self)


def _check_same(s: StandardSum, t: StandardSum):
    if s.ambient != t.ambient:
        raise DomainError(f"ambient mismatch: {s.ambient.value} vs {t.ambient.value}")
    if s.n != t.n:
        raise DimensionMismatch(f"n mismatch: {s.n} vs {t.n}")


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"^(?:(\d+)\*)?\{([\d,]*)\}$")


def parse_sum(text: str, ambient, n: int) -> StandardSum:
    """Parse "2*{1,2} + 1*{1}"; whitespace is ignored, "0" is the empty sum."""
    compact = re.sub(r"\s+", "", text)
    if compact in ("", "0"):
        return StandardSum.make(ambient, n, [])
    items = []
    for token in compact.split("+"):
        match = _TOKEN.match(token)
        if not match:
            raise ParseError(f"cannot parse token {token!r} (expected l*{{i,j,...}})")
        weight = int(match.group(1)) if match.group(1) else 1
        members = [int(x) for x in match.group(2).split(",") if x]
        items.append((members, weight))
    return StandardSum.make(ambient, n, items)


def format_sum(s: StandardSum) -> str:
    if s.is_empty():
        return "0"
    return " + ".join(f"{l}*{A}" for A, l in s.weights)


# ---------------------------------------------------------------------------
# monoid operations
# ---------------------------------------------------------------------------

def dsum_sums(s: StandardSum, t: StandardSum) -> StandardSum:
    """The ⊞ operation on weight maps."""
    return s.dsum(t)


def reduce(s: StandardSum) -> StandardSum:
    present = s.indices
    kept = []
    for A, l in s.weights:
        if s.ambient != Ambient.TOEPLITZ and not A.A:
            continue
        if s.ambient != Ambient.CPN and any(A.precedes(B) for B in present):
            continue
        kept.append((A, l))
    return StandardSum.make(s.ambient, s.n, kept)


@dataclass(frozen=True)
class RhoVector:
    ambient: Ambient
    n: int
    values: Tuple[Tuple[ShuffleIndex, ExtNat], ...]

    def __getitem__(self, A) -> ExtNat:
        index = A if isinstance(A, ShuffleIndex) else ShuffleIndex.of(A)
        return dict(self.values)[index]

    def __add__(self, other: "RhoVector") -> "RhoVector":
        if (self.ambient, self.n) != (other.ambient, other.n):
            raise DomainError("ρ vectors of different ambients")
        return RhoVector(self.ambient, self.n, tuple(
            (A, a + b) for (A, a), (_, b) in zip(self.values, other.values)
        ))

    def key(self) -> tuple:
        return tuple(v.to_json() for _, v in self.values)

    def to_json(self) -> dict:
        return {
            "ambient": self.ambient.value,
            "n": self.n,
            "rho": [{"A": sorted(A.A), "value": v.to_json()} for A, v in self.values],
        }

    def __str__(self) -> str:
        return "\n".join(f"{A}: {v}" for A, v in self.values)


def _domain(ambient: Ambient, n: int) -> List[ShuffleIndex]:
    return omega(n, nonempty=ambient != Ambient.TOEPLITZ)


def rho(s: StandardSum) -> RhoVector:
    values = []
    for A in _domain(s.ambient, s.n):
        total = ExtNat(0)
        for B, l in s.weights:
            if A == B:
                total = total + l
            elif A.precedes(B):
                total = INF
        values.append((A, total))
    return RhoVector(s.ambient, s.n, tuple(values))


def equivalent(s: StandardSum, t: StandardSum) -> bool:
    _check_same(s, t)
    return reduce(s) == reduce(t)


def realize(s: StandardSum) -> AlgMatrix:
    blocks = [standard_projection(s.n, A.A) for A, l in s.weights for _ in range(l)]
    if not blocks:
        return zero_matrix(s.n, 1)
    return diag(*blocks)


def rho_by_restriction(s: StandardSum) -> RhoVector:
    """ρ recomputed from the realized matrix through σ-restriction ranks."""
    p = realize(s)
    return RhoVector(s.ambient, s.n, tuple(
        (A, rank_at(p, sorted(A.A))) for A in _domain(s.ambient, s.n)
    ))


def enumerate_antichains(n: int, nonempty: bool = False) -> Iterator[List[ShuffleIndex]]:
    candidates = omega(n, nonempty)

    def extend(start: int, chosen: List[ShuffleIndex]):
        yield list(chosen)
        for i in range(start, len(candidates)):
            c = candidates[i]
            if any(c.precedes(d) or d.precedes(c) for d in chosen):
                continue
            chosen.append(c)
            yield from extend(i + 1, chosen)
            chosen.pop()

    yield from extend(0, [])


def enumerate_reduced_sums(ambient, n: int, weight_max: int) -> Iterator[StandardSum]:
    ambient = Ambient(ambient)
    for chain in enumerate_antichains(n, nonempty=ambient != Ambient.TOEPLITZ):
        yield from _weighted(ambient, n, chain, weight_max)


def _weighted(ambient: Ambient, n: int, chain: List[ShuffleIndex], weight_max: int):
    if not chain:
        yield StandardSum.make(ambient, n, [])
        return
    head, rest = chain[0], chain[1:]
    for tail in _weighted(ambient, n, rest, weight_max):
        for l in range(1, weight_max + 1):
            yield StandardSum.make(ambient, n, list(tail.weights) + [(head, l)])


def rho_injective(ambient, n: int, weight_max: int) -> Tuple[bool, int, Optional[Tuple[str, str]]]:
    """(injective?, number of sums, first colliding pair)."""
    seen: Dict[tuple, StandardSum] = {}
    count = 0
    for s in enumerate_reduced_sums(ambient, n, weight_max):
        count += 1
        key = rho(s).key()
        if key in seen:
            return False, count, (format_sum(seen[key]), format_sum(s))
        seen[key] = s
    return True, count, None


# ---------------------------------------------------------------------------
# absorption witnesses
# ---------------------------------------------------------------------------

def absorption_witness(n: int, sub, sup) -> AlgMatrix:
    """
    A unitary W with W (P_sub ⊞ P_sup) W* = 0 ⊞ P_sup, for sub ⊊ sup.

    With i the smallest coordinate of sup not in sub and Y = P_(sub ∪ {i}),
    W = Y ⊗ U_i + (1 - Y) ⊗ 1, where U_i is the absorbing unitary
    [[S*, 0], [P_1, S]] acting in coordinate i. Y commutes with U_i, so W is unitary.
    """
    sub, sup = frozenset(sub), frozenset(sup)
    if not sub < sup:
        raise DomainError(f"{sorted(sub)} is not strictly contained in {sorted(sup)}")
    i = min(sup - sub)
    y = standard_projection(n, sub | {i})
    rest = identity(n) - y
    at_i = lambda f: convolve(y, on_slot(n, i, f))
    return AlgMatrix.of([
        [at_i(shift_power(-1)) + rest, zero(n)],
        [at_i(proj_finite(1)), at_i(shift_power(1)) + rest],
    ])


def absorption_chain(n: int, sup, l: int, sub, l_sub: int) -> Tuple[AlgMatrix, AlgMatrix, AlgMatrix]:
    """
    (p, q, V) with p = realize({sup: l, sub: l_sub}), q = realize({sup: l}) ⊞ 0 and
    V the product of embedded absorption witnesses, one per copy of P_sub.
    """
    s = StandardSum.make(Ambient.TOEPLITZ, n, [(sup, l), (sub, l_sub)])
    p = realize(s)
    q = dsum(realize(StandardSum.make(Ambient.TOEPLITZ, n, [(sup, l)])), zero_matrix(n, l_sub))
    w = absorption_witness(n, sub, sup)
    v = identity_matrix(n, l + l_sub)
    for t in range(l_sub):
        v = mat_mul(embed_2x2(w, l + l_sub, l + t, 0), v)
    return p, q, v


def verify_absorption(n: int, sup, l: int, sub, l_sub: int, ambient=Ambient.TOEPLITZ) -> bool:
    p, q, v = absorption_chain(n, sup, l, sub, l_sub)
    return verify_equivalence(p, q, v, Ambient(ambient).mode)


def witness_is_degree_zero(n: int, sub, sup) -> bool:
    """Whether the absorption witness lives over the projective space (it does not)."""
    return matrix_is_degree_zero(absorption_witness(n, sub, sup))


# ---------------------------------------------------------------------------
# the one-coordinate classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class N1Class:
    m: int
    l: ExtNat

    def to_json(self) -> dict:
        return {"m": self.m, "l": self.l.to_json()}

    def __str__(self) -> str:
        return f"({self.m},{self.l})"


def classify_n1(p: AlgMatrix) -> N1Class:
    """
    Class of an idempotent over the Toeplitz algebra: (0, l) for a finite-rank
    idempotent of rank l, (m, ∞) when the symbol has rank m > 0.
    """
    if p.n != 1:
        raise DomainError(f"classify_n1 needs ambient n = 1, got {p.n}")
    if not is_idempotent(p):
        raise NotIdempotent("matrix is not idempotent")
    symbol_rank = trace_to_rank(mat_trace(restrict_at_one(p, [1])))
    if symbol_rank.value > 0:
        return N1Class(symbol_rank.value, INF)
    return N1Class(0, trace_to_rank(mat_trace(p)))


def free_rank_threshold(ambient, n: int) -> int:
    ambient = Ambient(ambient)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if ambient == Ambient.CPN:
        raise DomainError("no free-rank threshold is known over the projective space")
    return (n - 1) // 2 + 3
