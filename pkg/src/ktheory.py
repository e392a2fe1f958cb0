# src/ktheory.py
"""
K₀ of the quantum projective space in the basis of the standard projections
Q_j = ∂(I^j ⊗ P_1^(n-j)), classes of elementary projections, the positive cone,
and the structural numbers of the Toeplitz cube.
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import comb
from typing import Dict, List, Mapping, Sequence, Tuple

from src.errors import DimensionMismatch, DomainError, ParseError
from src.gadgets import elementary_element
from src.groupoid_algebra import AlgebraElement
from src.projection_monoid import Ambient, StandardSum


@dataclass(frozen=True)
class K0Class:
    n: int
    coords: Tuple[int, ...]

    @classmethod
    def of(cls, coords: Sequence[int]) -> "K0Class":
        coords = tuple(int(c) for c in coords)
        if not coords:
            raise DomainError("a K0 class needs at least one coordinate")
        return cls(len(coords), coords)

    @classmethod
    def zero(cls, n: int) -> "K0Class":
        return cls(n, (0,) * n)

    @classmethod
    def basis(cls, n: int, j: int) -> "K0Class":
        """e_j, the class of Q_j (1-based)."""
        if not 1 <= j <= n:
            raise DomainError(f"basis index {j} outside 1..{n}")
        return cls(n, tuple(int(i == j - 1) for i in range(n)))

    def _check(self, other: "K0Class"):
        if self.n != other.n:
            raise DimensionMismatch(f"K0 classes of n={self.n} and n={other.n}")

    def __add__(self, other: "K0Class") -> "K0Class":
        self._check(other)
        return K0Class(self.n, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "K0Class") -> "K0Class":
        self._check(other)
        return K0Class(self.n, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, k: int) -> "K0Class":
        return K0Class(self.n, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def pad(self, n: int) -> "K0Class":
        """Zero-pad to ambient n (the image under the ι embeddings)."""
        if n < self.n:
            raise DimensionMismatch(f"cannot pad n={self.n} down to {n}")
        return K0Class(n, self.coords + (0,) * (n - self.n))

    @property
    def rank(self) -> int:
        return self.coords[-1]

    def to_json(self) -> dict:
        return {"n": self.n, "coords": list(self.coords)}

    @classmethod
    def from_json(cls, data: dict) -> "K0Class":
        try:
            out = cls.of(data["coords"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad K0 class: {exc}") from exc
        if "n" in data and int(data["n"]) != out.n:
            raise ParseError(f"n={data['n']} does not match {out.n} coordinates")
        return out

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ElementaryProj:
    """∂(I^(slot-1) ⊗ P_k ⊗ P_1^(n-slot)); k > 0 is P_k, k < 0 is P_{-|k|}, k = 0 is I."""

    n: int
    slot: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.slot <= self.n:
            raise DomainError(f"slot {self.slot} outside 1..{self.n}")

    @property
    def token(self) -> str:
        middle = "I" if self.k == 0 else f"P{self.k}"
        return "⊗".join(["I"] * (self.slot - 1) + [middle] + ["P1"] * (self.n - self.slot))

    def element(self) -> AlgebraElement:
        return elementary_element(self.n, self.slot, self.k)

    def sort_key(self):
        return (self.slot, self.k)

    def __str__(self) -> str:
        return self.token


# ---------------------------------------------------------------------------
# classes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _v(n: int, k: int) -> K0Class:
    if n == 1:
        return K0Class.of((1,))
    if k == 0:
        return K0Class.basis(n, n)
    return _v(n, k - 1) - _v(n - 1, k - 1).pad(n)


def v(n: int, k: int) -> K0Class:
    """Class of ∂(Î ⊗ P_{-k})."""
    if n < 2:
        raise DomainError(f"v needs n >= 2, got {n}")
    if k < 0:
        raise DomainError(f"v needs k >= 0, got {k}")
    return _v(n, k)


def class_of_elementary(e: ElementaryProj) -> K0Class:
    if e.n == 1:
        return K0Class.of((0,) if e.k > 0 else (1,))
    if e.slot < e.n:
        return class_of_elementary(ElementaryProj(e.slot, e.slot, e.k)).pad(e.n)
    if e.k <= 0:
        return _v(e.n, -e.k)
    # P_k is a sum of k rank-one pieces, each conjugate to a lifted v(n-1, i)
    total = K0Class.zero(e.n)
    for i in range(e.k):
        total = total + _v(e.n - 1, i).pad(e.n)
    return total


def class_of_tokens(n: int, tokens: Mapping[ElementaryProj, int]) -> K0Class:
    total = K0Class.zero(n)
    for e, mult in tokens.items():
        if e.n != n:
            raise DimensionMismatch(f"token {e} is not at ambient n={n}")
        total = total + mult * class_of_elementary(e)
    return total


def class_of_standard_sum(s: StandardSum) -> K0Class:
    """Σ l·e_j for sums of prefix indices {1..j}; other shuffles are not expressed in this basis."""
    total = K0Class.zero(s.n)
    for A, l in s.weights:
        j = len(A)
        if A.A != frozenset(range(1, j + 1)):
            raise DomainError(f"index {A} is not a prefix {{1..j}}")
        if j:
            total = total + l * K0Class.basis(s.n, j)
    return total


def rank_of_class(c: K0Class) -> int:
    return c.rank


# ---------------------------------------------------------------------------
# the positive cone
# ---------------------------------------------------------------------------

class ConeVerdict(str, Enum):
    IN = "in"
    NOT_IN = "not_in"
    UNKNOWN = "unknown"


def cone_contains(c: K0Class) -> ConeVerdict:
    if c.rank < 0:
        return ConeVerdict.NOT_IN
    nonzero = [x for x in c.coords if x]
    if not nonzero or nonzero[-1] > 0:
        return ConeVerdict.IN
    return ConeVerdict.UNKNOWN


def cone_witness(c: K0Class) -> Dict[ElementaryProj, int]:
    """
    Elementary projections whose ⊞-sum has class c, for every c in the cone.

    Built top-down: a positive last coordinate m at level L is covered by one
    ∂(Î ⊗ P_{-kk}) chosen to make the remaining coordinate L-1 positive, plus m-1
    identities; the remainder is realized at level L-1 and lifted by ι.
    """
    if cone_contains(c) != ConeVerdict.IN:
        raise DomainError(f"{c} is not in the known part of the cone")
    tokens: Counter = Counter()
    coords = list(c.coords)
    level = c.n
    while level >= 1:
        m = coords[level - 1]
        if m == 0:
            level -= 1
            continue
        if level == 1:
            tokens[ElementaryProj(c.n, 1, 0)] += m
            break
        kk = max(0, 1 - coords[level - 2])
        tokens[ElementaryProj(c.n, level, -kk)] += 1
        if m > 1:
            tokens[ElementaryProj(c.n, level, 0)] += m - 1
        step = _v(level, kk)
        coords = [a - b for a, b in zip(coords[: level - 1], step.coords[: level - 1])]
        level -= 1
    return dict(sorted(tokens.items(), key=lambda item: item[0].sort_key()))


# ---------------------------------------------------------------------------
# structure of the Toeplitz cube
# ---------------------------------------------------------------------------

def _require_n(n: int):
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")


def stable_rank(n: int, which=Ambient.TOEPLITZ) -> int:
    _require_n(n)
    which = Ambient(which)
    if n == 1:
        # sr(𝒯) = 2 while the one-dimensional sphere is C(T) with sr = 1
        return 1 if which == Ambient.SPHERE else 2
    return n // 2 + 1


def csr_upper(n: int) -> int:
    _require_n(n)
    return (n + 1) // 2 + 1


def gl0_threshold(n: int) -> int:
    """Smallest k0 with GL_k connected for every k >= k0."""
    _require_n(n)
    return 1 if n == 1 else n // 2 + 3


@dataclass(frozen=True)
class LayerDescriptor:
    multiplicity: int
    compact_dim: int
    torus_dim: int

    def describe(self) -> str:
        factors = []
        if self.compact_dim:
            power = "" if self.compact_dim == 1 else f"^{self.compact_dim}"
            factors.append(f"K(l2(Z>=){power})")
        if self.torus_dim:
            power = "" if self.torus_dim == 1 else f"^{self.torus_dim}"
            factors.append(f"C(T{power})")
        body = " ⊗ ".join(factors)
        return body if self.multiplicity == 1 else f"⊕^{self.multiplicity} ({body})"

    def to_json(self) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "compact_dim": self.compact_dim,
            "torus_dim": self.torus_dim,
            "describe": self.describe(),
        }


def composition_series(n: int, which=Ambient.TOEPLITZ) -> List[LayerDescriptor]:
    """Subquotients of the ideal filtration, from the compact ideal up to C(T^n)."""
    _require_n(n)
    which = Ambient(which)
    if which == Ambient.CPN:
        raise DomainError("composition series is tabulated for the cube and the sphere only")
    start = 1 if which == Ambient.SPHERE else 0
    return [LayerDescriptor(comb(n, j), n - j, j) for j in range(start, n + 1)]
