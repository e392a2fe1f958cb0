# src/groupoid_algebra.py
"""
Exact convolution *-algebra of the restricted transformation groupoid
(Z^n ⋉ Zbar^n) restricted to the compactified cone.

An arrow (m, x) has source x and range x + m (∞ + m = ∞). The indicator
χ_(m,S) acts on ℓ²(Z>=0^n) by e_x ↦ e_(x+m) for x ∈ S, so

    χ_(mA,SA) * χ_(mB,SB) = χ_(mA+mB, shift_pre(SA, mB) ∩ SB)
    χ_(m,S)*              = χ_(-m, S + m)

Elements of the Toeplitz cube are stored directly. Elements of the quantum sphere
and of the quantum projective space are stored as lifts and compared with
quotient_equal, which ignores the compact ideal (finitely supported elements).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from src.cone_sets import INF, BoxRegion, ClopenSet, ExtNat, product_box
from src.errors import DimensionMismatch, NotAProjection, ParseError
from src.gaussian import ONE, GaussianRational, Scalar

Translation = Tuple[int, ...]


def valid_sources(m: Sequence[int]) -> BoxRegion:
    """Sources x with x + m still in the cone."""
    return BoxRegion.from_box(tuple(ClopenSet.tail_from(max(0, -mi)) for mi in m))


@dataclass(frozen=True)
class GroupoidTerm:
    m: Translation
    support: BoxRegion

    @classmethod
    def make(cls, m: Sequence[int], support: BoxRegion) -> "GroupoidTerm":
        m = tuple(int(x) for x in m)
        if len(m) != support.dim:
            raise DimensionMismatch(f"translation {m} with a region of dim {support.dim}")
        return cls(m, support.intersect(valid_sources(m)))

    @property
    def degree(self) -> int:
        return sum(self.m)


class _Accumulator:
    """Pointwise sums of piecewise-constant functions, one per translation."""

    def __init__(self, n: int):
        self.n = n
        self.parts: Dict[Translation, List[Tuple[GaussianRational, BoxRegion]]] = {}

    def add(self, m: Translation, coeff: GaussianRational, region: BoxRegion):
        if not coeff or region.is_empty():
            return
        pieces = self.parts.get(m, [])
        merged = []
        rest = region
        for c, r in pieces:
            overlap = r.intersect(region)
            if overlap.is_empty():
                merged.append((c, r))
                continue
            only = r.subtract(region)
            if not only.is_empty():
                merged.append((c, only))
            total = c + coeff
            if total:
                merged.append((total, overlap))
            rest = rest.subtract(r)
        if not rest.is_empty():
            merged.append((coeff, rest))
        by_coeff: Dict[GaussianRational, BoxRegion] = {}
        for c, r in merged:
            by_coeff[c] = by_coeff[c].union(r) if c in by_coeff else r
        self.parts[m] = list(by_coeff.items())

    def add_element(self, f: "AlgebraElement", scale: Scalar = ONE):
        scale = GaussianRational.of(scale)
        for m, pieces in f.parts:
            for c, r in pieces:
                self.add(m, c * scale, r)

    def build(self) -> "AlgebraElement":
        parts = []
        for m in sorted(self.parts):
            pieces = tuple(sorted(self.parts[m], key=lambda item: item[0].sort_key()))
            if pieces:
                parts.append((m, pieces))
        return AlgebraElement(self.n, tuple(parts))


@dataclass(frozen=True)
class AlgebraElement:
    """
    Finite combination Σ c·χ_(m,S) in canonical form: for every translation m the
    supports of distinct coefficients are disjoint, zero coefficients are absent,
    and parts are sorted. Equality is structural.
    """

    n: int
    parts: Tuple[Tuple[Translation, Tuple[Tuple[GaussianRational, BoxRegion], ...]], ...] = ()

    @property
    def terms(self) -> List[Tuple[GaussianRational, GroupoidTerm]]:
        return [(c, GroupoidTerm(m, r)) for m, pieces in self.parts for c, r in pieces]

    def is_zero(self) -> bool:
        return not self.parts

    def translations(self) -> List[Translation]:
        return [m for m, _ in self.parts]

    def _check(self, other: "AlgebraElement"):
        if self.n != other.n:
            raise DimensionMismatch(f"ambient mismatch: {self.n} vs {other.n}")

    # linear structure -------------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        acc = _Accumulator(self.n)
        acc.add_element(self)
        acc.add_element(other)
        return acc.build()

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "AlgebraElement":
        acc = _Accumulator(self.n)
        acc.add_element(self, c)
        return acc.build()

    # rendering ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"c": c.to_json(), "m": list(m), "boxes": r.to_json()}
                for m, pieces in self.parts
                for c, r in pieces
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        try:
            n = int(data["n"])
            acc = _Accumulator(n)
            for term in data["terms"]:
                t = GroupoidTerm.make(term["m"], BoxRegion.from_json(n, term["boxes"]))
                acc.add(t.m, GaussianRational.from_json(term["c"]), t.support)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad algebra element: {exc}") from exc
        return acc.build()

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        out = []
        for c, t in self.terms:
            prefix = "" if c == ONE else ("-" if c == -ONE else f"{c}·")
            out.append(f"{prefix}χ[{','.join(map(str, t.m))}]({t.support})")
        return " + ".join(out)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero(n: int) -> AlgebraElement:
    return AlgebraElement(n)


def indicator(n: int, m: Sequence[int], region: BoxRegion, coeff: Scalar = 1) -> AlgebraElement:
    if region.dim != n:
        raise DimensionMismatch(f"region of dim {region.dim} in ambient {n}")
    term = GroupoidTerm.make(m, region)
    acc = _Accumulator(n)
    acc.add(term.m, GaussianRational.of(coeff), term.support)
    return acc.build()


def from_terms(n: int, terms: Iterable[Tuple[Scalar, GroupoidTerm]]) -> AlgebraElement:
    """Canonical element from possibly overlapping terms."""
    acc = _Accumulator(n)
    for c, t in terms:
        acc.add(t.m, GaussianRational.of(c), t.support)
    return acc.build()


def identity(n: int) -> AlgebraElement:
    return indicator(n, (0,) * n, BoxRegion.full(n))


def diagonal(n: int, coords: dict) -> AlgebraElement:
    """Projection onto the box with the given ClopenSets at 0-based coordinates."""
    return indicator(n, (0,) * n, product_box(n, coords))


def tensor(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """f ⊗ g on the concatenated coordinates (those of f first)."""
    acc = _Accumulator(f.n + g.n)
    for cf, tf in f.terms:
        for cg, tg in g.terms:
            acc.add(tf.m + tg.m, cf * cg, tf.support.product(tg.support))
    return acc.build()


def slot_element(n: int, slot: int, f: AlgebraElement) -> AlgebraElement:
    """Place a one-coordinate element at `slot` (1-based), identity elsewhere."""
    if f.n != 1:
        raise DimensionMismatch("slot_element expects a one-coordinate element")
    if not 1 <= slot <= n:
        raise DimensionMismatch(f"slot {slot} outside 1..{n}")
    return tensor(tensor(identity(slot - 1), f), identity(n - slot))


# ---------------------------------------------------------------------------
# *-algebra
# ---------------------------------------------------------------------------

def convolve(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    f._check(g)
    acc = _Accumulator(f.n)
    for cf, tf in f.terms:
        for cg, tg in g.terms:
            support = tf.support.shift_pre(tg.m).intersect(tg.support)
            m = tuple(a + b for a, b in zip(tf.m, tg.m))
            acc.add(m, cf * cg, support)
    return acc.build()


def adjoint(f: AlgebraElement) -> AlgebraElement:
    acc = _Accumulator(f.n)
    for c, t in f.terms:
        minus = tuple(-x for x in t.m)
        acc.add(minus, c.conjugate(), t.support.shift_pre(minus))
    return acc.build()


def degree_split(f: AlgebraElement) -> Dict[int, AlgebraElement]:
    accs: Dict[int, _Accumulator] = {}
    for c, t in f.terms:
        accs.setdefault(t.degree, _Accumulator(f.n)).add(t.m, c, t.support)
    return {d: accs[d].build() for d in sorted(accs)}


def is_homogeneous(f: AlgebraElement, degree: int) -> bool:
    return all(t.degree == degree for _, t in f.terms)


def is_degree_zero(f: AlgebraElement) -> bool:
    """Membership in the degree-0 subalgebra (the home of the projective space)."""
    return is_homogeneous(f, 0)


def degree_zero_part(f: AlgebraElement) -> AlgebraElement:
    return degree_split(f).get(0, zero(f.n))


# ---------------------------------------------------------------------------
# compact ideal and quotient
# ---------------------------------------------------------------------------

def in_compact_ideal(f: AlgebraElement) -> bool:
    return all(r.is_finite() for _, pieces in f.parts for _, r in pieces)


def quotient_equal(f: AlgebraElement, g: AlgebraElement) -> bool:
    f._check(g)
    return f == g or in_compact_ideal(f - g)


# ---------------------------------------------------------------------------
# traces and ranks
# ---------------------------------------------------------------------------

def trace(f: AlgebraElement) -> Union[GaussianRational, ExtNat]:
    """
    Σ c·|S| over the diagonal (m = 0) terms; ∞ when a diagonal support is infinite.
    """
    total = GaussianRational()
    origin = (0,) * f.n
    for c, t in f.terms:
        if t.m != origin:
            continue
        card = t.support.cardinality()
        if card.is_infinite:
            return INF
        total = total + c * card.value
    return total


def trace_to_rank(value: Union[GaussianRational, ExtNat]) -> ExtNat:
    if isinstance(value, ExtNat):
        return value
    if not value.is_integer or value.re < 0:
        raise NotAProjection(f"trace {value} is not a rank")
    return ExtNat(int(value.re))


def rank_of_projection(p: AlgebraElement) -> ExtNat:
    if convolve(p, p) != p or adjoint(p) != p:
        raise NotAProjection("element is not a self-adjoint idempotent")
    return trace_to_rank(trace(p))


# ---------------------------------------------------------------------------
# restriction (symbol) maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaElement:
    """
    Element of C(T^|A|) ⊗ (box algebra on the remaining coordinates): a finite sum
    of Laurent monomials z^e times residual elements on the complement of A.
    """

    n: int
    pinned: Tuple[int, ...]
    parts: Tuple[Tuple[Tuple[int, ...], AlgebraElement], ...] = ()

    @property
    def residual_dim(self) -> int:
        return self.n - len(self.pinned)

    @property
    def terms(self):
        return [
            (c, exponent, t)
            for exponent, residual in self.parts
            for c, t in residual.terms
        ]

    def is_zero(self) -> bool:
        return not self.parts

    def __mul__(self, other: "SigmaElement") -> "SigmaElement":
        if (self.n, self.pinned) != (other.n, other.pinned):
            raise DimensionMismatch("σ-restrictions to different faces")
        accs: Dict[Tuple[int, ...], AlgebraElement] = {}
        for ea, fa in self.parts:
            for eb, fb in other.parts:
                e = tuple(a + b for a, b in zip(ea, eb))
                prod = convolve(fa, fb)
                accs[e] = accs[e] + prod if e in accs else prod
        return _sigma(self.n, self.pinned, accs)

    def at_one(self) -> AlgebraElement:
        """Evaluate every Laurent monomial at z = 1."""
        total = zero(self.residual_dim)
        for _, residual in self.parts:
            total = total + residual
        return total

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(
            f"z^({','.join(map(str, e))})·[{f}]" for e, f in self.parts
        )


def _sigma(n: int, pinned: Tuple[int, ...], accs: Dict) -> SigmaElement:
    parts = tuple((e, accs[e]) for e in sorted(accs) if not accs[e].is_zero())
    return SigmaElement(n, pinned, parts)


def restrict_sigma(f: AlgebraElement, A: Iterable[int]) -> SigmaElement:
    """
    Restrict to the face where the coordinates in A (1-based) are ∞. The part of a
    translation on A becomes a Laurent exponent; the rest acts on the complement.
    """
    pinned = tuple(sorted(set(A)))
    if any(not 1 <= i <= f.n for i in pinned):
        raise DimensionMismatch(f"coordinates {pinned} outside 1..{f.n}")
    zero_based = [i - 1 for i in pinned]
    rest = [i for i in range(f.n) if i not in zero_based]
    accs: Dict[Tuple[int, ...], _Accumulator] = {}
    for c, t in f.terms:
        region = t.support.pinned_slice(zero_based)
        if region.is_empty():
            continue
        exponent = tuple(t.m[i] for i in zero_based)
        residual_m = tuple(t.m[i] for i in rest)
        accs.setdefault(exponent, _Accumulator(len(rest))).add(residual_m, c, region)
    return _sigma(f.n, pinned, {e: acc.build() for e, acc in accs.items()})


def sigma_full(f: AlgebraElement) -> SigmaElement:
    """The symbol map onto C(T^n)."""
    return restrict_sigma(f, range(1, f.n + 1))


def kappa(f: AlgebraElement) -> SigmaElement:
    """Restriction onto C(T^(n-1)) ⊗ 𝒯 (all but the last coordinate pinned)."""
    return restrict_sigma(f, range(1, f.n))


def lam(f: AlgebraElement) -> SigmaElement:
    """Restriction onto 𝒯^(⊗n-1) ⊗ C(T) (last coordinate pinned)."""
    return restrict_sigma(f, [f.n])


def value_at(f: AlgebraElement, m: Sequence[int], x) -> GaussianRational:
    """Value of f at the arrow (m, x)."""
    for c, t in f.terms:
        if t.m == tuple(m) and t.support.contains(x):
            return c
    return GaussianRational()
