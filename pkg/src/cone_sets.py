# src/cone_sets.py
"""
Compact-open subsets of the compactified cone (Z>=0 ∪ {∞})^n.

A ClopenSet in one coordinate is a finite set of integers, optionally together with
a tail [t, ∞] ∪ {∞}. These are exactly the compact-open subsets of Z>=0 ∪ {∞}:
a compact-open set containing ∞ must contain a whole tail.

A BoxRegion of dimension n is stored as a canonical decision tree. At each level
the first coordinate is cut into pairwise disjoint ClopenSets over which the slice
(a region of dimension n-1) is constant, and pieces with equal slices are merged.
Since the partition is determined by the set itself, two regions are equal as sets
exactly when their trees are equal, so equality and hashing are structural.
Flattening the tree yields pairwise disjoint boxes in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, reduce, total_ordering
from typing import Iterable, Optional, Sequence, Tuple, Union

from src.errors import DimensionMismatch, ParseError


@total_ordering
@dataclass(frozen=True)
class ExtNat:
    """A nonnegative integer or ∞ (value None)."""

    value: Optional[int] = None

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = ext(other)
        if self.is_infinite or other.is_infinite:
            return INF
        return ExtNat(self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other: int) -> "ExtNat":
        if other == 0:
            return ExtNat(0)
        if self.is_infinite:
            return INF
        return ExtNat(self.value * other)

    __rmul__ = __mul__

    def __lt__(self, other: Union["ExtNat", int]) -> bool:
        other = ext(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __int__(self) -> int:
        if self.is_infinite:
            raise OverflowError("cannot convert ∞ to int")
        return self.value

    def to_json(self):
        return "inf" if self.is_infinite else self.value

    @classmethod
    def from_json(cls, data) -> "ExtNat":
        if data in ("inf", "∞", None):
            return INF
        return ExtNat(int(data))

    def __str__(self) -> str:
        return "∞" if self.is_infinite else str(self.value)


INF = ExtNat(None)


def ext(value: Union[ExtNat, int]) -> ExtNat:
    if isinstance(value, ExtNat):
        return value
    if value < 0:
        raise ValueError(f"ExtNat must be nonnegative, got {value}")
    return ExtNat(int(value))


Point = Union[int, ExtNat]


@dataclass(frozen=True)
class ClopenSet:
    finite: frozenset = frozenset()
    tail: Optional[int] = None

    def __post_init__(self):
        finite = frozenset(int(x) for x in self.finite)
        if any(x < 0 for x in finite):
            raise ValueError(f"negative point in {sorted(finite)}")
        tail = self.tail
        if tail is not None:
            if tail < 0:
                raise ValueError(f"negative tail {tail}")
            finite = frozenset(x for x in finite if x < tail)
            while tail > 0 and (tail - 1) in finite:
                tail -= 1
                finite = finite - {tail}
        object.__setattr__(self, "finite", finite)
        object.__setattr__(self, "tail", tail)

    # constructors ---------------------------------------------------------

    @classmethod
    def full(cls) -> "ClopenSet":
        return cls(frozenset(), 0)

    @classmethod
    def empty(cls) -> "ClopenSet":
        return cls()

    @classmethod
    def point(cls, x: int) -> "ClopenSet":
        return cls(frozenset([x]))

    @classmethod
    def interval(cls, lo: int, hi: int) -> "ClopenSet":
        """The integers lo..hi-1."""
        return cls(frozenset(range(max(lo, 0), hi)))

    @classmethod
    def tail_from(cls, t: int) -> "ClopenSet":
        return cls(frozenset(), max(t, 0))

    # queries --------------------------------------------------------------

    @property
    def has_infinity(self) -> bool:
        return self.tail is not None

    def is_empty(self) -> bool:
        return not self.finite and self.tail is None

    def __contains__(self, x: Point) -> bool:
        if isinstance(x, ExtNat):
            if x.is_infinite:
                return self.has_infinity
            x = x.value
        return x in self.finite or (self.tail is not None and x >= self.tail)

    def bound(self) -> int:
        """Smallest b such that membership is constant on [b, ∞]."""
        top = max(self.finite) + 1 if self.finite else 0
        return max(top, self.tail or 0)

    def cardinality(self) -> ExtNat:
        if self.has_infinity:
            return INF
        return ExtNat(len(self.finite))

    def is_finite(self) -> bool:
        return not self.has_infinity

    def sort_key(self):
        return (tuple(sorted(self.finite)), -1 if self.tail is None else self.tail)

    # set algebra ----------------------------------------------------------

    def _combine(self, other: "ClopenSet", op) -> "ClopenSet":
        bound = max(self.bound(), other.bound())
        finite = frozenset(x for x in range(bound) if op(x in self, x in other))
        tail = bound if op(self.has_infinity, other.has_infinity) else None
        return ClopenSet(finite, tail)

    def intersect(self, other: "ClopenSet") -> "ClopenSet":
        return self._combine(other, lambda p, q: p and q)

    def union(self, other: "ClopenSet") -> "ClopenSet":
        return self._combine(other, lambda p, q: p or q)

    def subtract(self, other: "ClopenSet") -> "ClopenSet":
        return self._combine(other, lambda p, q: p and not q)

    def complement(self) -> "ClopenSet":
        return ClopenSet.full().subtract(self)

    __and__ = intersect
    __or__ = union
    __sub__ = subtract

    # rendering ------------------------------------------------------------

    def to_json(self) -> dict:
        return {"finite": sorted(self.finite), "tail": self.tail}

    @classmethod
    def from_json(cls, data: dict) -> "ClopenSet":
        try:
            return cls(frozenset(data.get("finite", [])), data.get("tail"))
        except (AttributeError, TypeError, ValueError) as exc:
            raise ParseError(f"bad coordinate set {data!r}: {exc}") from exc

    def __str__(self) -> str:
        if self.is_empty():
            return "∅"
        parts = []
        if self.finite:
            parts.append("{" + ",".join(str(x) for x in sorted(self.finite)) + "}")
        if self.tail is not None:
            parts.append(f"[{self.tail},∞]")
        return "∪".join(parts)


def shift_pre(s: ClopenSet, m: int) -> ClopenSet:
    """{x : x + m ∈ s}, with ∞ + m = ∞."""
    finite = frozenset(y - m for y in s.finite if y - m >= 0)
    tail = None if s.tail is None else max(0, s.tail - m)
    return ClopenSet(finite, tail)


def cardinality(s: ClopenSet) -> ExtNat:
    return s.cardinality()


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

Tree = Union[bool, Tuple[Tuple[ClopenSet, "Tree"], ...]]


def _empty_tree(dim: int) -> Tree:
    return False if dim == 0 else ()


def _full_tree(dim: int) -> Tree:
    tree: Tree = True
    for _ in range(dim):
        tree = ((ClopenSet.full(), tree),)
    return tree


def _slice(tree: Tree, x: int, dim: int) -> Tree:
    for piece, sub in tree:
        if x in piece:
            return sub
    return _empty_tree(dim - 1)


_BOOL_OPS = {
    "and": lambda p, q: p and q,
    "or": lambda p, q: p or q,
    "sub": lambda p, q: p and not q,
}

# entries kept by the merge memo
MERGE_CACHE_SIZE = 1 << 16


@lru_cache(maxsize=MERGE_CACHE_SIZE)
def _merge(dim: int, left: Tree, right: Tree, op: str) -> Tree:
    if dim == 0:
        return _BOOL_OPS[op](left, right)
    bound = max((piece.bound() for piece, _ in left + right), default=0)
    empty = _empty_tree(dim - 1)
    # x == bound stands for the whole tail [bound, ∞]
    groups: dict = {}
    for x in range(bound + 1):
        sub = _merge(dim - 1, _slice(left, x, dim), _slice(right, x, dim), op)
        if sub != empty:
            groups.setdefault(sub, []).append(x)
    pieces = []
    for sub, xs in groups.items():
        tail = bound if xs[-1] == bound else None
        pieces.append((ClopenSet(frozenset(x for x in xs if x < bound), tail), sub))
    pieces.sort(key=lambda item: item[0].sort_key())
    return tuple(pieces)


def _box_tree(box: Sequence[ClopenSet]) -> Tree:
    if any(c.is_empty() for c in box):
        return _empty_tree(len(box))
    tree: Tree = True
    for c in reversed(box):
        tree = ((c, tree),)
    return tree


def _graft(tree: Tree, dim: int, leaf: Tree) -> Tree:
    if dim == 0:
        return leaf if tree else False
    return tuple((piece, _graft(sub, dim - 1, leaf)) for piece, sub in tree)


def _flatten(tree: Tree, dim: int):
    if dim == 0:
        if tree:
            yield ()
        return
    for piece, sub in tree:
        for rest in _flatten(sub, dim - 1):
            yield (piece,) + rest


@dataclass(frozen=True)
class BoxRegion:
    dim: int
    tree: Tree

    # constructors ---------------------------------------------------------

    @classmethod
    def empty(cls, dim: int) -> "BoxRegion":
        return cls(dim, _empty_tree(dim))

    @classmethod
    def full(cls, dim: int) -> "BoxRegion":
        return cls(dim, _full_tree(dim))

    @classmethod
    def from_box(cls, box: Sequence[ClopenSet]) -> "BoxRegion":
        return cls(len(box), _box_tree(tuple(box)))

    @classmethod
    def from_boxes(cls, dim: int, boxes: Iterable[Sequence[ClopenSet]]) -> "BoxRegion":
        region = cls.empty(dim)
        for box in boxes:
            if len(box) != dim:
                raise DimensionMismatch(f"box of length {len(box)} in a region of dim {dim}")
            region = region.union(cls.from_box(box))
        return region

    # queries --------------------------------------------------------------

    @property
    def boxes(self) -> list:
        return list(_flatten(self.tree, self.dim))

    def is_empty(self) -> bool:
        return self.tree == _empty_tree(self.dim)

    def contains(self, point: Sequence[Point]) -> bool:
        if len(point) != self.dim:
            raise DimensionMismatch(f"point {point} not in dimension {self.dim}")
        tree = self.tree
        for x in point:
            for piece, sub in tree:
                if x in piece:
                    tree = sub
                    break
            else:
                return False
        return bool(tree)

    __contains__ = contains

    def cardinality(self) -> ExtNat:
        total = ExtNat(0)
        for box in self.boxes:
            size = ExtNat(1)
            for c in box:
                card = c.cardinality()
                size = INF if card.is_infinite else size * card.value
            total = total + size
        return total

    def is_finite(self) -> bool:
        return all(c.is_finite() for box in self.boxes for c in box)

    # set algebra ----------------------------------------------------------

    def _check(self, other: "BoxRegion"):
        if self.dim != other.dim:
            raise DimensionMismatch(f"region dimensions differ: {self.dim} vs {other.dim}")

    def intersect(self, other: "BoxRegion") -> "BoxRegion":
        self._check(other)
        return BoxRegion(self.dim, _merge(self.dim, self.tree, other.tree, "and"))

    def union(self, other: "BoxRegion") -> "BoxRegion":
        self._check(other)
        return BoxRegion(self.dim, _merge(self.dim, self.tree, other.tree, "or"))

    def subtract(self, other: "BoxRegion") -> "BoxRegion":
        self._check(other)
        return BoxRegion(self.dim, _merge(self.dim, self.tree, other.tree, "sub"))

    def complement(self) -> "BoxRegion":
        return BoxRegion.full(self.dim).subtract(self)

    __and__ = intersect
    __or__ = union
    __sub__ = subtract

    def product(self, other: "BoxRegion") -> "BoxRegion":
        """Cartesian product, coordinates of self first."""
        if other.is_empty():
            return BoxRegion.empty(self.dim + other.dim)
        return BoxRegion(self.dim + other.dim, _graft(self.tree, self.dim, other.tree))

    def shift_pre(self, m: Sequence[int]) -> "BoxRegion":
        if len(m) != self.dim:
            raise DimensionMismatch(f"translation {tuple(m)} in dimension {self.dim}")
        return BoxRegion.from_boxes(
            self.dim, (tuple(shift_pre(c, mi) for c, mi in zip(box, m)) for box in self.boxes)
        )

    def pinned_slice(self, pinned: Sequence[int]) -> "BoxRegion":
        """
        Restriction to the face where every coordinate in `pinned` (0-based) is ∞,
        as a region in the remaining coordinates.
        """
        keep = [i for i in range(self.dim) if i not in set(pinned)]
        boxes = [
            tuple(box[i] for i in keep)
            for box in self.boxes
            if all(box[i].has_infinity for i in pinned)
        ]
        return BoxRegion.from_boxes(len(keep), boxes)

    # rendering ------------------------------------------------------------

    def to_json(self) -> list:
        return [[c.to_json() for c in box] for box in self.boxes]

    @classmethod
    def from_json(cls, dim: int, data) -> "BoxRegion":
        try:
            boxes = [tuple(ClopenSet.from_json(c) for c in box) for box in data]
        except TypeError as exc:
            raise ParseError(f"bad region {data!r}") from exc
        return cls.from_boxes(dim, boxes)

    def __str__(self) -> str:
        if self.is_empty():
            return "∅"
        if self.dim == 0:
            return "pt"
        return " ⊔ ".join("×".join(str(c) for c in box) for box in self.boxes)


def intersect(a: BoxRegion, b: BoxRegion) -> BoxRegion:
    return a.intersect(b)


def subtract(a: BoxRegion, b: BoxRegion) -> BoxRegion:
    return a.subtract(b)


def union_all(dim: int, regions: Iterable[BoxRegion]) -> BoxRegion:
    return reduce(BoxRegion.union, regions, BoxRegion.empty(dim))


def product_box(dim: int, coords: dict) -> BoxRegion:
    """Box with the given ClopenSet at 0-based coordinates, full elsewhere."""
    return BoxRegion.from_box(tuple(coords.get(i, ClopenSet.full()) for i in range(dim)))
