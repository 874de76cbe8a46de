"""Elementary conditional-independence triplets and CI structures.

An elementary triplet (i, j | K) pairs two distinct variables with a
conditioning set disjoint from both; (j, i | K) is identified with it, so
triplets are stored with ``i < j`` in base order.  A CI structure is a set
of such triplets over a fixed basic set.  Over ``n`` variables there are
``C(n,2) * 2**(n-2)`` canonical triplets (24 for n = 4), each with a frozen
bit position: triplets sorted lexicographically by (i, j, K-as-integer).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .sets import BasicSet, bit_indices, pairwise_disjoint, submasks


@dataclass(frozen=True, order=True)
class ElementaryTriplet:
    """Canonical elementary CI statement (i, j | K) with i < j.

    ``i`` and ``j`` are variable positions, ``K`` a conditioning mask
    disjoint from both.
    """

    i: int
    j: int
    K: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("elementary triplet needs two distinct variables")
        if self.i > self.j:
            raise ValueError("triplet not canonical: require i < j")
        if self.K & (1 << self.i | 1 << self.j):
            raise ValueError("conditioning set must avoid both variables")

    @staticmethod
    def canonical(i: int, j: int, K: int) -> "ElementaryTriplet":
        """Build a triplet from an unordered pair, normalizing (j,i|K) to (i,j|K)."""
        if i > j:
            i, j = j, i
        return ElementaryTriplet(i, j, K)

    def permuted(self, perm: tuple[int, ...]) -> "ElementaryTriplet":
        """Image under a relabeling of variable positions."""
        K = 0
        for b in bit_indices(self.K):
            K |= 1 << perm[b]
        return ElementaryTriplet.canonical(perm[self.i], perm[self.j], K)

    def render(self, base: BasicSet) -> str:
        cond = base.label_string(self.K)
        return f"({base.names[self.i]},{base.names[self.j]}|{cond})"


@lru_cache(maxsize=None)
def canonical_triplets(n: int) -> tuple[ElementaryTriplet, ...]:
    """All canonical triplets over n variables in frozen bit order."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            others = ((1 << n) - 1) & ~(1 << i) & ~(1 << j)
            for K in sorted(submasks(others)):
                out.append(ElementaryTriplet(i, j, K))
    return tuple(out)


@lru_cache(maxsize=None)
def triplet_index(n: int) -> dict[ElementaryTriplet, int]:
    return {t: b for b, t in enumerate(canonical_triplets(n))}


def bit_count_for(n: int) -> int:
    return len(canonical_triplets(n))


def expand_to_elementary(X: int, Y: int, Z: int) -> frozenset[ElementaryTriplet]:
    """Elementary content of a compound statement over disjoint masks.

    Returns { (i, j | K) : i in X, j in Y, Z <= K <= (X|Y|Z) minus {i,j} }.
    Empty X or Y yields the empty set (the statement carries no content).
    """
    if not pairwise_disjoint(X, Y, Z):
        raise ValueError("expansion requires pairwise disjoint sets")
    out = set()
    union = X | Y | Z
    for i in bit_indices(X):
        for j in bit_indices(Y):
            free = union & ~(1 << i) & ~(1 << j) & ~Z
            for extra in submasks(free):
                out.add(ElementaryTriplet.canonical(i, j, Z | extra))
    return frozenset(out)


@dataclass(frozen=True)
class CIStructure:
    """Set of canonical elementary triplets over a basic set."""

    base: BasicSet
    members: frozenset[ElementaryTriplet]

    def __post_init__(self):
        idx = triplet_index(self.base.size)
        for t in self.members:
            if t not in idx:
                raise ValueError(f"triplet {t} not valid over {self.base}")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def empty(base: BasicSet) -> "CIStructure":
        return CIStructure(base, frozenset())

    @staticmethod
    def full(base: BasicSet) -> "CIStructure":
        return CIStructure(base, frozenset(canonical_triplets(base.size)))

    @staticmethod
    def from_bits(base: BasicSet, bits: int) -> "CIStructure":
        table = canonical_triplets(base.size)
        if bits >> len(table):
            raise ValueError("bitmask has bits beyond the triplet table")
        return CIStructure(base, frozenset(table[b] for b in bit_indices(bits)))

    @staticmethod
    def from_statements(
        base: BasicSet, statements: Iterable[tuple[str, str, Iterable[str]]]
    ) -> "CIStructure":
        """Build from (i-label, j-label, K-labels) statements."""
        members = set()
        for i, j, K in statements:
            members.add(
                ElementaryTriplet.canonical(base.index(i), base.index(j), base.mask(K))
            )
        return CIStructure(base, frozenset(members))

    # -- set algebra ---------------------------------------------------------

    def to_bits(self) -> int:
        idx = triplet_index(self.base.size)
        bits = 0
        for t in self.members:
            bits |= 1 << idx[t]
        return bits

    def __contains__(self, t: ElementaryTriplet) -> bool:
        return t in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[ElementaryTriplet]:
        return iter(sorted(self.members))

    def __and__(self, other: "CIStructure") -> "CIStructure":
        if self.base != other.base:
            raise ValueError("CI structures over different basic sets")
        return CIStructure(self.base, self.members & other.members)

    def __or__(self, other: "CIStructure") -> "CIStructure":
        if self.base != other.base:
            raise ValueError("CI structures over different basic sets")
        return CIStructure(self.base, self.members | other.members)

    def issubset(self, other: "CIStructure") -> bool:
        if self.base != other.base:
            raise ValueError("CI structures over different basic sets")
        return self.members <= other.members

    def permuted(self, perm: tuple[int, ...]) -> "CIStructure":
        """Image under a permutation of variable positions (labels fixed)."""
        return CIStructure(self.base, frozenset(t.permuted(perm) for t in self.members))

    def with_base(self, base: BasicSet) -> "CIStructure":
        """Reindex onto another base carrying the same labels (any order)."""
        if set(base.names) != set(self.base.names):
            raise ValueError("new base must carry the same labels")
        perm = tuple(base.index(n) for n in self.base.names)
        return CIStructure(base, frozenset(t.permuted(perm) for t in self.members))

    # -- rendering and serialization ----------------------------------------

    def to_hex(self) -> str:
        width = (bit_count_for(self.base.size) + 3) // 4
        return format(self.to_bits(), f"0{width}x")

    @staticmethod
    def from_hex(base: BasicSet, s: str) -> "CIStructure":
        return CIStructure.from_bits(base, int(s, 16))

    def render(self) -> str:
        if not self.members:
            return "(empty)"
        return " ".join(t.render(self.base) for t in self)

    def to_json_dict(self) -> dict:
        return {
            "variables": list(self.base.names),
            "statements": [
                {
                    "i": self.base.names[t.i],
                    "j": self.base.names[t.j],
                    "K": list(self.base.labels(t.K)),
                }
                for t in self
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "CIStructure":
        base = BasicSet(data["variables"])
        stmts = [(s["i"], s["j"], s.get("K", [])) for s in data["statements"]]
        return CIStructure.from_statements(base, stmts)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def loads(text: str) -> "CIStructure":
        return CIStructure.from_json_dict(json.loads(text))
