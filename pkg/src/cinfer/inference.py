"""Rule-based CI inference over elementary triplets, and full enumeration
of the closed structures on four variables.

Twenty-seven abstract properties drive the engine: the three semi-graphoid
properties, five two-way equivalences valid for every polymatroid-induced
structure, and nineteen one-way implications valid for every structure
induced by four discrete random variables.  Rules are instantiated to
"ground rules" over a concrete basic set: the semi-graphoid exchange is
emitted in elementary form over all (i, j, k, K), while the equivalences
and implications take the four placeholders to the 4! orderings of a
four-variable base (elementary reduction makes singleton instantiation
sufficient; the enumeration oracle below confirms it).

Over four variables there are 2**24 candidate structures; scanning them
against the ground rules yields 26,424 semi-graphoids and 18,478 closed
structures, the latter also arising as the meet-closure of 92 irreducible
members (see :mod:`cinfer.catalog`).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .sets import BasicSet, bit_indices, submasks
from .structures import (
    CIStructure,
    ElementaryTriplet,
    bit_count_for,
    canonical_triplets,
    expand_to_elementary,
    triplet_index,
)

Pattern = tuple[str, str, str]  # (first, second, conditioning) placeholder strings


@dataclass(frozen=True)
class InferenceRule:
    """Abstract CI property over placeholders X, Y, Z, U.

    ``premises`` and ``conclusions`` are triplet patterns; a multi-letter
    component denotes a union.  Bidirectional rules assert an equivalence
    of the two pattern lists.
    """

    id: str
    premises: tuple[Pattern, ...]
    conclusions: tuple[Pattern, ...]
    bidirectional: bool = False


# The rule table.  S1 is built into triplet canonicalization and S0 has no
# elementary content, so neither produces ground instances; S2 is grounded
# separately in elementary exchange form.
RULES: dict[str, InferenceRule] = {
    "S0": InferenceRule("S0", (), (("", "Y", "Z"),)),
    "S1": InferenceRule("S1", (("X", "Y", "Z"),), (("Y", "X", "Z"),), True),
    "S2": InferenceRule(
        "S2", (("X", "YZ", "U"),), (("X", "Y", "ZU"), ("X", "Z", "U")), True
    ),
    "E1": InferenceRule(
        "E1",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Y")),
        (("X", "Y", "U"), ("X", "Z", "Y"), ("X", "U", "Z")),
        True,
    ),
    "E2": InferenceRule(
        "E2",
        (("X", "Y", "Z"), ("X", "U", "Y"), ("Y", "Z", "U"), ("Z", "U", "X")),
        (("X", "Y", "U"), ("X", "U", "Z"), ("Y", "Z", "X"), ("Z", "U", "Y")),
        True,
    ),
    "E3": InferenceRule(
        "E3",
        (("X", "Y", "ZU"), ("X", "Z", ""), ("Y", "U", ""), ("Z", "U", "XY")),
        (("X", "Y", ""), ("X", "Z", "YU"), ("Y", "U", "XZ"), ("Z", "U", "")),
        True,
    ),
    "E4": InferenceRule(
        "E4",
        (("X", "Y", ""), ("X", "Y", "ZU"), ("Z", "U", "X"), ("Z", "U", "Y")),
        (("X", "Y", "Z"), ("X", "Y", "U"), ("Z", "U", ""), ("Z", "U", "XY")),
        True,
    ),
    "E5": InferenceRule(
        "E5",
        (("X", "Y", "ZU"), ("X", "U", "Y"), ("Y", "Z", ""), ("Z", "U", "X")),
        (("X", "Y", "U"), ("X", "U", "YZ"), ("Y", "Z", "X"), ("Z", "U", "")),
        True,
    ),
    "I1": InferenceRule(
        "I1",
        (("X", "Y", ""), ("X", "Y", "Z"), ("Z", "U", "X"), ("Z", "U", "Y")),
        (("Z", "U", ""),),
    ),
    "I2": InferenceRule(
        "I2",
        (("X", "Y", ""), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "Y")),
        (("Z", "XU", ""),),
    ),
    "I3": InferenceRule(
        "I3",
        (("X", "Y", ""), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "Y")),
        (("X", "Z", ""),),
    ),
    "I4": InferenceRule(
        "I4",
        (("X", "Y", ""), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "Y")),
        (("X", "ZU", ""),),
    ),
    "I5": InferenceRule(
        "I5",
        (("X", "Y", ""), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "Y")),
        (("X", "Z", ""),),
    ),
    "I6": InferenceRule(
        "I6",
        (("X", "Y", ""), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "Y")),
        (("X", "Z", ""),),
    ),
    "I7": InferenceRule(
        "I7",
        (("X", "Y", ""), ("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "Y")),
        (("X", "YZ", ""),),
    ),
    "I8": InferenceRule(
        "I8",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "Y")),
        (("X", "Z", "Y"),),
    ),
    "I9": InferenceRule(
        "I9",
        (("X", "Y", "Z"), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "Y")),
        (("X", "Z", "Y"),),
    ),
    "I10": InferenceRule(
        "I10",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "Y")),
        (("X", "Z", "Y"),),
    ),
    "I11": InferenceRule(
        "I11",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "Y")),
        (("X", "Z", "Y"),),
    ),
    "I12": InferenceRule(
        "I12",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "Y")),
        (("X", "Z", "Y"),),
    ),
    "I13": InferenceRule(
        "I13",
        (("X", "Y", ""), ("X", "Y", "Z"), ("X", "Y", "U"), ("Z", "U", "XY")),
        (("X", "Y", "ZU"),),
    ),
    "I14": InferenceRule(
        "I14",
        (("X", "Y", "Z"), ("X", "Y", "U"), ("X", "Z", "U"), ("Z", "U", "XY")),
        (("X", "YZ", "U"),),
    ),
    "I15": InferenceRule(
        "I15",
        (("X", "Y", ""), ("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "XY")),
        (("X", "Z", "YU"),),
    ),
    "I16": InferenceRule(
        "I16",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "U", "Z"), ("Z", "U", "XY")),
        (("X", "Z", "YU"),),
    ),
    "I17": InferenceRule(
        "I17",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("X", "U", "Z"), ("Z", "U", "XY")),
        (("X", "Z", "YU"),),
    ),
    "I18": InferenceRule(
        "I18",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Z", "U", "X"), ("Z", "U", "XY")),
        (("X", "Z", "YU"),),
    ),
    "I19": InferenceRule(
        "I19",
        (("X", "Y", "Z"), ("X", "Z", "U"), ("Y", "Z", "U"), ("Z", "U", "XY")),
        (("Z", "XY", "U"),),
    ),
}

RULESETS = ("sg", "all")


@dataclass(frozen=True)
class GroundRule:
    """One instance of a rule over concrete variables, as triplet bitsets."""

    premise_bits: int
    conclusion_bits: int


def _pattern_bits(pattern: Pattern, assignment: dict[str, int], n: int) -> int:
    idx = triplet_index(n)

    def mask(letters: str) -> int:
        m = 0
        for ch in letters:
            m |= assignment[ch]
        return m

    bits = 0
    for t in expand_to_elementary(mask(pattern[0]), mask(pattern[1]), mask(pattern[2])):
        bits |= 1 << idx[t]
    return bits


def _exchange_instances(n: int) -> list[GroundRule]:
    """Semi-graphoid exchange {(i,j|kK), (i,k|K)} => {(i,j|K), (i,k|jK)} for
    all ordered (i, j, k) and K; the converse is the (i, k, j) instance."""
    idx = triplet_index(n)
    full = (1 << n) - 1
    out = []
    for i, j, k in itertools.permutations(range(n), 3):
        if j > k:
            continue  # the (i,k,j) instance is the reverse direction, emitted below
        for K in submasks(full & ~(1 << i) & ~(1 << j) & ~(1 << k)):
            a = 1 << idx[ElementaryTriplet.canonical(i, j, K | 1 << k)]
            b = 1 << idx[ElementaryTriplet.canonical(i, k, K)]
            c = 1 << idx[ElementaryTriplet.canonical(i, j, K)]
            d = 1 << idx[ElementaryTriplet.canonical(i, k, K | 1 << j)]
            out.append(GroundRule(a | b, c | d))
            out.append(GroundRule(c | d, a | b))
    return out


@lru_cache(maxsize=None)
def _ground_rules_cached(n: int, ruleset: str) -> tuple[GroundRule, ...]:
    if ruleset not in RULESETS:
        raise ValueError(f"ruleset must be one of {RULESETS}")
    rules: list[GroundRule] = _exchange_instances(n)
    if ruleset == "all":
        if n != 4:
            raise ValueError(
                "equivalence/implication ground rules are only available over 4 variables"
            )
        for rule in RULES.values():
            if rule.id in ("S0", "S1", "S2"):
                continue
            for perm in itertools.permutations(range(4)):
                assignment = dict(zip("XYZU", (1 << p for p in perm)))
                pre = 0
                for pat in rule.premises:
                    pre |= _pattern_bits(pat, assignment, n)
                con = 0
                for pat in rule.conclusions:
                    con |= _pattern_bits(pat, assignment, n)
                rules.append(GroundRule(pre, con))
                if rule.bidirectional:
                    rules.append(GroundRule(con, pre))
    # drop no-op instances, dedup, freeze order
    seen = {}
    for r in rules:
        if r.conclusion_bits & ~r.premise_bits == 0:
            continue
        seen[(r.premise_bits, r.conclusion_bits)] = r
    return tuple(seen[k] for k in sorted(seen))


def ground_rules(base: BasicSet, ruleset: str = "all") -> tuple[GroundRule, ...]:
    """All ground instances over the base, duplicates and no-ops removed.

    ``ruleset="sg"`` emits only the semi-graphoid exchange (any base size);
    ``"all"`` adds the equivalence and implication instances and requires
    exactly four variables.
    """
    return _ground_rules_cached(base.size, ruleset)


@lru_cache(maxsize=None)
class _Engine:
    """Ground rules of one (size, ruleset) pair with per-bit premise buckets."""

    def __init__(self, n: int, ruleset: str):
        self.n = n
        self.rules = _ground_rules_cached(n, ruleset)
        self.premises = tuple(r.premise_bits for r in self.rules)
        self.conclusions = tuple(r.conclusion_bits for r in self.rules)
        buckets: list[list[int]] = [[] for _ in range(bit_count_for(n))]
        for ri, r in enumerate(self.rules):
            for b in bit_indices(r.premise_bits):
                buckets[b].append(ri)
        self.buckets = tuple(tuple(b) for b in buckets)
        self._arrays: tuple[np.ndarray, np.ndarray] | None = None

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        if self._arrays is None:
            self._arrays = (
                np.array(self.premises, dtype=np.uint32),
                np.array(self.conclusions, dtype=np.uint32),
            )
        return self._arrays


def closure_bits(bits: int, n: int = 4, ruleset: str = "all") -> int:
    """Least superset of a triplet bitset closed under every ground rule.

    Worklist fixpoint: rules are bucketed by each premise triplet, so after
    the initial scan only rules touching newly added triplets re-fire.
    """
    engine = _Engine(n, ruleset)
    premises, conclusions, buckets = engine.premises, engine.conclusions, engine.buckets
    nrules = len(premises)
    pending = deque(range(nrules))
    queued = bytearray([1] * nrules)
    s = bits
    while pending:
        ri = pending.popleft()
        queued[ri] = 0
        if premises[ri] & ~s == 0:
            new = conclusions[ri] & ~s
            if new:
                s |= new
                for b in bit_indices(new):
                    for rj in buckets[b]:
                        if not queued[rj]:
                            queued[rj] = 1
                            pending.append(rj)
    return s


def is_closed_bits(bits: int, n: int = 4, ruleset: str = "all") -> bool:
    engine = _Engine(n, ruleset)
    inv = ~bits
    for p, c in zip(engine.premises, engine.conclusions):
        if p & inv == 0 and c & inv != 0:
            return False
    return True


def closure(s: CIStructure, ruleset: str | None = None) -> CIStructure:
    """CI closure of a structure: the least superset closed under the rules.

    Extensive, monotone and idempotent.  Defaults to all 27 properties on a
    four-variable base and to the semi-graphoid rules otherwise.
    """
    ruleset = ruleset or ("all" if s.base.size == 4 else "sg")
    return CIStructure.from_bits(s.base, closure_bits(s.to_bits(), s.base.size, ruleset))


def is_closed(s: CIStructure, ruleset: str | None = None) -> bool:
    """True when every ground rule with satisfied premises has its
    conclusions inside the structure."""
    ruleset = ruleset or ("all" if s.base.size == 4 else "sg")
    return is_closed_bits(s.to_bits(), s.base.size, ruleset)


# ---------------------------------------------------------------------------
# Enumeration over the 2**24 candidate structures (four variables)
# ---------------------------------------------------------------------------

_CANDIDATE_SPACE = 1 << 24
_CHUNK = 1 << 21


def _scan_chunk(start: int, premises: np.ndarray, conclusions: np.ndarray) -> np.ndarray:
    arr = np.arange(start, min(start + _CHUNK, _CANDIDATE_SPACE), dtype=np.uint32)
    ok = np.ones(arr.shape, dtype=bool)
    for p, c in zip(premises, conclusions):
        ok &= ~(((arr & p) == p) & ((arr & c) != c))
    return arr[ok]


def _filter_rules(
    candidates: np.ndarray, premises: np.ndarray, conclusions: np.ndarray
) -> np.ndarray:
    ok = np.ones(candidates.shape, dtype=bool)
    for p, c in zip(premises, conclusions):
        ok &= ~(((candidates & p) == p) & ((candidates & c) != c))
    return candidates[ok]


def semigraphoid_family(
    threads: int = 1, progress: Callable[[str], None] | None = None
) -> np.ndarray:
    """Sorted bitmasks of all semi-graphoids over four variables."""
    premises, conclusions = _Engine(4, "sg").arrays()
    starts = range(0, _CANDIDATE_SPACE, _CHUNK)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(lambda s: _scan_chunk(s, premises, conclusions), starts)
            )
    else:
        parts = []
        for s in starts:
            parts.append(_scan_chunk(s, premises, conclusions))
            if progress:
                progress(
                    f"scanned {min(s + _CHUNK, _CANDIDATE_SPACE):,} / "
                    f"{_CANDIDATE_SPACE:,} candidates"
                )
    return np.concatenate(parts)


def ci_structure_family(
    threads: int = 1, progress: Callable[[str], None] | None = None
) -> np.ndarray:
    """Sorted bitmasks of all structures closed under the full rule set.

    Every such structure is in particular a semi-graphoid, so the scan
    first restricts to semi-graphoids and then applies the remaining rules.
    """
    sg = semigraphoid_family(threads=threads, progress=progress)
    premises, conclusions = _Engine(4, "all").arrays()
    return _filter_rules(sg, premises, conclusions)


def dump_family(
    path: str, family: Iterable[int], base: BasicSet | None = None, human: bool = False
) -> None:
    """Write one structure per line as a 6-hex-digit bitmask; with
    ``human=True`` append the triplet list."""
    with open(path, "w") as f:
        for bits in family:
            bits = int(bits)
            if human and base is not None:
                f.write(f"{bits:06x}  {CIStructure.from_bits(base, bits).render()}\n")
            else:
                f.write(f"{bits:06x}\n")


def enumerate_semigraphoids(
    dump: str | None = None,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
    base: BasicSet | None = None,
    human_dump: bool = False,
) -> int:
    """Number of semi-graphoids over four variables (26,424)."""
    family = semigraphoid_family(threads=threads, progress=progress)
    if dump:
        dump_family(dump, family, base, human_dump)
    return int(family.size)


def enumerate_ci_structures(
    dump: str | None = None,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
    base: BasicSet | None = None,
    human_dump: bool = False,
) -> int:
    """Number of rule-closed CI structures over four variables (18,478)."""
    family = ci_structure_family(threads=threads, progress=progress)
    if dump:
        dump_family(dump, family, base, human_dump)
    return int(family.size)


# ---------------------------------------------------------------------------
# Meets, meet-closure, permutation orbits
# ---------------------------------------------------------------------------


def meet(s1: CIStructure, s2: CIStructure) -> CIStructure:
    """Intersection of two structures over the same base."""
    return s1 & s2


def meet_closure_bits(seed_bits: Iterable[int], n: int = 4) -> set[int]:
    """Least intersection-closed family of triplet bitsets containing the
    seeds and the full structure."""
    full = (1 << bit_count_for(n)) - 1
    seeds = sorted({int(b) for b in seed_bits})
    family = set(seeds)
    family.add(full)
    queue = list(family)
    while queue:
        w = queue.pop()
        for s in seeds:
            c = w & s
            if c not in family:
                family.add(c)
                queue.append(c)
    return family


def meet_closure(seeds: Sequence[CIStructure]) -> list[CIStructure]:
    """Meet-closure of the seeds (plus the full structure), as structures
    over the common base, sorted by bitmask."""
    if not seeds:
        raise ValueError("meet closure needs at least one seed")
    base = seeds[0].base
    for s in seeds[1:]:
        if s.base != base:
            raise ValueError("seeds must share one base")
    bits = meet_closure_bits((s.to_bits() for s in seeds), base.size)
    return [CIStructure.from_bits(base, b) for b in sorted(bits)]


def orbit(s: CIStructure) -> list[CIStructure]:
    """Distinct images of a structure under all permutations of its
    variables, sorted by bitmask."""
    images = {}
    for perm in itertools.permutations(range(s.base.size)):
        img = s.permuted(perm)
        images[img.to_bits()] = img
    return [images[b] for b in sorted(images)]


def orbit_bits(bits: int, n: int = 4) -> set[int]:
    table = canonical_triplets(n)
    idx = triplet_index(n)
    out = set()
    for perm in itertools.permutations(range(n)):
        img = 0
        for b in bit_indices(bits):
            img |= 1 << idx[table[b].permuted(perm)]
        out.add(img)
    return out
