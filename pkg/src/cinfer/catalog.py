"""Built-in catalog of reference distributions and rank functions.

Entries EX1..EX5 are the five counterexample distributions whose entropy
functions violate the Ingleton inequality, CON1..CON9 the nine tight
sub-maximal constructions (each a strong probabilistic representation of
an explicit rank function), HXY the four-variable rank function with
Ingleton value -1 that admits no such representation, and FULL the product
of independent uniform bits.

Every entry ships as data files (distribution / rank / claimed-structure
JSON), so a transcription error is a data fix; ``verify`` re-derives each
claim from the density.  The 92 irreducible CI structures are the
permutation orbits of the thirteen catalog structures together with the
full structure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .dist import JointDistribution, entropy_function, induced_ci_structure
from .inference import orbit
from .setfn import (
    SetFunction,
    induced_ci_structure_of_rank,
    ingleton_of_singletons,
    is_matroid,
    is_polymatroid,
    is_tight,
    rank_functions_equal_upto_scale,
)
from .structures import CIStructure

ENTRY_IDS = (
    "EX1", "EX2", "EX3", "EX4", "EX5",
    "HXY",
    "CON1", "CON2", "CON3", "CON4", "CON5", "CON6", "CON7", "CON8", "CON9",
    "FULL",
)

COUNTEREXAMPLE_IDS = ("EX1", "EX2", "EX3", "EX4", "EX5")
CONSTRUCTION_IDS = tuple(f"CON{k}" for k in range(1, 10))
PROPORTIONALITY_TOL = 1e-9


@dataclass(frozen=True)
class CatalogEntry:
    """One catalog item with whatever data and claims it carries."""

    id: str
    distribution: JointDistribution | None = None
    rank_function: SetFunction | None = None
    claimed_statements: CIStructure | None = None
    statements_complete: bool = False
    claimed_orbit_size: int | None = None
    entropy_scale_ln_of: int | None = None
    claimed_matroid: bool | None = None
    claimed_tight: bool | None = None
    claimed_ingleton: str | None = None


def _load_json(name: str) -> dict:
    ref = resources.files("cinfer") / "data" / "catalog" / name
    return json.loads(ref.read_text())


_CACHE: dict[str, CatalogEntry] = {}


def get(entry_id: str) -> CatalogEntry:
    """Catalog entry by id (EX1..EX5, HXY, CON1..CON9, FULL)."""
    if entry_id in _CACHE:
        return _CACHE[entry_id]
    claims = _load_json("claims.json")
    if entry_id not in claims:
        raise KeyError(f"unknown catalog entry {entry_id!r}; known: {ENTRY_IDS}")
    c = claims[entry_id]
    entry = CatalogEntry(
        id=entry_id,
        distribution=(
            JointDistribution.from_json_dict(_load_json(c["distribution"]))
            if "distribution" in c
            else None
        ),
        rank_function=(
            SetFunction.from_json_dict(_load_json(c["rank_function"]))
            if "rank_function" in c
            else None
        ),
        claimed_statements=(
            CIStructure.from_json_dict(_load_json(c["statements"]))
            if "statements" in c
            else None
        ),
        statements_complete=c.get("statements_complete", False),
        claimed_orbit_size=c.get("orbit_size"),
        entropy_scale_ln_of=c.get("entropy_scale_ln_of"),
        claimed_matroid=c.get("is_matroid"),
        claimed_tight=c.get("is_tight"),
        claimed_ingleton=c.get("ingleton_singletons"),
    )
    _CACHE[entry_id] = entry
    return entry


def entries() -> list[CatalogEntry]:
    return [get(eid) for eid in ENTRY_IDS]


@dataclass
class VerificationReport:
    """Outcome of re-deriving one entry's claims from its data."""

    id: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [f"{name}: {detail}" for name, ok, detail in self.checks if not ok]


def verify(entry: CatalogEntry) -> VerificationReport:
    """Re-derive every claim of an entry: induced structure, entropy-rank
    proportionality, orbit size, and the rank-function predicates."""
    report = VerificationReport(entry.id)
    induced = None
    if entry.distribution is not None:
        induced = induced_ci_structure(entry.distribution)
    if entry.claimed_statements is not None and induced is not None:
        if entry.statements_complete:
            report.add(
                "statements",
                induced.members == entry.claimed_statements.members,
                f"induced {len(induced)} vs claimed {len(entry.claimed_statements)}",
            )
        else:
            report.add(
                "statements-hold",
                entry.claimed_statements.members <= induced.members,
                "claimed statements not all induced",
            )
    if entry.distribution is not None and entry.rank_function is not None:
        h = entropy_function(entry.distribution)
        ok, c = rank_functions_equal_upto_scale(h, entry.rank_function, PROPORTIONALITY_TOL)
        report.add("proportionality", ok, f"c = {c:.9f}")
        if entry.entropy_scale_ln_of is not None:
            report.add(
                "scale-constant",
                abs(c - math.log(entry.entropy_scale_ln_of)) <= PROPORTIONALITY_TOL,
                f"c = {c:.9f} vs ln({entry.entropy_scale_ln_of})",
            )
        if entry.claimed_statements is not None:
            rank_structure = induced_ci_structure_of_rank(entry.rank_function, 0)
            report.add(
                "rank-structure",
                rank_structure.members == entry.claimed_statements.members,
                "rank function induces a different structure",
            )
    if entry.claimed_orbit_size is not None:
        target = entry.claimed_statements if entry.claimed_statements is not None else induced
        if target is not None:
            report.add(
                "orbit",
                len(orbit(target)) == entry.claimed_orbit_size,
                f"orbit {len(orbit(target))} vs claimed {entry.claimed_orbit_size}",
            )
    if entry.rank_function is not None:
        report.add("polymatroid", is_polymatroid(entry.rank_function).ok, "not a polymatroid")
        if entry.claimed_tight is not None:
            report.add(
                "tight",
                is_tight(entry.rank_function) == entry.claimed_tight,
                f"tightness != {entry.claimed_tight}",
            )
        if entry.claimed_matroid is not None:
            report.add(
                "matroid",
                is_matroid(entry.rank_function) == entry.claimed_matroid,
                f"matroid predicate != {entry.claimed_matroid}",
            )
        if entry.claimed_ingleton is not None:
            value = ingleton_of_singletons(entry.rank_function)
            report.add(
                "ingleton",
                value == Fraction(entry.claimed_ingleton),
                f"ingleton {value} vs claimed {entry.claimed_ingleton}",
            )
    return report


def verify_all() -> list[VerificationReport]:
    return [verify(e) for e in entries()]


def all_irreducibles() -> list[CIStructure]:
    """The 92 irreducible CI structures over four variables: the orbits of
    the nine sub-maximal structures (31 members), the orbits of the four
    counterexample structures (60 members), and the full structure."""
    members: dict[int, CIStructure] = {}
    sources = [get(f"CON{k}").claimed_statements for k in range(1, 10)]
    sources += [get(f"EX{k}").claimed_statements for k in range(1, 5)]
    sources.append(get("FULL").claimed_statements)
    for s in sources:
        for img in orbit(s):
            members[img.to_bits()] = img
    return [members[b] for b in sorted(members)]


def irreducible_orbit_sizes() -> list[int]:
    """Orbit sizes of the 14 permutational types, constructions first, then
    counterexamples, then the full structure."""
    out = []
    for eid in CONSTRUCTION_IDS + ("EX1", "EX2", "EX3", "EX4", "FULL"):
        out.append(len(orbit(get(eid).claimed_statements)))
    return out
