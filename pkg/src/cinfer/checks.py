"""Named verification checks aggregating every built-in reference result.

Each check re-derives one family of documented values from scratch: the
enumeration counts, the lattice equivalence, the irreducible census, the
counterexample certificates, the catalog claims, the rewriting identities,
the derivation schemas, the randomized inequality suites, and the exact
distribution-algebra identities.  The `verify-paper` CLI verb runs them
all; the acceptance test suite asserts them one by one.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import catalog, inequalities
from .dist import (
    conditional_product,
    double_markov_extend,
    entropy_function,
    induced_ci_structure,
    is_ci,
    kl_divergence,
    lattice_product,
    marginal,
)
from .inference import ci_structure_family, meet_closure_bits, semigraphoid_family
from .sets import BasicSet
from .setfn import SetFunction, delta, ingleton, is_matroid, is_polymatroid, is_tight, mask_form

SEMIGRAPHOID_COUNT = 26_424
CI_STRUCTURE_COUNT = 18_478
IRREDUCIBLE_COUNT = 92
ORBIT_TYPE_COUNT = 14
CONSTRUCTION_ORBITS = (6, 4, 1, 4, 1, 6, 1, 4, 4)
COUNTEREXAMPLE_ORBITS = (6, 24, 24, 6)
CLAIMED_STATEMENT_COUNTS = (20, 18, 18, 18, 18, 14, 12, 12, 12)

_BASE4 = BasicSet(("x", "y", "z", "u"))


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float


_family_cache: dict[str, object] = {}


def _sg_family(threads: int = 1):
    if "sg" not in _family_cache:
        _family_cache["sg"] = semigraphoid_family(threads=threads)
    return _family_cache["sg"]


def _ci_family(threads: int = 1):
    if "ci" not in _family_cache:
        _family_cache["ci"] = ci_structure_family(threads=threads)
    return _family_cache["ci"]


# ---------------------------------------------------------------------------
# Individual checks
# ---------------------------------------------------------------------------


def check_semigraphoid_count(threads: int = 1) -> tuple[bool, str]:
    count = int(_sg_family(threads).size)
    return count == SEMIGRAPHOID_COUNT, f"count = {count:,} (expected {SEMIGRAPHOID_COUNT:,})"


def check_ci_structure_count(threads: int = 1) -> tuple[bool, str]:
    count = int(_ci_family(threads).size)
    return count == CI_STRUCTURE_COUNT, f"count = {count:,} (expected {CI_STRUCTURE_COUNT:,})"


def check_lattice_equivalence(threads: int = 1) -> tuple[bool, str]:
    seeds = [s.to_bits() for s in catalog.all_irreducibles()]
    closed = meet_closure_bits(seeds)
    family = set(int(b) for b in _ci_family(threads))
    return closed == family, (
        f"meet closure has {len(closed):,} members, rule-closed family {len(family):,}"
    )


def check_irreducible_census(threads: int = 1) -> tuple[bool, str]:
    members = catalog.all_irreducibles()
    sizes = catalog.irreducible_orbit_sizes()
    expected = list(CONSTRUCTION_ORBITS + COUNTEREXAMPLE_ORBITS + (1,))
    ok = (
        len(members) == IRREDUCIBLE_COUNT
        and len({s.to_bits() for s in members}) == IRREDUCIBLE_COUNT
        and len(sizes) == ORBIT_TYPE_COUNT
        and sizes == expected
        and sum(sizes) == IRREDUCIBLE_COUNT
    )
    return ok, f"{len(members)} members in {len(sizes)} orbit types of sizes {sizes}"


def check_example5_closed_form(threads: int = 1) -> tuple[bool, str]:
    report = inequalities.verify_counterexample(5)
    return report.ok, (
        f"16 * ingleton = {16 * report.ingleton_value:.9f}"
        + ("" if report.ok else "; " + "; ".join(report.failures()))
    )


def check_counterexamples(threads: int = 1) -> tuple[bool, str]:
    reports = [inequalities.verify_counterexample(k) for k in range(1, 5)]
    ok = all(r.ok for r in reports)
    values = ", ".join(f"{r.id}: {r.ingleton_value:.6f}" for r in reports)
    failures = "; ".join(f for r in reports for f in r.failures())
    return ok, values + (f"; {failures}" if failures else "")


def check_catalog(threads: int = 1) -> tuple[bool, str]:
    reports = catalog.verify_all()
    ok = all(r.ok for r in reports)
    counts = [
        len(catalog.get(eid).claimed_statements)
        for eid in catalog.CONSTRUCTION_IDS
    ]
    ok = ok and tuple(counts) == CLAIMED_STATEMENT_COUNTS
    failures = "; ".join(f"{r.id} {f}" for r in reports for f in r.failures())
    return ok, f"statement counts {counts}" + (f"; {failures}" if failures else "")


def check_mask_identities(threads: int = 1) -> tuple[bool, str]:
    rng = random.Random(414213)
    x, y, z, u = 1, 2, 4, 8
    for _ in range(1000):
        values = tuple(
            Fraction(rng.randint(-60, 60), rng.randint(1, 12)) for _ in range(16)
        )
        h = SetFunction(_BASE4, values)
        direct = ingleton(h, x, y, z, u)
        for k in range(1, 6):
            if mask_form(h, k, x, y, z, u) != direct:
                return False, f"rewriting {k} differs on a random rational function"
    # symbolic equality on the indicator basis
    for T in _BASE4.subsets():
        e = SetFunction.from_callable(
            _BASE4, lambda m, T=T: Fraction(1) if m == T else Fraction(0)
        )
        direct = ingleton(e, x, y, z, u)
        for k in range(1, 6):
            if mask_form(e, k, x, y, z, u) != direct:
                return False, f"rewriting {k} differs on an indicator function"
    return True, "5 rewritings exact on 1,000 random rational functions and the indicator basis"


def check_hxy(threads: int = 1) -> tuple[bool, str]:
    h = catalog.get("HXY").rank_function
    poly = is_polymatroid(h).ok
    tight = is_tight(h)
    matroid = is_matroid(h)
    value = ingleton(h, 1, 2, 4, 8)
    ok = poly and tight and not matroid and value == Fraction(-1)
    return ok, f"polymatroid={poly}, tight={tight}, matroid={matroid}, ingleton={value}"


def check_derivations(threads: int = 1) -> tuple[bool, str]:
    schemas = inequalities.load_derivation_schemas()
    if len(schemas) != 19:
        return False, f"expected 19 schemas, found {len(schemas)}"
    good = all(inequalities.verify_derivation(s) for s in schemas)
    mutations = [
        inequalities.verify_derivation(m)
        for s in schemas
        for m in inequalities.schema_mutations(s)
    ]
    ok = good and not any(mutations) and len(mutations) == 57
    return ok, (
        f"19 schemas verify: {good}; {len(mutations)} single-field mutations all fail: "
        f"{not any(mutations)}"
    )


def check_conditional_inequalities(threads: int = 1) -> tuple[bool, str]:
    worst = 0.0
    for rule in range(1, 6):
        reports = inequalities.sample_conditional_inequality(rule, samples=200)
        if not all(r.premises_hold for r in reports):
            return False, f"rule {rule}: an enforced premise failed"
        low = min(r.ingleton_value for r in reports)
        worst = min(worst, low)
        if low < -inequalities.FLOAT_TOL:
            return False, f"rule {rule}: ingleton value {low!r} below tolerance"
    sixth = inequalities.check_sixth_failure()
    ok = sixth.premises_hold and sixth.ingleton_value < 0
    return ok, (
        f"5 rules x 200 samples, minimum ingleton {worst:.3e}; sixth premise pair "
        f"refuted with value {sixth.ingleton_value:.6f}"
    )


def _partitions(names, blocks: int, nonempty: tuple[int, ...]):
    """Ordered assignments of names into `blocks` groups, with the listed
    block indices required non-empty."""
    for labels in itertools.product(range(blocks), repeat=len(names)):
        groups = tuple(
            tuple(n for n, g in zip(names, labels) if g == b) for b in range(blocks)
        )
        if all(groups[b] for b in nonempty):
            yield groups


def check_distribution_algebra(threads: int = 1) -> tuple[bool, str]:
    rng = random.Random(577215)
    names = ("x", "y", "z", "u")

    # conditional product: marginal recovery and independence, exact
    partitions = list(_partitions(names, 3, (0, 1)))
    for _ in range(500):
        A, B, C = partitions[rng.randrange(len(partitions))]
        source = inequalities.random_distribution(rng)
        Q = marginal(source, A + C)
        R = marginal(source, B + C)
        P = conditional_product(Q, R, A, B, C)
        if (
            marginal(P, A + C).reordered(Q.names) != Q
            or marginal(P, B + C).reordered(R.names) != R
        ):
            return False, "conditional product failed to recover a factor marginal"
        if not is_ci(P, P.mask(A), P.mask(B), P.mask(C)):
            return False, "conditional product failed the independence postcondition"

    # divergence from the conditional product of own marginals equals the
    # difference expression of the entropy function
    dist_entries = [e for e in catalog.entries() if e.distribution is not None]
    for entry in dist_entries:
        P = entry.distribution
        h = entropy_function(P)
        for A, B, C in partitions:
            Pbar = conditional_product(marginal(P, A + C), marginal(P, B + C), A, B, C)
            div = kl_divergence(P, Pbar.reordered(P.names))
            dd = float(delta(h, P.mask(A), P.mask(B), P.mask(C)))
            if abs(div - dd) > 1e-9:
                return False, (
                    f"{entry.id}: divergence {div!r} vs difference {dd!r} at {(A, B, C)}"
                )

    # intersection-variable extension wherever the double-Markov premises hold
    triggered = 0
    for entry in dist_entries:
        P = entry.distribution
        for A, B, C in _partitions(names, 3, (0, 1, 2)):
            mA, mB, mC = P.mask(A), P.mask(B), P.mask(C)
            if not (is_ci(P, mA, mB, mC) and is_ci(P, mA, mC, mB)):
                continue
            triggered += 1
            ext = double_markov_extend(P, mA, mB, mC)
            w = ext.mask(ext.names[-1])
            if not is_ci(ext, w, w, ext.mask(B)):
                return False, f"{entry.id}: extension variable not a function of {B}"
            if not is_ci(ext, w, w, ext.mask(C)):
                return False, f"{entry.id}: extension variable not a function of {C}"
            if not is_ci(ext, ext.mask(A), ext.mask(B + C), w):
                return False, f"{entry.id}: extension failed the independence conclusion"

    # lattice products intersect CI structures, on all catalog pairs
    for i, e1 in enumerate(dist_entries):
        for e2 in dist_entries[i:]:
            Q, R = e1.distribution, e2.distribution
            product = lattice_product(Q, R)
            lhs = induced_ci_structure(product).members
            rhs = induced_ci_structure(Q).members & induced_ci_structure(R).members
            if lhs != rhs:
                return False, f"lattice product {e1.id} x {e2.id} structure mismatch"

    pair_count = len(dist_entries) * (len(dist_entries) + 1) // 2
    return True, (
        f"500 conditional products exact; divergence identity on {len(dist_entries)} "
        f"entries x {len(partitions)} partitions; {triggered} double-Markov extensions; "
        f"{pair_count} lattice products"
    )


CHECKS: dict[str, Callable[[int], tuple[bool, str]]] = {
    "semigraphoid-count": check_semigraphoid_count,
    "ci-structure-count": check_ci_structure_count,
    "lattice-equivalence": check_lattice_equivalence,
    "irreducible-census": check_irreducible_census,
    "example5-closed-form": check_example5_closed_form,
    "counterexamples": check_counterexamples,
    "catalog": check_catalog,
    "mask-identities": check_mask_identities,
    "hxy": check_hxy,
    "derivations": check_derivations,
    "conditional-inequalities": check_conditional_inequalities,
    "distribution-algebra": check_distribution_algebra,
}


def run_check(name: str, threads: int = 1) -> CheckResult:
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; known: {', '.join(CHECKS)}")
    start = time.perf_counter()
    ok, detail = CHECKS[name](threads)
    return CheckResult(name, ok, detail, time.perf_counter() - start)


def run_all(only: str | None = None, threads: int = 1) -> list[CheckResult]:
    names = [only] if only else list(CHECKS)
    return [run_check(name, threads) for name in names]
