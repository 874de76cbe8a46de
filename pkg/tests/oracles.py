"""Independent reference implementations used to cross-check the library.

Everything here recomputes results from first principles with the most
direct (and slowest) method available: full-grid scans for the CI
factorization, direct summation for marginals and entropies, and repeated
whole-table passes for rule closure.  None of it shares code paths with
the implementations under test.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from fractions import Fraction


def grid(cards):
    return itertools.product(*(range(c) for c in cards))


def marginal_table(density, cards, keep):
    """Marginal of a config->prob dict onto the positions in `keep`."""
    out = defaultdict(Fraction)
    for cfg in grid(cards):
        p = density.get(cfg, Fraction(0))
        if p:
            out[tuple(cfg[k] for k in keep)] += p
    return dict(out)


def brute_force_is_ci(density, cards, X, Y, Z):
    """Factorization test scanned over the entire configuration grid."""
    n = len(cards)
    pos = lambda mask: [k for k in range(n) if mask >> k & 1]
    m_xyz = marginal_table(density, cards, pos(X | Y | Z))
    m_xz = marginal_table(density, cards, pos(X | Z))
    m_yz = marginal_table(density, cards, pos(Y | Z))
    m_z = marginal_table(density, cards, pos(Z))
    zero = Fraction(0)
    for cfg in grid(cards):
        lhs = m_xyz.get(tuple(cfg[k] for k in pos(X | Y | Z)), zero) * m_z.get(
            tuple(cfg[k] for k in pos(Z)), zero
        )
        rhs = m_xz.get(tuple(cfg[k] for k in pos(X | Z)), zero) * m_yz.get(
            tuple(cfg[k] for k in pos(Y | Z)), zero
        )
        if lhs != rhs:
            return False
    return True


def entropy_of_subset(density, cards, keep):
    """Shannon entropy (natural log) of the marginal on `keep`."""
    table = marginal_table(density, cards, keep)
    return -sum(float(p) * math.log(float(p)) for p in table.values() if p > 0)


def delta_from_table(values, X, Y, Z):
    """Difference expression read off a subset-indexed value table."""
    return values[X | Z] + values[Y | Z] - values[X | Y | Z] - values[Z]


def ingleton_from_table(values, X, Y, Z, U):
    """Ten-term Ingleton expression read off a subset-indexed value table."""
    return (
        -values[X | Y]
        + values[X | Z]
        + values[X | U]
        + values[Y | Z]
        + values[Y | U]
        + values[Z | U]
        - values[Z]
        - values[U]
        - values[X | Z | U]
        - values[Y | Z | U]
    )


def naive_closure(bits, rules):
    """Fixpoint by repeated full passes over the rule list."""
    s = bits
    changed = True
    while changed:
        changed = False
        for r in rules:
            if r.premise_bits & ~s == 0 and r.conclusion_bits & ~s != 0:
                s |= r.conclusion_bits
                changed = True
    return s


def random_rational_setfn(rng, n=4, lo=-60, hi=60, max_den=12):
    """Random exact set-function table indexed by subset mask."""
    return tuple(
        Fraction(rng.randint(lo, hi), rng.randint(1, max_den)) for _ in range(1 << n)
    )
