#!/usr/bin/env python3
"""Exact distribution algebra walkthrough.

Starts from two fair bits and their AND/OR, computes marginals and exact
CI queries, glues marginals with the conditional product, and shows that
the entropy function's vanishing difference expressions recover exactly
the rational CI structure.
"""

from fractions import Fraction

from cinfer import (
    JointDistribution,
    SampleSpace,
    conditional_product,
    double_markov_extend,
    entropy_function,
    induced_ci_structure,
    is_ci,
    kl_divergence,
    lattice_product,
    marginal,
    delta,
)

# x, y fair independent bits; z = x AND y; u = x OR y
space = SampleSpace(("x", "y", "z", "u"), (2, 2, 2, 2))
rows = {}
for a in (0, 1):
    for b in (0, 1):
        rows[(a, b, a & b, a | b)] = Fraction(1, 4)
P = JointDistribution(space, rows)

print("support of the AND/OR coupling:")
for cfg, p in P.items():
    print(f"  {cfg} -> {p}")

print("\nexact CI queries:")
for stmt, args in [
    ("x _||_ y",        ("x", "y", "")),
    ("z _||_ u",        ("z", "u", "")),
    ("z _||_ u | x",    ("z", "u", "x")),
    ("z _||_ u | x y",  ("z", "u", "xy")),
    ("z _||_ z | x y",  ("z", "z", "xy")),   # functional dependence reading
]:
    print(f"  {stmt:<16} {is_ci(P, *args)}")

print("\ninduced CI structure:", induced_ci_structure(P).render())

print("\nmarginal for (z, u):")
for cfg, p in marginal(P, "zu").items():
    print(f"  {cfg} -> {p}")

# conditional product: glue the (x,z,u)- and (y,z,u)-marginals over (z,u)
Q = marginal(P, "xzu")
R = marginal(P, "yzu")
glued = conditional_product(Q, R, ("x",), ("y",), ("z", "u"))
print("\nconditional product of the xzu/yzu marginals over (z,u):")
print(f"  x _||_ y | z u in the glued distribution: "
      f"{is_ci(glued, glued.mask('x'), glued.mask('y'), glued.mask('zu'))}")
print(f"  glued distribution equals the original: {glued.reordered(P.names) == P}")

# the divergence from the glued distribution is the conditional information
h = entropy_function(P)
div = kl_divergence(P, glued.reordered(P.names))
print(f"  divergence from it = {div:.12f}")
print(f"  delta of the entropy function = {float(delta(h, 1, 2, 12)):.12f}")

# lattice product: CI structure of the pairing = intersection of structures
pair = lattice_product(P, P)
print("\nself lattice product keeps the structure:",
      induced_ci_structure(pair).members == induced_ci_structure(P).members)

# intersection variable for a double-Markov pair
M = marginal(P, "xzu")
if is_ci(M, M.mask("x"), M.mask("z"), M.mask("u")) and is_ci(
    M, M.mask("x"), M.mask("u"), M.mask("z")
):
    ext = double_markov_extend(M, "x", "z", "u")
    w = ext.names[-1]
    print(f"\ndouble-Markov extension adds '{w}' with "
          f"{ext.cardinalities[-1]} value(s); x _||_ z u | {w}: "
          f"{is_ci(ext, ext.mask('x'), ext.mask('zu'), ext.mask(w))}")
else:
    print("\n(the xzu marginal is not a double-Markov pair here)")
