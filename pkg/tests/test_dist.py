"""Exact distribution algebra: marginals, CI tests, products, entropy,
divergence, and the intersection-variable extension."""

import math
import random
from fractions import Fraction

import pytest

from cinfer import catalog
from cinfer.dist import (
    DominanceError,
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
)
from cinfer.inequalities import random_distribution
from cinfer.setfn import delta

from oracles import brute_force_is_ci, entropy_of_subset, marginal_table

EX1 = catalog.get("EX1").distribution
EX5 = catalog.get("EX5").distribution
CON1 = catalog.get("CON1").distribution
FULL = catalog.get("FULL").distribution

# the three-variable marginal of the fifth counterexample onto (x, z, u),
# as printed: eight rows over sixty-fourths
EX5_XZU_ROWS = {
    (0, 0, 0): Fraction(21, 64),
    (0, 0, 1): Fraction(1, 64),
    (0, 1, 0): Fraction(7, 64),
    (0, 1, 1): Fraction(3, 64),
    (1, 0, 0): Fraction(3, 64),
    (1, 0, 1): Fraction(7, 64),
    (1, 1, 0): Fraction(1, 64),
    (1, 1, 1): Fraction(21, 64),
}
EX5_YZU_ROWS = {
    (0, 0, 0): Fraction(21, 64),
    (0, 0, 1): Fraction(7, 64),
    (0, 1, 0): Fraction(1, 64),
    (0, 1, 1): Fraction(3, 64),
    (1, 0, 0): Fraction(3, 64),
    (1, 0, 1): Fraction(1, 64),
    (1, 1, 0): Fraction(7, 64),
    (1, 1, 1): Fraction(21, 64),
}


class TestConstruction:
    def test_rows_must_normalize(self):
        space = SampleSpace(("a", "b"), (2, 2))
        with pytest.raises(ValueError):
            JointDistribution(space, {(0, 0): Fraction(1, 2)})

    def test_negative_probability_rejected(self):
        space = SampleSpace(("a", "b"), (2, 2))
        with pytest.raises(ValueError):
            JointDistribution(
                space, {(0, 0): Fraction(3, 2), (1, 1): Fraction(-1, 2)}
            )

    def test_zero_rows_dropped(self):
        space = SampleSpace(("a", "b"), (2, 2))
        P = JointDistribution(space, {(0, 0): 1, (1, 1): 0})
        assert P.support() == [(0, 0)]

    def test_out_of_range_value_rejected(self):
        space = SampleSpace(("a", "b"), (2, 2))
        with pytest.raises(ValueError):
            JointDistribution(space, {(0, 2): 1})

    def test_json_round_trip(self):
        again = JointDistribution.loads(EX5.dumps())
        assert again == EX5
        data = EX5.to_json_dict()
        assert data["variables"][0] == {"name": "x", "cardinality": 2}
        assert {"config": [0, 0, 0, 0], "prob": "9/32"} in data["density"]


class TestMarginal:
    def test_ex5_xzu_table(self):
        assert marginal(EX5, "xzu").marginal_density(7) == EX5_XZU_ROWS
        assert EX5.marginal_density(EX5.mask("xzu")) == EX5_XZU_ROWS

    def test_ex5_yzu_table(self):
        assert EX5.marginal_density(EX5.mask("yzu")) == EX5_YZU_ROWS

    def test_marginal_of_everything_is_identity(self):
        assert marginal(EX5, EX5.space.full_mask) == EX5

    def test_point_mass_marginal(self):
        m = marginal(CON1, "zu")
        assert m.support() == [(0, 0)]
        assert m.prob((0, 0)) == 1

    def test_matches_direct_summation(self):
        rng = random.Random(3)
        for _ in range(25):
            P = random_distribution(rng)
            mask = rng.randrange(1, 16)
            keep = [k for k in range(4) if mask >> k & 1]
            assert P.marginal_density(mask) == marginal_table(
                P._density, P.cardinalities, keep
            )

    def test_empty_marginal_rejected(self):
        with pytest.raises(ValueError):
            marginal(EX5, 0)


class TestIsCI:
    def test_first_counterexample_statements(self):
        assert is_ci(EX1, "x", "y", "")
        assert not is_ci(EX1, "z", "u", "")
        assert is_ci(EX1, "z", "u", "x")
        assert is_ci(EX1, "z", "u", "xy")

    def test_functional_dependence_reading(self):
        # a constant variable is a function of anything, including nothing
        assert is_ci(CON1, "u", "u", "")
        # the duplicated bit is a function of its copy but not of a constant
        assert is_ci(CON1, "x", "x", "y")
        assert not is_ci(CON1, "x", "x", "z")

    def test_empty_side_always_holds(self):
        rng = random.Random(5)
        for _ in range(20):
            P = random_distribution(rng)
            assert is_ci(P, 0, rng.randrange(16), rng.randrange(16))

    def test_agrees_with_full_grid_oracle(self):
        rng = random.Random(7)
        for _ in range(120):
            P = random_distribution(rng)
            X, Y, Z = rng.randrange(16), rng.randrange(16), rng.randrange(16)
            assert is_ci(P, X, Y, Z) == brute_force_is_ci(
                P._density, P.cardinalities, X, Y, Z
            ), (P.support(), X, Y, Z)


class TestConditionalProduct:
    def test_unconditioned_product(self):
        Q = marginal(EX1, "x")
        R = marginal(EX1, "yz")
        P = conditional_product(Q, R, ("x",), ("y", "z"), ())
        assert is_ci(P, P.mask("x"), P.mask("yz"), 0)
        assert marginal(P, "x") == Q

    def test_glues_ex5_marginals(self):
        Q = marginal(EX5, "xzu")
        R = marginal(EX5, "yzu")
        P = conditional_product(Q, R, ("x",), ("y",), ("z", "u"))
        assert is_ci(P, P.mask("x"), P.mask("y"), P.mask("zu"))
        assert marginal(P, "xzu").reordered(Q.names) == Q
        assert marginal(P, "yzu").reordered(R.names) == R
        # the glued distribution differs from the original, which is not
        # conditionally independent there
        assert not is_ci(EX5, "x", "y", "zu")

    def test_factorization_identity_on_catalog(self, catalog_entries):
        # wherever A _||_ B | C holds, regluing the two marginals gives back
        # the distribution itself
        for entry in catalog_entries:
            P = entry.distribution
            if P is None:
                continue
            for A, B, C in ((("x",), ("y",), ("z", "u")), (("z",), ("u",), ("x", "y"))):
                if not is_ci(P, P.mask(A), P.mask(B), P.mask(C)):
                    continue
                glued = conditional_product(
                    marginal(P, A + C), marginal(P, B + C), A, B, C
                )
                assert glued.reordered(P.names) == P, entry.id

    def test_rejects_non_consonant_factors(self):
        Q = marginal(EX1, "xz")
        R = marginal(EX5, "yz")  # different z-marginal
        with pytest.raises(ValueError):
            conditional_product(Q, R, ("x",), ("y",), ("z",))

    def test_rejects_empty_sides(self):
        Q = marginal(EX1, "z")
        R = marginal(EX1, "yz")
        with pytest.raises(ValueError):
            conditional_product(Q, R, (), ("y",), ("z",))


class TestEntropy:
    def test_duplicated_bit_pattern(self):
        h = entropy_function(CON1)
        for m in h.base.subsets():
            rank = min(bin(m & 0b0011).count("1"), 1)
            assert float(h.values[m]) == pytest.approx(rank * math.log(2), abs=1e-12)

    def test_ternary_two_wise_uniform(self):
        h = entropy_function(catalog.get("CON7").distribution)
        for m in h.base.subsets():
            rank = min(bin(m).count("1"), 2)
            assert float(h.values[m]) == pytest.approx(rank * math.log(3), abs=1e-12)

    def test_ex5_pair_correlation_value(self):
        # the (x,y)-marginal puts (1 + a)/4 on agreement with a = 1/8, so
        # the shared information is ((1+a)ln(1+a) + (1-a)ln(1-a))/2
        h = entropy_function(EX5)
        a = 1 / 8
        expected = ((1 + a) * math.log(1 + a) + (1 - a) * math.log(1 - a)) / 2
        assert float(delta(h, 1, 2, 0)) == pytest.approx(expected, abs=1e-12)

    def test_matches_summation_oracle(self):
        rng = random.Random(11)
        for _ in range(10):
            P = random_distribution(rng)
            h = entropy_function(P)
            for m in range(16):
                keep = [k for k in range(4) if m >> k & 1]
                assert float(h.values[m]) == pytest.approx(
                    entropy_of_subset(P._density, P.cardinalities, keep), abs=1e-11
                )

    def test_vanishing_difference_iff_independent(self, catalog_entries):
        from cinfer.structures import canonical_triplets

        for entry in catalog_entries:
            P = entry.distribution
            if P is None:
                continue
            h = entropy_function(P)
            for t in canonical_triplets(4):
                exact = is_ci(P, 1 << t.i, 1 << t.j, t.K)
                near_zero = abs(float(delta(h, 1 << t.i, 1 << t.j, t.K))) <= 1e-9
                assert exact == near_zero, (entry.id, t)

    def test_vanishing_difference_iff_independent_compound(self):
        # the equivalence also covers compound and overlapping triplets
        rng = random.Random(19)
        for eid in ("EX5", "CON7", "CON9", "FULL"):
            P = catalog.get(eid).distribution
            h = entropy_function(P)
            for _ in range(60):
                X, Y, Z = rng.randrange(16), rng.randrange(16), rng.randrange(16)
                exact = is_ci(P, X, Y, Z)
                near_zero = abs(float(delta(h, X, Y, Z))) <= 1e-9
                assert exact == near_zero, (eid, X, Y, Z)


class TestDivergence:
    def test_self_divergence_is_zero(self):
        assert kl_divergence(EX5, EX5) == 0.0

    def test_two_point_value(self):
        space = SampleSpace(("a",), (2,))
        Q = JointDistribution(space, {(0,): Fraction(1, 2), (1,): Fraction(1, 2)})
        R = JointDistribution(space, {(0,): Fraction(1, 4), (1,): Fraction(3, 4)})
        expected = 0.5 * math.log(2) + 0.5 * math.log(2 / 3)
        assert kl_divergence(Q, R) == pytest.approx(expected, abs=1e-12)

    def test_nonnegative_on_random_pairs(self):
        rng = random.Random(13)
        for _ in range(50):
            cards = (2, 2, 2, 2)
            Q = random_distribution(rng, cards=cards)
            R = random_distribution(rng, cards=cards, max_support=16)
            try:
                d = kl_divergence(Q, R)
            except DominanceError:
                continue
            assert d >= -1e-12
            assert (d == 0) == (Q == R) or d > 0

    def test_dominance_error_carries_configuration(self):
        space = SampleSpace(("a",), (2,))
        Q = JointDistribution(space, {(0,): Fraction(1, 2), (1,): Fraction(1, 2)})
        R = JointDistribution(space, {(0,): 1})
        with pytest.raises(DominanceError) as err:
            kl_divergence(Q, R)
        assert err.value.config == (1,)

    def test_divergence_from_own_conditional_product(self):
        # equals the difference expression of the entropy function
        h = entropy_function(EX5)
        Pbar = conditional_product(
            marginal(EX5, "xzu"), marginal(EX5, "yzu"), ("x",), ("y",), ("z", "u")
        )
        div = kl_divergence(EX5, Pbar.reordered(EX5.names))
        assert div == pytest.approx(float(delta(h, 1, 2, 12)), abs=1e-12)


class TestLatticeProduct:
    def test_point_mass_keeps_structure(self):
        space = SampleSpace(("x", "y", "z", "u"), (1, 1, 1, 1))
        point = JointDistribution(space, {(0, 0, 0, 0): 1})
        prod = lattice_product(EX1, point)
        assert induced_ci_structure(prod).members == induced_ci_structure(EX1).members

    def test_permuted_factor_intersection(self):
        permuted = EX1.reordered(("z", "u", "x", "y"))
        # relabel back so both factors share the same variable names
        renamed = JointDistribution(
            SampleSpace(EX1.names, permuted.cardinalities),
            dict(permuted.items()),
        )
        prod = lattice_product(EX1, renamed)
        expected = induced_ci_structure(EX1).members & induced_ci_structure(renamed).members
        assert induced_ci_structure(prod).members == expected

    def test_self_product_idempotent_structure(self):
        for eid in ("EX1", "EX3", "CON6"):
            P = catalog.get(eid).distribution
            prod = lattice_product(P, P)
            assert induced_ci_structure(prod).members == induced_ci_structure(P).members

    def test_requires_matching_variables(self):
        with pytest.raises(ValueError):
            lattice_product(EX1, marginal(EX1, "xyz"))


class TestDoubleMarkov:
    def test_duplicated_variable_classes(self):
        # B and C carry the same value always: one class per shared value
        space = SampleSpace(("a", "b", "c"), (2, 3, 3))
        P = JointDistribution(
            space,
            {
                (0, 0, 0): Fraction(1, 4),
                (1, 0, 0): Fraction(1, 4),
                (0, 1, 1): Fraction(1, 4),
                (1, 2, 2): Fraction(1, 4),
            },
        )
        ext = double_markov_extend(P, "a", "b", "c")
        assert ext.cardinalities[-1] == 3
        w = ext.mask(ext.names[-1])
        assert is_ci(ext, w, w, ext.mask("b"))
        assert is_ci(ext, w, w, ext.mask("c"))
        assert is_ci(ext, ext.mask("a"), ext.mask("bc"), w)

    def test_full_support_collapses_to_constant(self):
        rng = random.Random(17)
        space = SampleSpace(("a", "b", "c"), (2, 2, 2))
        # independent full-support pair (b, c), a independent of both
        P = JointDistribution(
            space,
            {
                (i, j, k): Fraction(1, 8)
                for i in (0, 1)
                for j in (0, 1)
                for k in (0, 1)
            },
        )
        ext = double_markov_extend(P, "a", "b", "c")
        assert ext.cardinalities[-1] == 1

    def test_catalog_case(self):
        P = marginal(CON1, "xzu")
        assert is_ci(P, P.mask("x"), P.mask("z"), P.mask("u"))
        assert is_ci(P, P.mask("x"), P.mask("u"), P.mask("z"))
        ext = double_markov_extend(P, "x", "z", "u")
        w = ext.mask(ext.names[-1])
        assert is_ci(ext, w, w, ext.mask("z"))
        assert is_ci(ext, w, w, ext.mask("u"))
        assert is_ci(ext, ext.mask("x"), ext.mask("zu"), w)
        assert marginal(ext, "xzu") == P

    def test_rejects_violated_premises(self):
        P = marginal(EX5, "xzu")
        # x _||_ z | u holds but x _||_ u | z does not
        with pytest.raises(ValueError):
            double_markov_extend(P, "x", "u", "z")

    def test_extra_variables_summed_out(self):
        # handing over the full four-variable distribution marginalizes to
        # the named triple before extending
        ext = double_markov_extend(CON1, "x", "z", "u")
        assert set(ext.names) == {"x", "z", "u", ext.names[-1]}
        assert marginal(ext, "xzu") == marginal(CON1, "xzu")

    def test_fresh_label_avoids_collision(self):
        space = SampleSpace(("a", "w", "c"), (2, 2, 2))
        P = JointDistribution(
            space,
            {(i, j, j): Fraction(1, 4) for i in (0, 1) for j in (0, 1)},
        )
        ext = double_markov_extend(P, "a", "w", "c")
        assert ext.names[-1] == "w2"


class TestInducedStructure:
    def test_first_counterexample(self):
        s = induced_ci_structure(EX1)
        assert s.members == catalog.get("EX1").claimed_statements.members
        assert len(s) == 4

    def test_independent_bits_full(self):
        assert len(induced_ci_structure(FULL)) == 24

    def test_fifth_counterexample_two_statements(self):
        s = induced_ci_structure(EX5)
        assert {t.render(s.base) for t in s} == {"(x,z|u)", "(y,u|z)"}
