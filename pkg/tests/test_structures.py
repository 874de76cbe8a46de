"""Canonical triplets, elementary expansion, and CI-structure containers."""

import pytest

from cinfer.sets import BasicSet
from cinfer.structures import (
    CIStructure,
    ElementaryTriplet,
    canonical_triplets,
    expand_to_elementary,
    triplet_index,
)

BASE = BasicSet(("x", "y", "z", "u"))
X, Y, Z, U = 1, 2, 4, 8


class TestTriplets:
    def test_count_and_frozen_order(self):
        table = canonical_triplets(4)
        assert len(table) == 24
        # lexicographic by (i, j, K-as-integer): the first pair block is
        # (x,y|·) with conditioning 0, {z}, {u}, {z,u}
        assert table[0] == ElementaryTriplet(0, 1, 0)
        assert table[1] == ElementaryTriplet(0, 1, 4)
        assert table[2] == ElementaryTriplet(0, 1, 8)
        assert table[3] == ElementaryTriplet(0, 1, 12)
        assert table[4] == ElementaryTriplet(0, 2, 0)
        assert table[23] == ElementaryTriplet(2, 3, 3)

    def test_general_size_count(self):
        assert len(canonical_triplets(2)) == 1
        assert len(canonical_triplets(3)) == 6
        assert len(canonical_triplets(5)) == 80

    def test_canonicalization(self):
        assert ElementaryTriplet.canonical(2, 0, 8) == ElementaryTriplet(0, 2, 8)

    def test_invalid_triplets(self):
        with pytest.raises(ValueError):
            ElementaryTriplet(1, 1, 0)
        with pytest.raises(ValueError):
            ElementaryTriplet(2, 1, 0)
        with pytest.raises(ValueError):
            ElementaryTriplet(0, 1, 1)  # conditioning overlaps {x}

    def test_permutation_action(self):
        t = ElementaryTriplet(0, 1, 4)  # (x,y|z)
        # swap x and z
        assert t.permuted((2, 1, 0, 3)) == ElementaryTriplet(1, 2, 1)


class TestExpansion:
    def test_compound_pair(self):
        # (z, xu | {}) unfolds into four elementary statements
        got = expand_to_elementary(Z, X | U, 0)
        expected = {
            ElementaryTriplet(0, 2, 0),
            ElementaryTriplet(0, 2, 8),
            ElementaryTriplet(2, 3, 0),
            ElementaryTriplet(2, 3, 1),
        }
        assert got == expected

    def test_singletons_give_one_triplet(self):
        assert expand_to_elementary(X, Y, Z | U) == {ElementaryTriplet(0, 1, 12)}

    def test_empty_side_is_empty(self):
        assert expand_to_elementary(0, Y | Z, U) == frozenset()

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            expand_to_elementary(X | Y, Y, 0)

    def test_count_matches_product_formula(self):
        # |X| * |Y| * 2^(|X|+|Y|-2) conditioning choices above Z
        got = expand_to_elementary(X | Y, Z | U, 0)
        assert len(got) == 2 * 2 * 4


class TestCIStructure:
    def test_bits_round_trip(self):
        s = CIStructure.from_statements(BASE, [("x", "y", ""), ("z", "u", "xy")])
        assert CIStructure.from_bits(BASE, s.to_bits()) == s

    def test_hex_round_trip(self):
        s = CIStructure.full(BASE)
        assert s.to_hex() == "ffffff"
        assert CIStructure.from_hex(BASE, s.to_hex()) == s
        assert CIStructure.empty(BASE).to_hex() == "000000"

    def test_json_round_trip(self):
        s = CIStructure.from_statements(
            BASE, [("x", "y", "zu"), ("y", "u", ""), ("z", "u", "x")]
        )
        again = CIStructure.loads(s.dumps())
        assert again == s
        data = s.to_json_dict()
        assert data["variables"] == ["x", "y", "z", "u"]
        assert {"i": "x", "j": "y", "K": ["z", "u"]} in data["statements"]

    def test_symmetric_statement_normalized(self):
        s = CIStructure.from_statements(BASE, [("y", "x", "z")])
        assert ElementaryTriplet(0, 1, 4) in s

    def test_meet_requires_same_base(self):
        other = BasicSet(("a", "b", "c", "d"))
        with pytest.raises(ValueError):
            CIStructure.full(BASE) & CIStructure.full(other)

    def test_with_base_reindexes_by_label(self):
        s = CIStructure.from_statements(BASE, [("x", "z", "u")])
        flipped = BasicSet(("u", "z", "y", "x"))
        moved = s.with_base(flipped)
        assert moved.members == {ElementaryTriplet(1, 3, 1)}  # (z,x|u) there
        assert moved.with_base(BASE) == s

    def test_bit_positions_documented_order(self):
        idx = triplet_index(4)
        s = CIStructure.from_statements(BASE, [("x", "y", "")])
        assert s.to_bits() == 1 << idx[ElementaryTriplet(0, 1, 0)] == 1
