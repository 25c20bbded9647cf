import itertools

import pytest
from hypothesis import given

from logent.errors import NotEquivalence, RelationTooLarge, SchemaError, UniverseMismatch
from logent.partitions import (
    MAX_RELATION_N,
    PairRelation,
    Partition,
    Universe,
    all_partitions,
    common_dits_exist,
    dit_count,
    ditset,
    from_equivalence,
    full_relation,
    inditset,
    join,
    join_all,
    refines,
)

from conftest import brute_ditset, partition_pairs, partitions

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877}


class TestConstruction:
    def test_canonical_form(self):
        p = Partition.from_blocks([[3, 2], [1, 0]])
        assert p.blocks == ((0, 1), (2, 3))

    def test_equality_is_structural(self):
        assert Partition.from_blocks([[2], [0, 1]]) == Partition.from_blocks([[1, 0], [2]])

    @pytest.mark.parametrize(
        "blocks, n",
        [
            ([[0], []], 1),
            ([[0, 1], [1, 2]], 3),
            ([[0, 1]], 3),
            ([[0, 5]], 2),
            ([[0, "a"]], 2),
        ],
    )
    def test_rejects_bad_blocks(self, blocks, n):
        with pytest.raises(SchemaError):
            Partition.from_blocks(blocks, n=n)

    def test_universe_labels(self):
        u = Universe(3, ["a", "b", "c"])
        assert u.label(1) == "b"
        with pytest.raises(SchemaError):
            Universe(2, ["a", "a"])
        with pytest.raises(SchemaError):
            Universe(0)

    def test_json_round_trip(self):
        p = Partition.from_blocks([[0, 2], [1]], labels=["x", "y", "z"])
        q = Partition.from_json(p.to_json())
        assert q == p
        assert str(q) == "{{x,z}, {y}}"

    def test_json_schema_errors(self):
        with pytest.raises(SchemaError):
            Partition.from_json({"n": 2})
        with pytest.raises(SchemaError):
            Partition.from_json({"n": 2, "blocks": [0, 1]})
        with pytest.raises(SchemaError):
            Partition.from_json([1, 2])

    def test_from_labels(self):
        assert Partition.from_labels(["a", "b", "a"]).blocks == ((0, 2), (1,))


class TestDitset:
    def test_discrete(self):
        d = ditset(Partition.discrete(3))
        assert len(d) == 6
        assert all(j != k for j, k in d)

    def test_blob_empty(self):
        assert len(ditset(Partition.blob(5))) == 0

    def test_mixed_example(self):
        p = Partition.from_blocks([[0, 1], [2], [3]])
        d = ditset(p)
        assert set(d.pairs) == brute_ditset(p)
        assert len(d) == 10

    @given(partitions())
    def test_dit_indit_split_the_square(self, p):
        d, i = ditset(p), inditset(p)
        assert d.pairs | i.pairs == full_relation(p.universe).pairs
        assert not d.pairs & i.pairs
        assert d.is_symmetric() and i.is_symmetric()
        assert d == i.complement()

    def test_size_guard(self):
        p = Partition.blob(MAX_RELATION_N + 1)
        with pytest.raises(RelationTooLarge):
            ditset(p)
        # the count never materialises the relation
        assert dit_count(p) == 0


class TestDitCount:
    @pytest.mark.parametrize(
        "p, expected",
        [
            (Partition.discrete(8), 56),
            (Partition.blob(5), 0),
            (Partition.from_blocks([[0, 1], [2, 3]]), 8),
        ],
    )
    def test_examples(self, p, expected):
        assert dit_count(p) == expected

    def test_exhaustive_against_enumeration(self):
        for n in range(1, 8):
            for p in all_partitions(n):
                assert dit_count(p) == len(brute_ditset(p))


class TestInditset:
    def test_blob(self):
        assert len(inditset(Partition.blob(3))) == 9

    def test_discrete_is_diagonal(self):
        assert set(inditset(Partition.discrete(3)).pairs) == {(0, 0), (1, 1), (2, 2)}

    def test_example(self):
        p = Partition.from_blocks([[0, 1], [2]])
        assert set(inditset(p).pairs) == {(0, 0), (0, 1), (1, 0), (1, 1), (2, 2)}


class TestFromEquivalence:
    def test_round_trip_example(self):
        p = Partition.from_blocks([[0, 1], [2]])
        assert from_equivalence(inditset(p)) == p

    def test_full_relation_gives_blob(self):
        assert from_equivalence(full_relation(Universe(4))) == Partition.blob(4)

    def test_missing_diagonal(self):
        u = Universe(2)
        r = PairRelation(u, frozenset({(1, 1)}))
        with pytest.raises(NotEquivalence) as exc:
            from_equivalence(r)
        assert exc.value.prop == "reflexivity"
        assert exc.value.witness == 0

    def test_asymmetric(self):
        r = PairRelation(Universe(2), frozenset({(0, 0), (1, 1), (0, 1)}))
        with pytest.raises(NotEquivalence) as exc:
            from_equivalence(r)
        assert exc.value.prop == "symmetry"
        assert exc.value.witness == (0, 1)

    def test_intransitive(self):
        pairs = {(0, 0), (1, 1), (2, 2), (0, 1), (1, 0), (1, 2), (2, 1)}
        r = PairRelation(Universe(3), frozenset(pairs))
        with pytest.raises(NotEquivalence) as exc:
            from_equivalence(r)
        assert exc.value.prop == "transitivity"
        (a, b), (b2, c) = exc.value.witness
        assert b == b2
        assert (a, b) in pairs and (b, c) in pairs and (a, c) not in pairs

    @given(partitions())
    def test_round_trip(self, p):
        assert from_equivalence(inditset(p)) == p


class TestJoin:
    def test_binary_tree_join(self, tree_partitions):
        p1, p2, _ = tree_partitions
        assert join(p1, p2) == Partition.from_blocks([[0, 1], [2, 3], [4, 5], [6, 7]])

    def test_blob_is_identity(self):
        s = Partition.from_blocks([[0, 3], [1], [2]])
        assert join(Partition.blob(4), s) == s

    def test_universe_mismatch(self):
        with pytest.raises(UniverseMismatch):
            join(Partition.blob(3), Partition.blob(4))

    @given(partition_pairs())
    def test_ditset_of_join_is_union(self, pq):
        p, q = pq
        assert ditset(join(p, q)).pairs == ditset(p).pairs | ditset(q).pairs

    @given(partition_pairs())
    def test_lattice_laws(self, pq):
        p, q = pq
        assert join(p, p) == p
        assert join(p, q) == join(q, p)
        r = Partition.discrete(p.n)
        assert join(join(p, q), r) == join(p, join(q, r))

    def test_join_all_chain_counts(self, tree_partitions):
        p1, p2, p3 = tree_partitions
        counts = [dit_count(join_all(tree_partitions[:k])) for k in (1, 2, 3)]
        assert counts == [32, 48, 56]
        assert join_all([p1, p2, p3]).is_discrete()


class TestRefines:
    def test_discrete_refines_everything(self):
        for q in all_partitions(4):
            assert refines(Partition.discrete(4), q)

    def test_blob_does_not_refine_discrete(self):
        for n in range(2, 6):
            assert not refines(Partition.blob(n), Partition.discrete(n))

    def test_coarsening(self):
        assert refines(Partition.from_blocks([[0, 1], [2, 3]]), Partition.blob(4))

    @given(partition_pairs())
    def test_matches_ditset_inclusion(self, pq):
        p, q = pq
        assert refines(p, q) == (ditset(q).pairs <= ditset(p).pairs)

    @given(partition_pairs())
    def test_monotone_dit_count(self, pq):
        p, q = pq
        if refines(p, q):
            assert dit_count(p) >= dit_count(q)

    def test_join_refines_both(self):
        p = Partition.from_blocks([[0, 1, 2], [3]])
        q = Partition.from_blocks([[0, 3], [1, 2]])
        j = join(p, q)
        assert refines(j, p) and refines(j, q)


class TestCommonDits:
    def test_exhaustive_small(self):
        for n in range(1, 7):
            parts = [p for p in all_partitions(n) if not p.is_blob()]
            for p, q in itertools.combinations_with_replacement(parts, 2):
                assert common_dits_exist(p, q)
                assert ditset(p).pairs & ditset(q).pairs

    def test_blob_has_none(self):
        for q in all_partitions(4):
            assert not common_dits_exist(Partition.blob(4), q)

    def test_no_triple_intersection_on_three_points(self):
        parts = [p for p in all_partitions(3) if len(p) == 2]
        assert len(parts) == 3
        for p, q in itertools.combinations(parts, 2):
            assert common_dits_exist(p, q)
        a, b, c = (ditset(p).pairs for p in parts)
        assert not a & b & c


def test_bell_numbers():
    for n, b in BELL.items():
        seen = set(all_partitions(n))
        assert len(seen) == b
