import itertools

import numpy as np
import pytest

from levelspectra import (
    RootedTree,
    canonical_level_sequence,
    canonicalize,
    complete_dary,
    delete_leaf,
    enumerate_rooted_trees,
    format_tree,
    from_parent_list,
    is_rooted_path,
    is_rooted_star,
    levels,
    parse_tree,
    rooted_path,
    rooted_star,
    rooted_tree_count,
    star_rooted_at_leaf,
    to_dot,
)
from levelspectra.errors import (
    CannotDeleteRoot,
    CycleDetected,
    IndexOutOfRange,
    InvalidOrder,
    MultipleRoots,
    NoRoot,
    NotALeaf,
    ParseError,
    ResourceLimit,
)
from levelspectra.trees import tree_from_level_sequence

# counts of non-isomorphic rooted trees per order, frozen from the
# divisor-sum recurrence (independently implemented in rooted_tree_count)
ROOTED_TREE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 4, 5: 9, 6: 20, 7: 48, 8: 115,
                      9: 286, 10: 719}


class TestConstruction:
    def test_single_vertex(self):
        t = from_parent_list([0])
        assert t.n == 1
        assert t.root == 0

    def test_two_children(self):
        t = from_parent_list([0, 1, 1])
        assert levels(t).tolist() == [0, 1, 1]

    def test_self_loop_is_cycle(self):
        with pytest.raises(CycleDetected):
            from_parent_list([0, 1, 3, 2, 1])

    def test_longer_cycle(self):
        with pytest.raises(CycleDetected):
            from_parent_list([0, 3, 2, 4, 3], one_based=True)

    def test_multiple_roots(self):
        with pytest.raises(MultipleRoots):
            from_parent_list([0, 0, 1])

    def test_no_root(self):
        with pytest.raises(NoRoot):
            from_parent_list([2, 1])
        with pytest.raises(NoRoot):
            from_parent_list([])

    def test_index_out_of_range(self):
        with pytest.raises(IndexOutOfRange):
            from_parent_list([0, 5, 1])

    def test_zero_based_input(self):
        t = from_parent_list([-1, 0, 0], one_based=False)
        assert levels(t).tolist() == [0, 1, 1]


class TestLevels:
    def test_sample9(self, sample9):
        assert levels(sample9).tolist() == [0, 1, 2, 3, 2, 1, 2, 3, 3]

    def test_path(self):
        assert levels(rooted_path(4)).tolist() == [0, 1, 2, 3]

    def test_star(self):
        assert levels(rooted_star(5)).tolist() == [0, 1, 1, 1, 1]

    def test_levels_follow_parents(self):
        for tree in enumerate_rooted_trees(7):
            lev = levels(tree)
            for i, p in enumerate(tree.parent):
                if i != tree.root:
                    assert lev[i] == lev[p] + 1


class TestFamilies:
    def test_star_rooted_at_leaf(self):
        assert levels(star_rooted_at_leaf(4)).tolist() == [0, 1, 2, 2]
        # order 3 degenerates to the path on 3 vertices
        assert is_rooted_path(star_rooted_at_leaf(3))

    def test_star_rooted_at_leaf_too_small(self):
        with pytest.raises(InvalidOrder):
            star_rooted_at_leaf(2)

    def test_complete_binary_height2(self):
        t = complete_dary(2, 2)
        assert t.n == 7
        assert sorted(levels(t).tolist()) == [0, 1, 1, 2, 2, 2, 2]

    def test_complete_dary_sizes(self):
        for d, h in [(1, 4), (2, 3), (3, 2)]:
            t = complete_dary(d, h)
            expected = h + 1 if d == 1 else (d ** (h + 1) - 1) // (d - 1)
            assert t.n == expected

    def test_unary_is_path(self):
        assert canonical_level_sequence(complete_dary(1, 5)) == \
            canonical_level_sequence(rooted_path(6))

    def test_invalid_orders(self):
        with pytest.raises(InvalidOrder):
            rooted_path(0)
        with pytest.raises(InvalidOrder):
            rooted_star(-1)
        with pytest.raises(InvalidOrder):
            complete_dary(0, 2)
        with pytest.raises(InvalidOrder):
            complete_dary(2, -1)


def _labeled_tree_classes(n):
    """Brute-force oracle: distinct canonical forms over all labeled rooted
    trees with root 0 (acyclic parent arrays)."""
    seen = set()
    for parents in itertools.product(range(n), repeat=n - 1):
        arr = [-1] + list(parents)
        try:
            tree = RootedTree(arr)
        except CycleDetected:
            continue
        seen.add(canonical_level_sequence(tree))
    return seen


class TestEnumeration:
    @pytest.mark.parametrize("n,count", sorted(ROOTED_TREE_COUNTS.items()))
    def test_counts(self, n, count):
        assert sum(1 for _ in enumerate_rooted_trees(n)) == count

    @pytest.mark.parametrize("n", range(1, 11))
    def test_counting_recurrence_agrees(self, n):
        assert rooted_tree_count(n) == ROOTED_TREE_COUNTS[n]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_labeled_oracle(self, n):
        enumerated = {canonical_level_sequence(t) for t in enumerate_rooted_trees(n)}
        assert enumerated == _labeled_tree_classes(n)

    def test_labeled_oracle_order7(self):
        enumerated = {canonical_level_sequence(t) for t in enumerate_rooted_trees(7)}
        assert enumerated == _labeled_tree_classes(7)

    def test_canonical_idempotence(self):
        for n in range(1, 9):
            for tree in enumerate_rooted_trees(n):
                assert canonicalize(tree) == tree

    def test_invariants(self):
        for tree in enumerate_rooted_trees(8):
            assert tree.n == 8
            assert sum(1 for p in tree.parent if p == -1) == 1
            assert sum(1 for p in tree.parent if p != -1) == 7

    def test_extremal_level_sequences(self):
        for n in range(2, 9):
            seqs = [canonical_level_sequence(t) for t in enumerate_rooted_trees(n)]
            # the enumerator runs from the path down to the star
            assert seqs[0] == tuple(range(n))
            assert seqs[-1] == (0,) + (1,) * (n - 1)
            assert seqs == sorted(seqs, reverse=True)

    def test_cap(self):
        with pytest.raises(ResourceLimit):
            list(enumerate_rooted_trees(17))
        # explicit cap argument overrides the default
        gen = enumerate_rooted_trees(17, cap=17)
        assert next(gen) is not None

    def test_cap_env_override(self, monkeypatch):
        monkeypatch.setenv("LEVEL_SPECTRA_CAP", "4")
        with pytest.raises(ResourceLimit):
            list(enumerate_rooted_trees(5))
        assert sum(1 for _ in enumerate_rooted_trees(4)) == 4

    def test_bad_level_sequences(self):
        with pytest.raises(InvalidOrder):
            tree_from_level_sequence([1, 2])
        with pytest.raises(InvalidOrder):
            tree_from_level_sequence([0, 2])


class TestStructuralPredicates:
    def test_lmax_characterisations(self):
        for n in range(2, 8):
            for tree in enumerate_rooted_trees(n):
                lmax = int(levels(tree).max())
                assert (lmax == n - 1) == is_rooted_path(tree)
                assert (lmax == 1) == is_rooted_star(tree)

    def test_single_vertex_is_both(self):
        t = rooted_path(1)
        assert is_rooted_path(t)
        assert is_rooted_star(t)


class TestDeleteLeaf:
    def test_path_minus_deep_leaf(self):
        t = delete_leaf(rooted_path(3), 2)
        assert canonical_level_sequence(t) == (0, 1)

    def test_star_minus_any_leaf(self):
        for leaf in range(1, 5):
            t = delete_leaf(rooted_star(5), leaf)
            assert canonical_level_sequence(t) == (0, 1, 1, 1)

    def test_sample9_minus_v4(self, sample9):
        t = delete_leaf(sample9, 3)
        assert sorted(levels(t).tolist()) == [0, 1, 1, 2, 2, 2, 3, 3]

    def test_levels_preserved(self):
        for tree in enumerate_rooted_trees(7):
            lev = levels(tree)
            for leaf in tree.leaves():
                sub = delete_leaf(tree, leaf)
                survivors = [lev[i] for i in range(tree.n) if i != leaf]
                assert levels(sub).tolist() == survivors

    def test_rejects_root(self):
        with pytest.raises(CannotDeleteRoot):
            delete_leaf(rooted_path(3), 0)

    def test_rejects_internal(self):
        with pytest.raises(NotALeaf):
            delete_leaf(rooted_path(3), 1)

    def test_rejects_bad_index(self):
        with pytest.raises(IndexOutOfRange):
            delete_leaf(rooted_path(3), 7)


class TestTextFormats:
    def test_roundtrip(self, sample9):
        assert parse_tree(format_tree(sample9)) == sample9

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_tree("")
        with pytest.raises(ParseError):
            parse_tree("x\n0\n")
        with pytest.raises(ParseError):
            parse_tree("2\n0\n")
        err = None
        try:
            parse_tree("3\n0 1 zz\n")
        except ParseError as exc:
            err = exc
        assert err is not None and err.line == 2 and err.column == 3

    def test_parse_rejects_cycles(self):
        with pytest.raises(ParseError):
            parse_tree("3\n0 3 2\n")

    def test_dot_export(self, sample9):
        dot = to_dot(sample9)
        assert dot.startswith("digraph")
        assert "(root)" in dot
        assert dot.count("->") == sample9.n - 1
