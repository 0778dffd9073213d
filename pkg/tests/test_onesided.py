"""One-sided construction and proper orderings."""

import random

import pytest

from upse import (ConvexPointSet, Digraph, InputError, RootedTree,
                  one_sided_embed, proper_ordering, subtree_decompose,
                  validate_upse)
from upse.oracle import (InstanceSpec, enumerate_directed_trees, generate)


class TestOneSided:
    def test_single_vertex(self):
        t = subtree_decompose(Digraph(1, []), 0)
        emb = one_sided_embed(t, ConvexPointSet("R"))
        assert emb.assignment == (1,)

    def test_root_at_lower_size(self):
        # a -> r -> b: root lands on the 2nd lowest point
        t = subtree_decompose(Digraph(3, [(0, 1), (1, 2)]), 1)
        emb = one_sided_embed(t, ConvexPointSet("LLL"))
        assert emb.rank_of(1) == 2
        assert emb.rank_of(0) == 1 and emb.rank_of(2) == 3

    def test_rejects_two_sided(self):
        t = subtree_decompose(Digraph(3, [(0, 1), (1, 2)]), 0)
        with pytest.raises(InputError):
            one_sided_embed(t, ConvexPointSet("LRL"))

    def test_exhaustive_small_trees_both_orientations(self):
        # every rooted tree embeds into both one-sided orientations
        for n in range(1, 7):
            for g in enumerate_directed_trees(n):
                for root in range(n):
                    tree = RootedTree(g, root)
                    for tags in ("L" * n, "R" * n):
                        pts = ConvexPointSet(tags)
                        emb = one_sided_embed(tree, pts)
                        report = validate_upse(g, pts, emb)
                        assert report.ok, (g.arcs, root, tags, report)
                        assert emb.rank_of(root) == tree.lower_size[root]

    def test_no_arc_spans_the_root(self):
        # within the root's point, no arc connects below to above
        rng = random.Random(9)
        for trial in range(50):
            n = rng.randint(2, 40)
            g, _ = generate(InstanceSpec("tree", n, trial))
            tree = RootedTree(g, rng.randrange(n))
            emb = one_sided_embed(tree, ConvexPointSet("L" * n))
            r_rank = emb.rank_of(tree.root)
            for u, v in g.arcs:
                if tree.root in (u, v):
                    continue
                lo, hi = sorted((emb.rank_of(u), emb.rank_of(v)))
                assert not (lo < r_rank < hi)


class TestProperOrdering:
    def test_incoming_sorted_by_upper(self):
        # root 0; incoming subtrees rooted 1 (upper 3) and 4 (upper 1)
        g = Digraph(6, [(1, 0), (1, 2), (2, 3), (4, 0), (0, 5)])
        tree = subtree_decompose(g, 0)
        order = proper_ordering(tree)
        roots = [tree.subtrees[i].root for i in order.indices]
        assert roots == [4, 1, 5]

    def test_outgoing_sorted_by_lower_desc(self):
        # outgoing subtrees rooted 1 (lower 1) and 2 (lower 2)
        g = Digraph(4, [(0, 1), (0, 2), (3, 2)])
        tree = subtree_decompose(g, 0)
        order = proper_ordering(tree)
        roots = [tree.subtrees[i].root for i in order.indices]
        assert roots == [2, 1]

    def test_four_subtree_instance(self):
        # two incoming with upper sizes (2, 1) and two outgoing with
        # lower sizes (1, 2): expect the smaller-upper incoming first
        # and the larger-lower outgoing first
        g = Digraph(7, [
            (1, 0), (1, 2),   # incoming subtree rooted 1, upper size 2
            (3, 0),           # incoming subtree rooted 3, upper size 1
            (0, 4),           # outgoing subtree rooted 4, lower size 1
            (0, 5), (6, 5),   # outgoing subtree rooted 5, lower size 2
        ])
        tree = subtree_decompose(g, 0)
        order = proper_ordering(tree)
        roots = [tree.subtrees[i].root for i in order.indices]
        assert roots == [3, 1, 5, 4]

    def test_ties_broken_by_index(self):
        g = Digraph(3, [(1, 0), (2, 0)])
        tree = subtree_decompose(g, 0)
        order = proper_ordering(tree)
        assert [tree.subtrees[i].root for i in order.indices] == [1, 2]
