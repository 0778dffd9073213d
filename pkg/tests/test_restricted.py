"""Restricted decisions: DP vs brute force, ordering respect, geometry.

The exhaustive loops here run the small sizes; the full n<=7 sweep is
in the acceptance module.
"""

import pytest

from upse import (ConvexPointSet, Digraph, Embedding, RootedTree,
                  reachable_roots_tree, realize_coordinates,
                  restricted_upse_tree, validate_upse)
from upse.embedding import _orient
from upse.oracle import (all_tag_strings, brute_force_restricted,
                         enumerate_directed_trees)
from upse.tree import RestrictedSolver, Window


def all_roots_points(n):
    for g in enumerate_directed_trees(n):
        for tags in all_tag_strings(n):
            yield g, ConvexPointSet(tags)


class TestRestrictedExamples:
    def test_single_vertex(self):
        tree = RootedTree(Digraph(1, []), 0)
        emb = restricted_upse_tree(tree, ConvexPointSet("L"), 1)
        assert emb is not None and emb.assignment == (1,)

    def test_forced_by_upwardness(self):
        tree = RootedTree(Digraph(2, [(0, 1)]), 0)
        pts = ConvexPointSet("LR")
        yes = restricted_upse_tree(tree, pts, 1)
        assert yes is not None and yes.assignment == (1, 2)
        assert restricted_upse_tree(tree, pts, 2) is None

    def test_size_mismatch_is_no(self):
        tree = RootedTree(Digraph(2, [(0, 1)]), 0)
        pts = ConvexPointSet("LRL")
        assert reachable_roots_tree(tree, pts) == frozenset()

    def test_reachable_forced(self):
        tree = RootedTree(Digraph(2, [(0, 1)]), 0)
        assert reachable_roots_tree(tree, ConvexPointSet("LR")) == frozenset({1})

    def test_unique_root_point_instance(self):
        # 7-vertex star-like tree where exactly one host point works
        g = Digraph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (6, 0)])
        tree = RootedTree(g, 0)
        pts = ConvexPointSet("LLLLRRR")
        assert reachable_roots_tree(tree, pts) == frozenset({2})
        for p_r in range(1, 8):
            dp = restricted_upse_tree(tree, pts, p_r) is not None
            assert dp == brute_force_restricted(g, 0, pts, p_r)

    def test_windowed_call(self):
        from upse import PointRange
        g = Digraph(3, [(0, 1), (2, 0)])
        tree = RootedTree(g, 0)
        pts = ConvexPointSet("LRLRL")
        rng = PointRange(left=(1, 2), right=(1, 1))  # ranks {1, 3} + {2}
        assert reachable_roots_tree(tree, pts, rng) == frozenset({2})
        emb = restricted_upse_tree(tree, pts, 2, rng)
        assert emb is not None
        assert validate_upse(g, ConvexPointSet("LRL"),
                             Embedding(tuple({1: 1, 2: 2, 3: 3}[r]
                                             for r in emb.assignment))).ok
        for p_r in (1, 2, 3):
            assert (restricted_upse_tree(tree, pts, p_r, rng) is not None) == \
                brute_force_restricted(g, 0, pts, p_r, rng=rng)


class TestRestrictedOracleEquivalence:
    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_exhaustive(self, n):
        for g, pts in all_roots_points(n):
            window = Window.full(pts)
            for root in range(n):
                solver = RestrictedSolver(RootedTree(g, root))
                for p_r in range(1, n + 1):
                    dp = solver.feasible(window, p_r)
                    oracle = brute_force_restricted(g, root, pts, p_r)
                    assert dp == oracle, (g.arcs, pts.tags, root, p_r)
                    if dp:
                        assignment = solver.assign(window, p_r)
                        emb = Embedding.from_dict(assignment, n)
                        assert validate_upse(g, pts, emb).ok

    def test_boundary_root_below_first_subtree(self):
        # root on the lowest point of a side with its only subtree
        # stacked above it on the same side
        g = Digraph(2, [(0, 1)])
        tree = RootedTree(g, 0)
        pts = ConvexPointSet("RR")
        emb = restricted_upse_tree(tree, pts, 1)
        assert emb is not None and emb.assignment == (1, 2)

    def test_dp_table_shape_and_base(self):
        g = Digraph(3, [(0, 1), (2, 0)])
        solver = RestrictedSolver(RootedTree(g, 0))
        pts = ConvexPointSet("LRL")
        table = solver.table(Window.full(pts), 3)
        assert table is not None
        assert len(table.values) == len(solver.subs) + 1
        assert len(table.values[0]) == pts.left_count + 1
        assert table.values[0][0] and table.moves[0][0] == "base"
        assert table.sigma == (0, 1, 2)


class TestLambdaRespect:
    def test_same_side_subtrees_stack_in_order(self):
        for n in range(2, 6):
            for g, pts in all_roots_points(n):
                for root in range(n):
                    solver = RestrictedSolver(RootedTree(g, root))
                    window = Window.full(pts)
                    for p_r in range(1, n + 1):
                        placements = solver.placements(window, p_r)
                        if placements is None:
                            continue
                        for side in "LR":
                            rows = [p for p in placements if p.side == side]
                            ordered = sorted(rows, key=lambda p: p.order_index)
                            assert rows == sorted(rows, key=lambda p: p.lo)
                            assert ordered == sorted(rows, key=lambda p: p.lo)


def _inside_open_triangle(p, a, b, c):
    s1 = _orient(a, b, p)
    s2 = _orient(b, c, p)
    s3 = _orient(c, a, p)
    return s1 == s2 == s3 != 0


def _segment_enters_triangle(p1, p2, a, b, c):
    if _inside_open_triangle(p1, a, b, c) or _inside_open_triangle(p2, a, b, c):
        return True
    for u, v in ((a, b), (b, c), (c, a)):
        if len({p1, p2, u, v}) == 4:
            if (_orient(p1, p2, u) != _orient(p1, p2, v)
                    and _orient(u, v, p1) != _orient(u, v, p2)):
                return True
    return False


class TestExtremeTriangles:
    def test_no_edge_enters_extreme_triangles(self):
        # in every restricted embedding, the triangles spanned by the
        # two side tops (resp. bottoms) and the root's point stay empty
        for n in range(3, 6):
            for g, pts in all_roots_points(n):
                if pts.left_count == 0 or pts.right_count == 0:
                    continue
                coords = realize_coordinates(pts)
                top_l = coords[pts.left_ranks[-1] - 1]
                top_r = coords[pts.right_ranks[-1] - 1]
                bot_l = coords[pts.left_ranks[0] - 1]
                bot_r = coords[pts.right_ranks[0] - 1]
                for root in range(n):
                    solver = RestrictedSolver(RootedTree(g, root))
                    window = Window.full(pts)
                    for p_r in range(1, n + 1):
                        assignment = solver.assign(window, p_r)
                        if assignment is None:
                            continue
                        anchor = coords[p_r - 1]
                        for u, v in g.arcs:
                            seg = (coords[assignment[u] - 1],
                                   coords[assignment[v] - 1])
                            for tri in ((top_l, top_r, anchor),
                                        (bot_l, bot_r, anchor)):
                                assert not _segment_enters_triangle(
                                    seg[0], seg[1], *tri), \
                                    (g.arcs, pts.tags, root, p_r, (u, v))
