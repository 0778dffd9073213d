"""Full tree decision: path decomposition and the layered DP."""

import random

import pytest

from upse import (ConvexPointSet, Digraph, InputError, StructureError,
                  path_decompose, tree_upse_all, tree_upse_fixed,
                  validate_exact, validate_upse)
from upse.oracle import (InstanceSpec, all_tag_strings, brute_force_upse,
                         enumerate_directed_trees, generate, random_tags)
from upse.tree import _base_layer, tree_upse_all_pairs


class TestPathDecompose:
    def test_two_vertex(self):
        d = path_decompose(Digraph(2, [(0, 1)]), 0, 1)
        assert d.path == (0, 1)
        assert [p.n for p in d.pieces] == [1, 1]

    def test_three_path(self):
        d = path_decompose(Digraph(3, [(0, 1), (1, 2)]), 0, 2)
        assert d.path == (0, 1, 2)
        assert [p.n for p in d.pieces] == [1, 1, 1]

    def test_pieces_partition(self):
        rng = random.Random(17)
        for trial in range(40):
            n = rng.randint(2, 12)
            g, _ = generate(InstanceSpec("tree", n, trial))
            s = g.sources()[0]
            t = g.sinks()[-1]
            d = path_decompose(g, s, t)
            union = set()
            for piece in d.pieces:
                assert not (union & piece.vertices)
                union |= piece.vertices
            assert union == set(range(n))
            assert d.prefix_sizes[-1] == n

    def test_role_validation(self):
        g = Digraph(3, [(0, 1), (1, 2)])
        with pytest.raises(StructureError):
            path_decompose(g, 1, 2)
        with pytest.raises(StructureError):
            path_decompose(g, 0, 1)


class TestFixedDecision:
    def test_monotone_path_identity(self):
        for tags in ("LLLLL", "LRLRL", "RRLLR"):
            g = Digraph(5, [(i, i + 1) for i in range(4)])
            emb = tree_upse_fixed(g, ConvexPointSet(tags), 0, 4)
            assert emb is not None
            assert emb.assignment == (1, 2, 3, 4, 5)

    def test_single_vertex(self):
        emb = tree_upse_fixed(Digraph(1, []), ConvexPointSet("R"), 0, 0)
        assert emb is not None and emb.assignment == (1,)

    def test_size_mismatch_raises(self):
        with pytest.raises(InputError):
            tree_upse_fixed(Digraph(2, [(0, 1)]), ConvexPointSet("LRL"), 0, 1)

    def test_role_violation_raises(self):
        g = Digraph(3, [(0, 1), (1, 2)])
        with pytest.raises(StructureError):
            tree_upse_fixed(g, ConvexPointSet("LLL"), 1, 2)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_oracle_equivalence_with_pins(self, n):
        for g in enumerate_directed_trees(n):
            sources, sinks = g.sources(), g.sinks()
            for tags in all_tag_strings(n):
                pts = ConvexPointSet(tags)
                for s in sources:
                    for t in sinks:
                        dp = tree_upse_fixed(g, pts, s, t)
                        oracle = brute_force_upse(g, pts, pins={s: 1, t: n})
                        assert (dp is None) == (oracle is None), \
                            (g.arcs, tags, s, t)
                        if dp is not None:
                            assert dp.rank_of(s) == 1 and dp.rank_of(t) == n
                            assert validate_upse(g, pts, dp).ok

    def test_base_layer_only_bottom_point(self):
        # the first path vertex can only sit on the bottom point
        rng = random.Random(23)
        for trial in range(30):
            n = rng.randint(2, 8)
            g, pts = generate(InstanceSpec("tree", n, 400 + trial))
            s = g.sources()[0]
            t = g.sinks()[-1]
            layer = _base_layer(pts, path_decompose(g, s, t).pieces[0])
            for cell in layer.values():
                assert set(cell) <= {1}

    def test_prefix_trees_on_nested_ranges(self):
        # every path prefix occupies consecutive lowest points per side
        rng = random.Random(29)
        for trial in range(60):
            n = rng.randint(2, 10)
            g, pts = generate(InstanceSpec("tree", n, 700 + trial))
            for s in g.sources():
                for t in g.sinks():
                    emb = tree_upse_fixed(g, pts, s, t)
                    if emb is None:
                        continue
                    d = path_decompose(g, s, t)
                    prefix = set()
                    for piece in d.pieces:
                        prefix |= piece.vertices
                        ranks = sorted(emb.rank_of(v) for v in prefix)
                        lefts = sorted(r for r in ranks if pts.side_of(r) == "L")
                        rights = sorted(r for r in ranks if pts.side_of(r) == "R")
                        assert 1 in ranks
                        assert lefts == list(pts.left_ranks[:len(lefts)])
                        assert rights == list(pts.right_ranks[:len(rights)])
                    break


class TestAllPairs:
    def test_empty_and_single(self):
        assert tree_upse_all(Digraph(0, []), ConvexPointSet("")) is not None
        assert tree_upse_all(Digraph(1, []), ConvexPointSet("L")) is not None

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_oracle_equivalence(self, n):
        for g in enumerate_directed_trees(n):
            for tags in all_tag_strings(n):
                pts = ConvexPointSet(tags)
                emb = tree_upse_all(g, pts)
                oracle = brute_force_upse(g, pts)
                assert (emb is None) == (oracle is None), (g.arcs, tags)
                if emb is not None:
                    assert validate_upse(g, pts, emb).ok
                    assert validate_exact(g, pts, emb).ok

    def test_flags_agree(self):
        rng = random.Random(31)
        for trial in range(120):
            n = rng.randint(1, 8)
            g, pts = generate(InstanceSpec("tree", n, 900 + trial))
            plain = tree_upse_all(g, pts) is not None
            assert plain == (tree_upse_all(g, pts, reuse=False) is not None)
            assert plain == (tree_upse_all(g, pts, naive=True) is not None)

    def test_all_pairs_map_matches_fixed(self):
        rng = random.Random(37)
        for trial in range(40):
            n = rng.randint(2, 8)
            g, pts = generate(InstanceSpec("tree", n, 1300 + trial))
            for reuse in (True, False):
                table = tree_upse_all_pairs(g, pts, reuse=reuse)
                for (s, t), dec in table.items():
                    assert dec == (tree_upse_fixed(g, pts, s, t) is not None)

    def test_mirror_invariance(self):
        rng = random.Random(41)
        for trial in range(80):
            n = rng.randint(1, 9)
            g, pts = generate(InstanceSpec("tree", n, 1700 + trial))
            a = tree_upse_all(g, pts) is not None
            b = tree_upse_all(g, pts.mirror()) is not None
            assert a == b

    def test_caterpillars_always_embed(self):
        rng = random.Random(43)
        for trial in range(60):
            n = rng.randint(1, 30)
            g, _ = generate(InstanceSpec("caterpillar", n, trial))
            pts = ConvexPointSet(random_tags(n, rng))
            emb = tree_upse_all(g, pts)
            assert emb is not None
            assert validate_upse(g, pts, emb).ok

    def test_one_sided_totality(self):
        rng = random.Random(47)
        for trial in range(60):
            n = rng.randint(1, 25)
            g, _ = generate(InstanceSpec("tree", n, 2100 + trial))
            emb = tree_upse_all(g, ConvexPointSet("L" * n))
            assert emb is not None
