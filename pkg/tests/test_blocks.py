"""Block structure: decomposition, outer cycles, shapes, admissibility,
auxiliary tree, one-sided embeddability.

networkx supplies the independent biconnectivity and planarity oracles.
"""

import random

import networkx as nx

from upse import ConvexPointSet, Digraph, Embedding, StructureError, validate_upse
from upse.blocks import (auxiliary_tree, block_decompose, block_shape,
                         construct_one_sided, one_side_embeddable,
                         outer_cycle, structural_check)
from upse.oracle import InstanceSpec, all_tag_strings, brute_force_upse, generate


def to_nx(g: Digraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((u, v) for u, v in g.arcs)
    return G


def nx_outerplanar(g: Digraph) -> bool:
    G = to_nx(g)
    G.add_edges_from((g.n, v) for v in range(g.n))
    ok, _ = nx.check_planarity(G)
    return ok


def my_outerplanar(g: Digraph) -> bool:
    return all(b.trivial or outer_cycle(b.vertices, b.edges) is not None
               for b in block_decompose(g).blocks)


class TestBlockDecompose:
    def test_tree_blocks_are_edges(self):
        g = Digraph(4, [(0, 1), (1, 2), (1, 3)])
        d = block_decompose(g)
        assert all(b.trivial for b in d.blocks)
        assert len(d.blocks) == 3
        assert d.cut_vertices == {1}

    def test_single_cycle(self):
        g = Digraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        d = block_decompose(g)
        assert len(d.blocks) == 1 and not d.cut_vertices

    def test_two_cycles_sharing_vertex(self):
        arcs = [(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (5, 6), (3, 6)]
        d = block_decompose(Digraph(7, arcs))
        assert len(d.blocks) == 2
        assert d.cut_vertices == {3}

    def test_matches_networkx(self):
        rng = random.Random(1)
        for trial in range(150):
            n = rng.randint(2, 10)
            g, _ = generate(InstanceSpec("outerplanar-dag", n, trial))
            mine = block_decompose(g)
            G = to_nx(g)
            expected = {frozenset(map(frozenset, comp))
                        for comp in nx.biconnected_component_edges(G)}
            assert {b.edges for b in mine.blocks} == expected
            assert mine.cut_vertices == set(nx.articulation_points(G))


class TestOuterCycle:
    def test_cycle(self):
        verts = frozenset(range(4))
        edges = frozenset(frozenset(e) for e in [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert outer_cycle(verts, edges) == (0, 1, 2, 3)

    def test_k4_rejected(self):
        verts = frozenset(range(4))
        edges = frozenset(frozenset(e) for e in
                          [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        assert outer_cycle(verts, edges) is None

    def test_chorded_cycle(self):
        verts = frozenset(range(5))
        edges = frozenset(frozenset(e) for e in
                          [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (1, 3)])
        cycle = outer_cycle(verts, edges)
        assert cycle is not None and set(cycle) == verts

    def test_matches_networkx_apex_test(self):
        rng = random.Random(2)
        checked = 0
        for trial in range(300):
            n = rng.randint(3, 9)
            arcs = set()
            verts = list(range(n))
            rng.shuffle(verts)
            for i in range(1, n):
                arcs.add((verts[rng.randrange(i)], verts[i]))
            target = rng.randint(n - 1, min(2 * n, n * (n - 1) // 2))
            while len(arcs) < target:
                u, v = rng.sample(range(n), 2)
                if (u, v) not in arcs and (v, u) not in arcs:
                    arcs.add((u, v))
            g = Digraph(n, sorted(arcs))
            assert my_outerplanar(g) == nx_outerplanar(g), g.arcs
            checked += 1
        assert checked == 300


class TestBlockShape:
    def test_rhombus(self):
        g = Digraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        d = block_decompose(g)
        shape = block_shape(g, d.blocks[0])
        assert shape is not None
        assert shape.source == 0 and shape.sink == 3
        assert {shape.sides[0], shape.sides[1]} == {(1,), (2,)}
        assert not shape.one_sided

    def test_one_sided_triangle(self):
        g = Digraph(3, [(0, 1), (1, 2), (0, 2)])
        d = block_decompose(g)
        shape = block_shape(g, d.blocks[0])
        assert shape is not None and shape.one_sided

    def test_two_source_block_has_no_shape(self):
        g = Digraph(4, [(0, 1), (0, 2), (3, 1), (3, 2)])
        d = block_decompose(g)
        assert block_shape(g, d.blocks[0]) is None


class TestStructuralCheck:
    def test_two_source_cycle_rejected(self):
        res = structural_check(Digraph(4, [(0, 1), (0, 2), (3, 1), (3, 2)]))
        assert not res.accepted and "sources" in res.reason

    def test_rhombus_accepted(self):
        res = structural_check(Digraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)]))
        assert res.accepted

    def test_disconnected_rejected(self):
        res = structural_check(Digraph(4, [(0, 1), (2, 3)]))
        assert not res.accepted and res.reason == "disconnected"

    def test_k4_rejected(self):
        g = Digraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        res = structural_check(g)
        assert not res.accepted and res.reason == "not outerplanar"

    def test_shared_side_vertex_rejected_and_never_embeds(self):
        # two rhombi glued at a vertex that is a side vertex of both
        arcs = [(0, 1), (1, 3), (0, 2), (2, 3),
                (4, 1), (1, 6), (4, 5), (5, 6)]
        g = Digraph(7, arcs)
        res = structural_check(g)
        assert not res.accepted and "side vertex of two blocks" in res.reason
        for tags in all_tag_strings(7):
            assert brute_force_upse(g, ConvexPointSet(tags)) is None

    def test_rejections_are_sound(self):
        # whatever the check rejects, exhaustive search rejects too
        rng = random.Random(5)
        rejected = 0
        trial = 0
        while rejected < 12 and trial < 4000:
            trial += 1
            n = rng.randint(3, 6)
            g, _ = generate(InstanceSpec("outerplanar-dag", n, 31_000 + trial))
            # flip one random arc to provoke violations
            arcs = list(g.arcs)
            i = rng.randrange(len(arcs))
            arcs[i] = (arcs[i][1], arcs[i][0])
            try:
                g2 = Digraph(n, arcs)
            except StructureError:
                continue
            res = structural_check(g2)
            if res.accepted or res.reason == "directed cycle":
                continue
            rejected += 1
            for tags in all_tag_strings(n):
                assert brute_force_upse(g2, ConvexPointSet(tags)) is None, \
                    (g2.arcs, tags, res.reason)
        assert rejected >= 5


class TestAuxiliaryTree:
    def test_single_block_one_node(self):
        g = Digraph(3, [(0, 1), (1, 2), (0, 2)])
        aux = auxiliary_tree(g, block_decompose(g))
        assert aux.node_count == 1 and not aux.edges

    def test_switch_glued_blocks_merge(self):
        # two triangles sharing vertex 2: sink of one, source of the other
        arcs = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]
        g = Digraph(5, arcs)
        aux = auxiliary_tree(g, block_decompose(g))
        assert aux.node_count == 1

    def test_side_attachment_makes_edge(self):
        # vertex 1 is a side vertex of the triangle and a switch of the bridge
        arcs = [(0, 1), (1, 2), (0, 2), (1, 3)]
        g = Digraph(4, arcs)
        decomp = block_decompose(g)
        aux = auxiliary_tree(g, decomp)
        assert aux.node_count == 2
        assert len(aux.edges) == 1
        src, dst = aux.edges[0]
        tri = next(b.index for b in decomp.blocks if not b.trivial)
        assert aux.node_of_block[tri] == src

    def test_trees_collapse_to_one_node(self):
        rng = random.Random(7)
        for trial in range(30):
            n = rng.randint(2, 10)
            g, _ = generate(InstanceSpec("tree", n, trial))
            aux = auxiliary_tree(g, block_decompose(g))
            assert aux.node_count == 1 and not aux.edges


class TestOneSideEmbeddable:
    def test_single_edge(self):
        assert one_side_embeddable(Digraph(2, [(0, 1)]), 0)

    def test_rhombus_not_one_sided(self):
        g = Digraph(4, [(0, 1), (1, 3), (0, 2), (2, 3)])
        assert not one_side_embeddable(g, 0)

    def test_triangle_from_source(self):
        g = Digraph(3, [(0, 1), (1, 2), (0, 2)])
        assert one_side_embeddable(g, 0)

    def test_positive_in_degree_root_refused(self):
        # triangle side-attached below a bridge: the bridge group gets an
        # incoming edge, so its switches cannot host the extreme point
        arcs = [(0, 1), (1, 2), (0, 2), (1, 3)]
        g = Digraph(4, arcs)
        assert not one_side_embeddable(g, 3)
        pts = ConvexPointSet("LLLL")
        assert brute_force_upse(g, pts, pins={3: 4}) is None

    def test_construction_matches_oracle(self):
        rng = random.Random(11)
        for trial in range(400):
            n = rng.randint(1, 8)
            g, _ = generate(InstanceSpec("outerplanar-dag", n, 77_000 + trial))
            pts = ConvexPointSet("L" * n)
            for r in range(n):
                src = all((r, w) in g.arc_set() for w in g.und_adj[r])
                snk = all((w, r) in g.arc_set() for w in g.und_adj[r])
                if not (src or snk) and n > 1:
                    continue
                pred = one_side_embeddable(g, r)
                pin = {r: 1} if (src or n == 1) else {r: n}
                assert pred == (brute_force_upse(g, pts, pins=pin) is not None), \
                    (g.arcs, r)
                if pred:
                    emb = construct_one_sided(g, r, list(range(1, n + 1)))
                    assert validate_upse(g, pts, Embedding.from_dict(emb, n)).ok
