"""Embedding validation, combinatorial and exact."""

from hypothesis import given, settings
from hypothesis import strategies as st

from upse import (ConvexPointSet, Digraph, Embedding, validate_exact,
                  validate_upse)


def test_upward_ok():
    g = Digraph(2, [(0, 1)])
    report = validate_upse(g, ConvexPointSet("LR"), Embedding((1, 2)))
    assert report.ok


def test_upward_violation():
    g = Digraph(2, [(0, 1)])
    report = validate_upse(g, ConvexPointSet("LR"), Embedding((2, 1)))
    assert report.upward_violations == [(0, 1)]


def test_crossing_detected():
    # arcs (0,3) and (1,2) on interleaved hull positions
    g = Digraph(4, [(0, 3), (1, 2)])
    points = ConvexPointSet("LRLR")
    emb = Embedding((1, 2, 3, 4))
    report = validate_upse(g, points, emb)
    assert report.crossing_pairs == [((0, 3), (1, 2))]
    exact = validate_exact(g, points, emb)
    assert exact.crossing_pairs == [((0, 3), (1, 2))]


def test_bijection_errors_skip_rest():
    g = Digraph(2, [(0, 1)])
    report = validate_upse(g, ConvexPointSet("LR"), Embedding((1, 1)))
    assert report.bijection_errors
    assert not report.upward_violations


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_exact_and_combinatorial_agree(data):
    n = data.draw(st.integers(2, 7))
    tags = data.draw(st.text(alphabet="LR", min_size=n, max_size=n))
    arcs = []
    for u in range(n):
        for v in range(u + 1, n):
            pick = data.draw(st.sampled_from(["none", "uv", "vu"]))
            if pick == "uv":
                arcs.append((u, v))
            elif pick == "vu":
                arcs.append((v, u))
    # keep it sparse enough to stay a digraph, drop to a subset
    arcs = arcs[:n + 2]
    g = Digraph(n, arcs)
    perm = data.draw(st.permutations(range(1, n + 1)))
    emb = Embedding(tuple(perm))
    points = ConvexPointSet(tags)
    a = validate_upse(g, points, emb)
    b = validate_exact(g, points, emb)
    assert a.upward_violations == b.upward_violations
    assert a.crossing_pairs == b.crossing_pairs


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_mirror_invariance(data):
    n = data.draw(st.integers(2, 7))
    tags = data.draw(st.text(alphabet="LR", min_size=n, max_size=n))
    arcs = [(i, i + 1) for i in range(n - 1)]
    extra = data.draw(st.integers(0, n - 2))
    g = Digraph(n, arcs[:n - 1 - extra] + [(v + 1, v) for v in range(n - 1 - extra, n - 1)])
    perm = data.draw(st.permutations(range(1, n + 1)))
    emb = Embedding(tuple(perm))
    points = ConvexPointSet(tags)
    a = validate_upse(g, points, emb)
    b = validate_upse(g, points.mirror(), emb)
    assert a.ok == b.ok
