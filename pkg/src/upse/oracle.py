"""Ground truth by exhaustive search, instance enumeration and seeded
random generation.

The brute-force searches are deliberately independent of the dynamic
programs: no proper orderings, no forced root positions, no skeletons.
They enumerate embeddings straight from the definitions and are the
arbiter for every differential suite.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional

from .digraph import Digraph
from .embedding import Embedding
from .errors import InputError, OracleBoundError
from .points import ConvexPointSet, PointRange, hull_cyclic_order
from .tree import Window

DEFAULT_BOUND = 9


def _resolve_bound(bound: Optional[int]) -> int:
    if bound is not None:
        return bound
    return int(os.environ.get("UPSE_ORACLE_MAX_N", DEFAULT_BOUND))


# ---------------------------------------------------------------------------
# Brute-force search
# ---------------------------------------------------------------------------


def brute_force_upse(graph: Digraph, points: ConvexPointSet,
                     pins: Optional[dict[int, int]] = None,
                     bound: Optional[int] = None) -> Optional[Embedding]:
    """First upward planar embedding found by backtracking, or None.

    Points are filled bottom-up; a vertex is eligible once all its
    in-neighbours are placed, so upwardness pruning is monotone and each
    arc is crossing-checked once, when its head is placed.  ``pins``
    force specific vertices onto specific ranks.
    """
    n = graph.n
    if n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    limit = _resolve_bound(bound)
    if n > limit:
        raise OracleBoundError(f"n={n} above oracle bound {limit}")
    if n == 0:
        return Embedding(())
    pins = pins or {}
    pos = {rank: i for i, rank in enumerate(hull_cyclic_order(points))}

    def interleaved(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
        a, b = c1
        c, d = c2
        if len({a, b, c, d}) < 4:
            return False
        fwd = (pos[b] - pos[a]) % n
        return ((pos[c] - pos[a]) % n < fwd) != ((pos[d] - pos[a]) % n < fwd)

    rank_of: dict[int, int] = {}
    unplaced_in = [graph.in_degree(v) for v in range(n)]
    drawn: list[tuple[int, int]] = []
    pinned_rank = {r: v for v, r in pins.items()}

    def place(rank: int) -> Optional[dict[int, int]]:
        if rank > n:
            return dict(rank_of_v for rank_of_v in rank_of.items())
        forced = pinned_rank.get(rank)
        candidates = [forced] if forced is not None else [
            v for v in range(n) if v not in placed and v not in pins]
        for v in candidates:
            if v in placed or unplaced_in[v] != 0:
                continue
            chords = [(rank_of[u], rank) for u in graph.in_adj[v]]
            if any(interleaved(c, d) for c in chords for d in drawn):
                continue
            placed.add(v)
            rank_of[v] = rank
            for w in graph.out_adj[v]:
                unplaced_in[w] -= 1
            drawn.extend(chords)
            res = place(rank + 1)
            if res is not None:
                return res
            del drawn[len(drawn) - len(chords):]
            for w in graph.out_adj[v]:
                unplaced_in[w] += 1
            del rank_of[v]
            placed.discard(v)
        return None

    for v, r in pins.items():
        if not (0 <= v < n and 1 <= r <= n):
            raise InputError(f"bad pin {v}->{r}")
    placed: set[int] = set()
    found = place(1)
    if found is None:
        return None
    return Embedding.from_dict(found, n)


def _induced(graph: Digraph, verts: frozenset[int]) -> tuple[Digraph, dict[int, int]]:
    order = sorted(verts)
    local = {v: i for i, v in enumerate(order)}
    arcs = [(local[u], local[v]) for u, v in graph.arcs if u in verts and v in verts]
    return Digraph(len(order), arcs), local


def brute_force_restricted(graph: Digraph, root: int, points: ConvexPointSet,
                           p_r: int, rng: Optional[PointRange] = None,
                           vertices: Optional[frozenset[int]] = None,
                           bound: Optional[int] = None) -> bool:
    """Exact decision for the restricted problem: root pinned to ``p_r``
    and every subgraph hanging at the root on consecutive points of one
    side.

    Enumerates every ordered assignment of the root's components to
    side runs (runs on the root's side may not straddle its point) and
    brute-forces each component together with the root inside its run.
    Components interact only through the root, so runs are independent.
    """
    verts = vertices if vertices is not None else frozenset(range(graph.n))
    window = Window.from_range(points, rng) if rng is not None else Window(
        points.left_ranks, points.right_ranks)
    if len(verts) != window.size:
        return False
    limit = _resolve_bound(bound)
    if len(verts) > limit:
        raise OracleBoundError(f"n={len(verts)} above oracle bound {limit}")
    side_r, pos_r = window.locate(p_r)

    # components hanging at the root
    comps: list[frozenset[int]] = []
    left = set(verts) - {root}
    while left:
        start = min(left)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in graph.und_adj[u]:
                if w in left and w not in seen and w != root:
                    seen.add(w)
                    stack.append(w)
        comps.append(frozenset(seen))
        left -= seen

    # zone runs: the root's side is split at the root's point
    if side_r == "L":
        zones = [list(window.left[:pos_r - 1]), list(window.left[pos_r:]),
                 list(window.right)]
    else:
        zones = [list(window.right[:pos_r - 1]), list(window.right[pos_r:]),
                 list(window.left)]

    memo: dict[tuple[int, tuple[int, ...]], bool] = {}

    def comp_fits(ci: int, run: tuple[int, ...]) -> bool:
        key = (ci, run)
        cached = memo.get(key)
        if cached is not None:
            return cached
        comp_verts = comps[ci] | {root}
        sub_graph, local = _induced(graph, comp_verts)
        ranks = sorted(run + (p_r,))
        tags = "".join(points.tags[r - 1] for r in ranks)
        sub_points = ConvexPointSet(tags, ranks)
        local_pr = ranks.index(p_r) + 1
        ok = brute_force_upse(sub_graph, sub_points,
                              pins={local[root]: local_pr}, bound=limit) is not None
        memo[key] = ok
        return ok

    fills = [0, 0, 0]

    def assign(remaining: frozenset[int]) -> bool:
        if not remaining:
            return all(fills[z] == len(zones[z]) for z in range(3))
        for ci in sorted(remaining):
            size = len(comps[ci])
            for z in range(3):
                if fills[z] + size > len(zones[z]):
                    continue
                run = tuple(zones[z][fills[z]:fills[z] + size])
                if not comp_fits(ci, run):
                    continue
                fills[z] += size
                if assign(remaining - {ci}):
                    return True
                fills[z] -= size
        return False

    return assign(frozenset(range(len(comps))))


# ---------------------------------------------------------------------------
# Exhaustive enumeration
# ---------------------------------------------------------------------------


def prufer_to_edges(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    for v in seq:
        leaf = leaves.pop(0)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            import bisect
            bisect.insort(leaves, v)
    edges.append((leaves[0], leaves[1]))
    return edges


def _tree_centers(n: int, und: list[set[int]]) -> list[int]:
    if n <= 2:
        return list(range(n))
    deg = [len(und[v]) for v in range(n)]
    removed = [False] * n
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            removed[v] = True
            for w in und[v]:
                if not removed[w]:
                    deg[w] -= 1
                    if deg[w] == 1:
                        nxt.append(w)
        layer = nxt
    return sorted(v for v in range(n) if not removed[v])


def canonical_directed_tree(graph: Digraph, root: Optional[int] = None) -> str:
    """Isomorphism code of a directed tree (rooted when ``root`` given).

    Best-effort canonicalization used only to skip duplicate instances.
    """
    und = [set(a) for a in graph.und_adj]
    arcs = graph.arc_set()

    def code(v: int, parent: Optional[int]) -> str:
        parts = []
        for w in sorted(und[v]):
            if w == parent:
                continue
            d = "+" if (v, w) in arcs else "-"
            parts.append(d + code(w, v))
        parts.sort()
        return "(" + "".join(parts) + ")"

    if root is not None:
        return code(root, None)
    centers = _tree_centers(graph.n, und)
    return min(code(c, None) for c in centers)


def _canonical_undirected_tree(n: int, edges: list[tuple[int, int]]) -> str:
    und: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        und[u].add(v)
        und[v].add(u)

    def code(v: int, parent: Optional[int]) -> str:
        return "(" + "".join(sorted(code(w, v) for w in und[v] if w != parent)) + ")"

    return min(code(c, None) for c in _tree_centers(n, und))


def enumerate_tree_shapes(n: int) -> list[list[tuple[int, int]]]:
    """One labeled representative per unlabeled undirected tree shape."""
    if n == 1:
        return [[]]
    if n == 2:
        return [[(0, 1)]]
    shapes: dict[str, list[tuple[int, int]]] = {}
    for seq in product(range(n), repeat=n - 2):
        edges = prufer_to_edges(tuple(seq), n)
        key = _canonical_undirected_tree(n, edges)
        if key not in shapes:
            shapes[key] = edges
    return list(shapes.values())


def enumerate_directed_trees(n: int) -> Iterator[Digraph]:
    """All directed trees on n vertices, deduplicated by isomorphism.

    Undirected shapes are deduplicated first, then the orientations of
    each shape, so the work grows with the number of shapes rather than
    the number of labeled trees.
    """
    if n == 1:
        yield Digraph(1, [])
        return
    seen: set[str] = set()
    for edges in enumerate_tree_shapes(n):
        for mask in range(1 << (n - 1)):
            arcs = [(u, v) if mask >> i & 1 else (v, u)
                    for i, (u, v) in enumerate(edges)]
            g = Digraph(n, arcs)
            key = canonical_directed_tree(g)
            if key not in seen:
                seen.add(key)
                yield g


def all_tag_strings(n: int) -> Iterator[str]:
    for bits in product("LR", repeat=n):
        yield "".join(bits)


def enumerate_instances(n: int) -> Iterator[tuple[Digraph, ConvexPointSet]]:
    """All (directed tree, tagging) pairs at size n, deduplicated trees,
    deterministic order."""
    if n > 7:
        raise InputError("exhaustive tree enumeration is capped at n=7")
    for g in enumerate_directed_trees(n):
        for tags in all_tag_strings(n):
            yield g, ConvexPointSet(tags)


# ---------------------------------------------------------------------------
# Seeded random generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSpec:
    kind: str  # tree | caterpillar | outerplanar-dag | path
    n: int
    seed: int
    left_fraction: float = 0.5
    orient_bias: float = 0.5


def random_tags(n: int, rng: random.Random, left_fraction: float = 0.5) -> str:
    return "".join("L" if rng.random() < left_fraction else "R" for _ in range(n))


def _random_tree_arcs(n: int, rng: random.Random, bias: float) -> list[tuple[int, int]]:
    if n == 1:
        return []
    seq = tuple(rng.randrange(n) for _ in range(n - 2)) if n > 2 else ()
    edges = prufer_to_edges(seq, n)
    return [(u, v) if rng.random() < bias else (v, u) for u, v in edges]


def _caterpillar_arcs(n: int, rng: random.Random, bias: float) -> list[tuple[int, int]]:
    spine_len = 1 if n == 1 else rng.randint(min(2, n), n)
    edges = [(i, i + 1) for i in range(spine_len - 1)]
    for leaf in range(spine_len, n):
        edges.append((rng.randrange(spine_len), leaf))
    return [(u, v) if rng.random() < bias else (v, u) for u, v in edges]


def _noncrossing_chords(k: int, rng: random.Random) -> list[tuple[int, int]]:
    chords: list[tuple[int, int]] = []

    def crosses(a: int, b: int, c: int, d: int) -> bool:
        inside_c = a < c < b
        inside_d = a < d < b
        return inside_c != inside_d

    for _ in range(rng.randint(0, k)):
        a, b = sorted(rng.sample(range(k), 2))
        if b - a < 2 or (a == 0 and b == k - 1):
            continue
        if any(crosses(a, b, c, d) for c, d in chords) or (a, b) in chords:
            continue
        chords.append((a, b))
    return chords


def _outerplanar_arcs(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Connected outerplanar DAG in which every block has exactly one
    source and one sink and both sides of every block are directed."""
    arcs: list[tuple[int, int]] = []
    vertices = [0]
    next_v = 1
    while next_v < n:
        remaining = n - next_v
        glue = rng.choice(vertices)
        if remaining == 1 or rng.random() < 0.35:
            block_size = 2
        else:
            block_size = rng.randint(3, min(remaining + 1, 6))
        fresh = list(range(next_v, next_v + block_size - 1))
        next_v += block_size - 1
        vertices.extend(fresh)
        cycle = [glue] + fresh
        if block_size == 2:
            u, v = cycle
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
            continue
        k = len(cycle)
        rng.shuffle(cycle)
        sigma_i = rng.randrange(k)
        tau_i = (sigma_i + rng.randint(1, k - 1)) % k
        # heights: 0 at the source, ascending along both cycle arcs
        height = {}
        steps = (tau_i - sigma_i) % k
        for step in range(steps + 1):
            height[cycle[(sigma_i + step) % k]] = step
        back = (sigma_i - tau_i) % k
        for step in range(1, back):
            height[cycle[(sigma_i - step) % k]] = steps + step
        height[cycle[tau_i]] = k + 1
        height[cycle[sigma_i]] = 0
        edges = [(cycle[i], cycle[(i + 1) % k]) for i in range(k)]
        for a, b in _noncrossing_chords(k, rng):
            edges.append((cycle[a], cycle[b]))
        for u, v in edges:
            arcs.append((u, v) if height[u] < height[v] else (v, u))
    return arcs


def generate(spec: InstanceSpec) -> tuple[Digraph, ConvexPointSet]:
    """Deterministic instance from a spec: same spec, same instance."""
    if spec.n < 1:
        raise InputError("n must be positive")
    rng = random.Random(spec.seed)
    if spec.kind == "path":
        arcs = [(i, i + 1) for i in range(spec.n - 1)]
    elif spec.kind == "tree":
        arcs = _random_tree_arcs(spec.n, rng, spec.orient_bias)
    elif spec.kind == "caterpillar":
        arcs = _caterpillar_arcs(spec.n, rng, spec.orient_bias)
    elif spec.kind == "outerplanar-dag":
        arcs = _outerplanar_arcs(spec.n, rng)
    else:
        raise InputError(f"unknown instance kind {spec.kind!r}")
    graph = Digraph(spec.n, arcs)
    tags = random_tags(spec.n, rng, spec.left_fraction)
    return graph, ConvexPointSet(tags)
