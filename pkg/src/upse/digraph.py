"""Directed graphs and rooted-tree decompositions.

Vertices are the integers 0..n-1.  Arcs are ordered (tail, head) pairs.
All structures are immutable after construction; derived adjacency and
subtree data are precomputed so instances can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import StructureError


class Digraph:
    """A simple digraph on vertices 0..n-1."""

    __slots__ = ("n", "arcs", "out_adj", "in_adj", "und_adj", "_arc_set")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        arcs = tuple((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise StructureError(f"arc ({u},{v}) out of range for n={n}")
            if u == v:
                raise StructureError(f"self-loop at vertex {u}")
        if len(set(frozenset(a) for a in arcs)) < len(arcs):
            raise StructureError("parallel arcs (in either orientation) are not allowed")
        self.n = n
        self.arcs = arcs
        self._arc_set = frozenset(arcs)
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        und_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in arcs:
            out_adj[u].append(v)
            in_adj[v].append(u)
            und_adj[u].append(v)
            und_adj[v].append(u)
        self.out_adj = tuple(tuple(sorted(a)) for a in out_adj)
        self.in_adj = tuple(tuple(sorted(a)) for a in in_adj)
        self.und_adj = tuple(tuple(sorted(a)) for a in und_adj)

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def degree(self, v: int) -> int:
        return len(self.und_adj[v])

    def arc_set(self) -> frozenset[tuple[int, int]]:
        return self._arc_set

    def sources(self) -> list[int]:
        return [v for v in range(self.n) if not self.in_adj[v]]

    def sinks(self) -> list[int]:
        return [v for v in range(self.n) if not self.out_adj[v]]

    def is_connected(self, within: Optional[frozenset[int]] = None) -> bool:
        verts = within if within is not None else frozenset(range(self.n))
        if not verts:
            return True
        start = min(verts)
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.und_adj[u]:
                if w in verts and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(verts)

    def is_acyclic(self) -> bool:
        indeg = [self.in_degree(v) for v in range(self.n)]
        queue = [v for v in range(self.n) if indeg[v] == 0]
        done = 0
        while queue:
            u = queue.pop()
            done += 1
            for w in self.out_adj[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return done == self.n

    def is_tree(self) -> bool:
        return len(self.arcs) == self.n - 1 and self.is_connected()

    def reversed(self) -> "Digraph":
        return Digraph(self.n, [(v, u) for u, v in self.arcs])

    def __repr__(self) -> str:  # pragma: no cover
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


@dataclass(frozen=True)
class SubtreeInfo:
    """One root subtree: its root vertex, size, and how it attaches.

    ``incoming`` is True when the subtree hangs on an arc into the tree
    root (the subtree feeds the root from below).
    """

    root: int
    size: int
    lower_size: int
    incoming: bool
    vertices: frozenset[int] = field(repr=False)


class RootedTree:
    """A directed tree (or tree-shaped vertex subset) rooted at a vertex.

    Precomputes, for every vertex as local root of its own subtree:
    subtree size, lower-subtree size (vertex plus subtrees on incoming
    arcs) and upper-subtree size.  ``lower + upper = size + 1`` holds at
    every vertex.
    """

    __slots__ = ("graph", "root", "vertices", "parent", "children",
                 "order", "size", "lower_size", "upper_size", "subtrees")

    def __init__(self, graph: Digraph, root: int,
                 vertices: Optional[frozenset[int]] = None):
        verts = vertices if vertices is not None else frozenset(range(graph.n))
        if root not in verts:
            raise StructureError(f"root {root} not in vertex set")
        parent: dict[int, Optional[int]] = {root: None}
        order: list[int] = [root]
        children: dict[int, list[int]] = {v: [] for v in verts}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in graph.und_adj[u]:
                if w not in verts:
                    continue
                if w not in parent:
                    parent[w] = u
                    children[u].append(w)
                    order.append(w)
                    stack.append(w)
                elif w != parent[u]:
                    raise StructureError("vertex set is not a tree (cycle found)")
        if len(parent) != len(verts):
            raise StructureError("vertex set is not a tree (disconnected)")

        arc_set = graph.arc_set()
        size: dict[int, int] = {}
        lower: dict[int, int] = {}
        upper: dict[int, int] = {}
        for u in reversed(order):
            s, lo, up = 1, 1, 1
            for c in children[u]:
                s += size[c]
                if (c, u) in arc_set:
                    lo += size[c]
                else:
                    up += size[c]
            size[u], lower[u], upper[u] = s, lo, up

        def collect(v: int) -> frozenset[int]:
            acc = [v]
            st = [v]
            while st:
                x = st.pop()
                for c in children[x]:
                    acc.append(c)
                    st.append(c)
            return frozenset(acc)

        subs = []
        for c in sorted(children[root]):
            subs.append(SubtreeInfo(
                root=c, size=size[c], lower_size=lower[c],
                incoming=(c, root) in arc_set, vertices=collect(c)))

        self.graph = graph
        self.root = root
        self.vertices = verts
        self.parent = parent
        self.children = {v: tuple(sorted(cs)) for v, cs in children.items()}
        self.order = tuple(order)
        self.size = size
        self.lower_size = lower
        self.upper_size = upper
        self.subtrees = tuple(subs)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def arc_from_parent(self, v: int) -> bool:
        """True when the tree arc between v and its parent points down to v."""
        p = self.parent[v]
        return (p, v) in self.graph.arc_set()


def subtree_decompose(graph: Digraph, root: int) -> RootedTree:
    """Root a directed tree and expose its subtree decomposition."""
    if not graph.is_tree():
        raise StructureError("graph is not a directed tree")
    return RootedTree(graph, root)
