"""Tree embedding algorithms.

Three layers:

* ``one_sided_embed``: linear-time construction of an upward embedding
  of any directed tree into a one-sided point set, with the root forced
  to the k-th lowest point where k is the lower-subtree size.
* ``restricted_upse_tree``: dynamic program deciding whether a rooted
  tree embeds with its root pinned to a point and every root subtree on
  consecutive points of a single side, respecting a proper ordering of
  the subtrees.
* ``tree_upse_fixed`` / ``tree_upse_all``: the full decision, built by
  decomposing the tree along the undirected path between a source pinned
  to the bottom point and a sink pinned to the top point, and chaining
  restricted solutions over nested point ranges.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .digraph import Digraph, RootedTree
from .embedding import Embedding
from .errors import InputError, StructureError
from .points import ConvexPointSet, PointRange

# ---------------------------------------------------------------------------
# One-sided construction
# ---------------------------------------------------------------------------


def one_sided_assign(tree: RootedTree, ranks: tuple[int, ...]) -> dict[int, int]:
    """Assign tree vertices to a one-sided run of ranks (ascending).

    The local root of every subtree lands on the k-th lowest rank of its
    slice, k = lower-subtree size, subtrees on incoming arcs below it,
    the rest above; each subtree occupies a contiguous slice.
    """
    if len(ranks) != tree.n:
        raise InputError(f"{tree.n} vertices vs {len(ranks)} ranks")
    out: dict[int, int] = {}
    stack: list[tuple[int, int]] = [(tree.root, 0)]
    while stack:
        v, lo = stack.pop()
        k = tree.lower_size[v]
        out[v] = ranks[lo + k - 1]
        below, above = lo, lo + k
        for c in tree.children[v]:
            if tree.arc_from_parent(c):
                stack.append((c, above))
                above += tree.size[c]
            else:
                stack.append((c, below))
                below += tree.size[c]
    return out


def one_sided_embed(tree: RootedTree, points: ConvexPointSet) -> Embedding:
    """Embed a rooted directed tree into a one-sided convex point set."""
    if not points.is_one_sided():
        raise InputError("point set is not one-sided")
    if tree.n != points.n:
        raise InputError(f"{tree.n} vertices vs {points.n} points")
    assignment = one_sided_assign(tree, tuple(range(1, points.n + 1)))
    return Embedding.from_dict(assignment, points.n)


# ---------------------------------------------------------------------------
# Proper orderings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProperOrdering:
    """Subtree indices: incoming subtrees by non-decreasing upper size,
    then outgoing subtrees by non-increasing lower size; ties by index."""

    indices: tuple[int, ...]


def proper_ordering(tree: RootedTree) -> ProperOrdering:
    lows = [i for i, s in enumerate(tree.subtrees) if s.incoming]
    highs = [i for i, s in enumerate(tree.subtrees) if not s.incoming]
    lows.sort(key=lambda i: (tree.subtrees[i].size - tree.subtrees[i].lower_size + 1, i))
    highs.sort(key=lambda i: (-tree.subtrees[i].lower_size, i))
    return ProperOrdering(tuple(lows + highs))


# ---------------------------------------------------------------------------
# Restricted problem: root pinned, subtrees on one-sided windows
# ---------------------------------------------------------------------------


class Window:
    """The candidate points of one restricted instance: two runs of
    global ranks, one per side, each ascending."""

    __slots__ = ("left", "right")

    def __init__(self, left: tuple[int, ...], right: tuple[int, ...]):
        self.left = left
        self.right = right

    @staticmethod
    def from_range(points: ConvexPointSet, rng: PointRange) -> "Window":
        left: tuple[int, ...] = ()
        right: tuple[int, ...] = ()
        if rng.left is not None:
            lo, hi = rng.left
            if not (1 <= lo <= hi <= points.left_count):
                raise InputError(f"left range {rng.left} out of bounds")
            left = points.left_ranks[lo - 1:hi]
        if rng.right is not None:
            lo, hi = rng.right
            if not (1 <= lo <= hi <= points.right_count):
                raise InputError(f"right range {rng.right} out of bounds")
            right = points.right_ranks[lo - 1:hi]
        return Window(left, right)

    @staticmethod
    def full(points: ConvexPointSet) -> "Window":
        return Window(points.left_ranks, points.right_ranks)

    @property
    def size(self) -> int:
        return len(self.left) + len(self.right)

    def ranks(self) -> Iterator[int]:
        yield from self.left
        yield from self.right

    def locate(self, rank: int) -> tuple[str, int]:
        """(side, 1-based position) of a rank within this window."""
        for pos, r in enumerate(self.left, start=1):
            if r == rank:
                return "L", pos
        for pos, r in enumerate(self.right, start=1):
            if r == rank:
                return "R", pos
        raise InputError(f"rank {rank} not in window")


_BASE, _SKIP, _LEFT, _RIGHT = 0, 1, 2, 3
_MOVE_NAMES = {_BASE: "base", _SKIP: "skip-root", _LEFT: "place-left",
               _RIGHT: "place-right"}


@dataclass(frozen=True)
class Placement:
    """A subtree placed on a one-sided run: position in the proper
    ordering, side, and inclusive 1-based window positions on that side."""

    order_index: int
    side: str
    lo: int
    hi: int


@dataclass(frozen=True)
class RestrictedDpTable:
    """The boolean matrix of the restricted DP with its move labels.

    Cell (i, j) is reachable iff the root plus the first i subtrees of
    the proper ordering can occupy the j lowest left points plus the
    matching lowest right points, the root's point among them.
    """

    values: tuple[tuple[bool, ...], ...]
    moves: tuple[tuple[Optional[str], ...], ...]
    sigma: tuple[int, ...]
    ordering: ProperOrdering


class RestrictedSolver:
    """Reusable restricted-problem solver for one rooted tree.

    Proper ordering and subtree metadata are computed once; each call is
    a fresh DP over the given window, so a solver may be probed with
    many windows and root points.
    """

    def __init__(self, tree: RootedTree):
        self.tree = tree
        self.ordering = proper_ordering(tree)
        self.subs = tuple(tree.subtrees[i] for i in self.ordering.indices)
        sig = [0]
        for s in self.subs:
            sig.append(sig[-1] + s.size)
        self.sigma = tuple(sig)
        self._subtree_trees: dict[int, RootedTree] = {}

    # -- DP core ---------------------------------------------------------

    def _right_used(self, placed: int, j: int, side_r: str, pos_r: int) -> int:
        """Lowest right points consumed at a cell with ``placed`` subtree
        vertices and j left points, counting the root's point when it has
        been absorbed into a prefix."""
        if side_r == "L":
            return placed + 1 - j if pos_r <= j else placed - j
        return placed + 1 - j if pos_r <= placed + 1 - j else placed - j

    def _run_dp(self, window: Window, p_r: int):
        if self.tree.n != window.size:
            return None
        side_r, pos_r = window.locate(p_r)
        nL, nR = len(window.left), len(window.right)
        d = len(self.subs)
        table: list[list[Optional[int]]] = [[None] * (nL + 1) for _ in range(d + 1)]
        table[0][0] = _BASE
        if side_r == "L" and pos_r == 1:
            table[0][1] = _SKIP
        for i in range(1, d + 1):
            sub = self.subs[i - 1]
            s, low = sub.size, sub.lower_size
            placed_prev = self.sigma[i - 1]
            prev, row = table[i - 1], table[i]
            for j in range(nL + 1):
                if prev[j] is None:
                    continue
                # place the subtree on the right side
                k_prev = self._right_used(placed_prev, j, side_r, pos_r)
                w_lo = k_prev + 2 if (side_r == "R" and pos_r == k_prev + 1) else k_prev + 1
                w_hi = w_lo + s - 1
                if w_hi <= nR and not (side_r == "R" and w_lo <= pos_r <= w_hi):
                    root_rank = window.right[w_lo + low - 2]
                    if self._arc_upward(sub, root_rank, p_r) and row[j] is None:
                        row[j] = _RIGHT
                # place the subtree on the left side
                j2 = j + s
                if j2 <= nL and not (side_r == "L" and j < pos_r <= j2):
                    root_rank = window.left[j + low - 1]
                    if self._arc_upward(sub, root_rank, p_r) and row[j2] is None:
                        row[j2] = _LEFT
            if side_r == "L" and row[pos_r] is None and row[pos_r - 1] is not None:
                row[pos_r] = _SKIP
        return table, side_r, pos_r

    @staticmethod
    def _arc_upward(sub, root_rank: int, p_r: int) -> bool:
        return root_rank < p_r if sub.incoming else root_rank > p_r

    def feasible(self, window: Window, p_r: int) -> bool:
        res = self._run_dp(window, p_r)
        if res is None:
            return False
        table, _, _ = res
        return table[-1][len(window.left)] is not None

    def placements(self, window: Window, p_r: int) -> Optional[list[Placement]]:
        """Side windows for every subtree, or None when infeasible."""
        res = self._run_dp(window, p_r)
        if res is None:
            return None
        table, side_r, pos_r = res
        nL = len(window.left)
        if table[-1][nL] is None:
            return None
        i, j = len(self.subs), nL
        out: list[Placement] = []
        while True:
            mv = table[i][j]
            if mv == _BASE:
                break
            if mv == _SKIP:
                j -= 1
            elif mv == _LEFT:
                s = self.subs[i - 1].size
                out.append(Placement(i - 1, "L", j - s + 1, j))
                j -= s
                i -= 1
            else:
                s = self.subs[i - 1].size
                k_prev = self._right_used(self.sigma[i - 1], j, side_r, pos_r)
                w_lo = k_prev + 2 if (side_r == "R" and pos_r == k_prev + 1) else k_prev + 1
                out.append(Placement(i - 1, "R", w_lo, w_lo + s - 1))
                i -= 1
        out.reverse()
        return out

    def assign(self, window: Window, p_r: int) -> Optional[dict[int, int]]:
        """Vertex -> rank map for a feasible instance, else None."""
        placements = self.placements(window, p_r)
        if placements is None:
            return None
        out = {self.tree.root: p_r}
        for pl in placements:
            sub_index = self.ordering.indices[pl.order_index]
            sub = self.tree.subtrees[sub_index]
            run = window.left if pl.side == "L" else window.right
            ranks = run[pl.lo - 1:pl.hi]
            out.update(one_sided_assign(self._subtree_tree(sub_index), ranks))
        return out

    def _subtree_tree(self, sub_index: int) -> RootedTree:
        cached = self._subtree_trees.get(sub_index)
        if cached is None:
            sub = self.tree.subtrees[sub_index]
            cached = RootedTree(self.tree.graph, sub.root, sub.vertices)
            self._subtree_trees[sub_index] = cached
        return cached

    def table(self, window: Window, p_r: int) -> Optional[RestrictedDpTable]:
        res = self._run_dp(window, p_r)
        if res is None:
            return None
        table, _, _ = res
        values = tuple(tuple(c is not None for c in row) for row in table)
        moves = tuple(tuple(None if c is None else _MOVE_NAMES[c] for c in row)
                      for row in table)
        return RestrictedDpTable(values, moves, self.sigma, self.ordering)


def restricted_upse_tree(tree: RootedTree, points: ConvexPointSet,
                         p_r: int, rng: Optional[PointRange] = None
                         ) -> Optional[Embedding]:
    """Embed a rooted tree with its root pinned to ``p_r`` and each root
    subtree on consecutive points of one side; None when impossible.

    A size mismatch between tree and window is a NO, not an error.
    """
    window = Window.from_range(points, rng) if rng is not None else Window.full(points)
    solver = RestrictedSolver(tree)
    assignment = solver.assign(window, p_r)
    if assignment is None:
        return None
    if tree.vertices != frozenset(range(tree.graph.n)):
        raise InputError("restricted_upse_tree expects a full tree; "
                         "use RestrictedSolver for vertex subsets")
    return Embedding.from_dict(assignment, tree.graph.n)


def reachable_roots_tree(tree: RootedTree, points: ConvexPointSet,
                         rng: Optional[PointRange] = None) -> frozenset[int]:
    """All ranks that can host the root in some restricted embedding."""
    window = Window.from_range(points, rng) if rng is not None else Window.full(points)
    if tree.n != window.size:
        return frozenset()
    solver = RestrictedSolver(tree)
    return frozenset(r for r in window.ranks() if solver.feasible(window, r))


# ---------------------------------------------------------------------------
# Path decomposition
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathDecomposition:
    """The tree cut along the undirected source-sink path.

    ``pieces[k]`` is the subtree hanging at path vertex k (rooted
    there); piece vertex sets partition the tree.
    """

    path: tuple[int, ...]
    pieces: tuple[RootedTree, ...]
    prefix_sizes: tuple[int, ...]


def _piece_vertices(graph: Digraph, center: int, banned: tuple[int, ...]) -> frozenset[int]:
    seen = {center}
    stack = [center]
    while stack:
        u = stack.pop()
        for w in graph.und_adj[u]:
            if w in banned and u == center:
                continue
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def _undirected_path(graph: Digraph, s: int, t: int) -> tuple[int, ...]:
    parent: dict[int, Optional[int]] = {s: None}
    stack = [s]
    while stack:
        u = stack.pop()
        if u == t:
            break
        for w in graph.und_adj[u]:
            if w not in parent:
                parent[w] = u
                stack.append(w)
    if t not in parent:
        raise StructureError("source and sink are not connected")
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    path.reverse()
    return tuple(path)


def path_decompose(graph: Digraph, s: int, t: int) -> PathDecomposition:
    """Cut a directed tree along the undirected path between a source
    and a sink into one rooted piece per path vertex."""
    if not graph.is_tree():
        raise StructureError("graph is not a directed tree")
    if graph.in_degree(s) != 0:
        raise StructureError(f"vertex {s} is not a source")
    if graph.out_degree(t) != 0:
        raise StructureError(f"vertex {t} is not a sink")
    path = _undirected_path(graph, s, t)
    pieces = []
    sizes = []
    total = 0
    for idx, w in enumerate(path):
        banned = tuple(x for x in (path[idx - 1] if idx else None,
                                   path[idx + 1] if idx + 1 < len(path) else None)
                       if x is not None)
        verts = _piece_vertices(graph, w, banned)
        pieces.append(RootedTree(graph, w, verts))
        total += len(verts)
        sizes.append(total)
    return PathDecomposition(path, tuple(pieces), tuple(sizes))


# ---------------------------------------------------------------------------
# Full decision along a source-sink path
# ---------------------------------------------------------------------------

# One DP layer: left-count -> {host rank of the current path vertex:
# backpointer (previous host rank, previous left count) or None}.
Layer = dict[int, dict[int, Optional[tuple[int, int]]]]


def _ring_window(points: ConvexPointSet, a0: int, a: int, b0: int, b: int) -> Window:
    return Window(points.left_ranks[a0:a], points.right_ranks[b0:b])


def _base_layer(points: ConvexPointSet, piece: RootedTree) -> Layer:
    """Layer for the first path vertex: its piece must occupy the lowest
    points of both sides with the source on the bottom point."""
    solver = RestrictedSolver(piece)
    size = piece.n
    nL, nR = points.left_count, points.right_count
    bottom = 1
    layer: Layer = {}
    for a in range(0, min(size, nL) + 1):
        b = size - a
        if b > nR:
            continue
        window = _ring_window(points, 0, a, 0, b)
        covered = (points.tags[0] == "L" and a >= 1) or (points.tags[0] == "R" and b >= 1)
        if covered and solver.feasible(window, bottom):
            layer[a] = {bottom: None}
    return layer


def _extend_layer(points: ConvexPointSet, prev: Layer, prev_size: int,
                  piece: RootedTree, arc_up: bool, naive: bool = False) -> Layer:
    """One DP step: place the next piece on a ring of fresh points above
    the prefix, its root joined to the previous path vertex by an upward
    arc."""
    solver = RestrictedSolver(piece)
    size = piece.n
    nL, nR = points.left_count, points.right_count
    new_size = prev_size + size
    layer: Layer = {}
    for a0 in sorted(prev):
        hosts = prev[a0]
        b0 = prev_size - a0
        if not naive:
            qmin = min(hosts)
            qmax = max(hosts)
        for i in range(size + 1):
            a = a0 + i
            b = new_size - a
            if a > nL or b > nR or b < b0:
                continue
            window = _ring_window(points, a0, a, b0, b)
            cell = layer.setdefault(a, {})
            for p in window.ranks():
                if not naive and p in cell:
                    continue
                if not solver.feasible(window, p):
                    continue
                if naive:
                    for q in sorted(hosts):
                        if (q < p if arc_up else q > p):
                            if p not in cell:
                                cell[p] = (q, a0)
                            break
                else:
                    if arc_up and qmin < p:
                        cell[p] = (qmin, a0)
                    elif not arc_up and qmax > p:
                        cell[p] = (qmax, a0)
            if not cell:
                layer.pop(a, None)
    return layer


def _layer_chain(graph: Digraph, points: ConvexPointSet,
                 decomp: PathDecomposition, naive: bool = False) -> list[Layer]:
    arcs = graph.arc_set()
    layers = [_base_layer(points, decomp.pieces[0])]
    for k in range(1, len(decomp.path)):
        arc_up = (decomp.path[k - 1], decomp.path[k]) in arcs
        layers.append(_extend_layer(points, layers[-1], decomp.prefix_sizes[k - 1],
                                    decomp.pieces[k], arc_up, naive))
    return layers


def _reconstruct(points: ConvexPointSet, decomp: PathDecomposition,
                 layers: list[Layer]) -> dict[int, int]:
    assignment: dict[int, int] = {}
    a = points.left_count
    p = points.n
    for k in range(len(decomp.path) - 1, -1, -1):
        back = layers[k][a][p]
        a0 = back[1] if back is not None else 0
        b = decomp.prefix_sizes[k] - a
        b0 = (decomp.prefix_sizes[k - 1] - a0) if k else 0
        window = _ring_window(points, a0, a, b0, b)
        chunk = RestrictedSolver(decomp.pieces[k]).assign(window, p)
        assert chunk is not None
        assignment.update(chunk)
        if back is None:
            break
        p, a = back[0], a0
    return assignment


def _check_fixed_args(graph: Digraph, points: ConvexPointSet, s: int, t: int) -> None:
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if not graph.is_tree():
        raise StructureError("graph is not a directed tree")
    if graph.in_degree(s) != 0:
        raise StructureError(f"vertex {s} is not a source")
    if graph.out_degree(t) != 0:
        raise StructureError(f"vertex {t} is not a sink")


def tree_upse_fixed(graph: Digraph, points: ConvexPointSet, s: int, t: int,
                    naive: bool = False) -> Optional[Embedding]:
    """Upward embedding with the source on the bottom point and the sink
    on the top point, or None.  ``naive`` switches the DP to the plain
    two-parameter form with full candidate-pair scans (same answers)."""
    _check_fixed_args(graph, points, s, t)
    if graph.n == 0:
        return Embedding(())
    if graph.n == 1:
        return Embedding((1,))
    decomp = path_decompose(graph, s, t)
    layers = _layer_chain(graph, points, decomp, naive)
    final = layers[-1].get(points.left_count, {})
    if points.n not in final:
        return None
    return Embedding.from_dict(_reconstruct(points, decomp, layers), graph.n)


class _PrefixCache:
    """Shared DP prefixes for one source across all sinks.

    The layer reached just before a vertex v depends only on v (the
    piece of v's path predecessor excludes v), so layers are memoized
    per vertex and every tree edge is extended exactly once per source.
    """

    def __init__(self, graph: Digraph, points: ConvexPointSet, s: int):
        self.graph = graph
        self.points = points
        self.s = s
        self.arcs = graph.arc_set()
        parent: dict[int, Optional[int]] = {s: None}
        order = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in graph.und_adj[u]:
                if w not in parent:
                    parent[w] = u
                    order.append(w)
                    stack.append(w)
        self.parent = parent
        self._before: dict[int, tuple[Layer, int]] = {}

    def _piece(self, center: int, excl: Optional[int]) -> RootedTree:
        banned = [self.parent[center]] if self.parent[center] is not None else []
        if excl is not None:
            banned.append(excl)
        verts = _piece_vertices(self.graph, center, tuple(banned))
        return RootedTree(self.graph, center, verts)

    def _layer_before(self, v: int) -> tuple[Layer, int]:
        """Layer after all pieces strictly before v on the path from s."""
        cached = self._before.get(v)
        if cached is not None:
            return cached
        p = self.parent[v]
        assert p is not None
        piece = self._piece(p, excl=v)
        if p == self.s:
            layer = _base_layer(self.points, piece)
            size = piece.n
        else:
            prev_layer, prev_size = self._layer_before(p)
            arc_up = (self.parent[p], p) in self.arcs
            layer = _extend_layer(self.points, prev_layer, prev_size, piece, arc_up)
            size = prev_size + piece.n
        self._before[v] = (layer, size)
        return layer, size

    def _final_layer(self, t: int) -> Layer:
        prev_layer, prev_size = self._layer_before(t)
        piece = self._piece(t, excl=None)
        arc_up = (self.parent[t], t) in self.arcs
        return _extend_layer(self.points, prev_layer, prev_size, piece, arc_up)

    def decide_sink(self, t: int) -> bool:
        if t == self.s:
            return self.graph.n == 1
        layer = self._final_layer(t)
        return self.points.n in layer.get(self.points.left_count, {})

    def embed_sink(self, t: int) -> Optional[dict[int, int]]:
        final = self._final_layer(t)
        if self.points.n not in final.get(self.points.left_count, {}):
            return None
        path = [t]
        while path[-1] != self.s:
            path.append(self.parent[path[-1]])
        path.reverse()
        pieces = [self._piece(path[i], excl=path[i + 1])
                  for i in range(len(path) - 1)]
        pieces.append(self._piece(t, excl=None))
        sizes = []
        total = 0
        for piece in pieces:
            total += piece.n
            sizes.append(total)
        decomp = PathDecomposition(tuple(path), tuple(pieces), tuple(sizes))
        layers = [self._layer_before(path[i])[0] for i in range(1, len(path))]
        layers.append(final)
        return _reconstruct(self.points, decomp, layers)


def tree_upse_all(graph: Digraph, points: ConvexPointSet, *,
                  reuse: bool = True, naive: bool = False) -> Optional[Embedding]:
    """Try every (source, sink) pair in ascending order; return the
    first embedding found, or None.

    With ``reuse`` the DP layers along shared path prefixes are computed
    once per source instead of once per sink.
    """
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if graph.n == 0:
        return Embedding(())
    if not graph.is_tree():
        raise StructureError("graph is not a directed tree")
    if graph.n == 1:
        return Embedding((1,))
    sinks = graph.sinks()
    for s in graph.sources():
        cache = _PrefixCache(graph, points, s) if reuse and not naive else None
        for t in sinks:
            if cache is not None:
                found = cache.embed_sink(t)
                if found is not None:
                    return Embedding.from_dict(found, graph.n)
            else:
                emb = tree_upse_fixed(graph, points, s, t, naive=naive)
                if emb is not None:
                    return emb
    return None


def tree_upse_all_pairs(graph: Digraph, points: ConvexPointSet, *,
                        reuse: bool = True) -> dict[tuple[int, int], bool]:
    """Decision for every (source, sink) pair, without construction.

    This is the workload where prefix reuse pays: with it, each tree
    edge is extended once per source instead of once per sink."""
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if not graph.is_tree():
        raise StructureError("graph is not a directed tree")
    out: dict[tuple[int, int], bool] = {}
    if graph.n == 1:
        return {(0, 0): True}
    sinks = graph.sinks()
    for s in graph.sources():
        if reuse:
            cache = _PrefixCache(graph, points, s)
            for t in sinks:
                out[(s, t)] = cache.decide_sink(t)
        else:
            for t in sinks:
                layers = _layer_chain(graph, points, path_decompose(graph, s, t))
                out[(s, t)] = points.n in layers[-1].get(points.left_count, {})
    return out
