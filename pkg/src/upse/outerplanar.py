"""Embedding decisions for outerplanar DAGs.

The restricted problem (root pinned, every subgraph hanging at the root
on consecutive points of one side) is reduced to the tree DP: each
extremal subgraph is replaced by its upward skeleton, a two-path tree
whose attachment vertex sits at the same forced position, and the
subgraph with the root on one of its block sides (at most one exists)
is placed at fully forced positions and checked arc by arc.

The full decision walks the cut vertices separating a source from a
sink; each step places the connecting path component in one of its two
mirror drawings directly above the prefix and the next hanging piece
above it, reusing the restricted solver for the piece.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .blocks import (Block, BlockDecomposition, block_decompose, block_shape,
                     construct_one_sided, hanging_subgraphs,
                     one_side_embeddable, structural_check)
from .digraph import Digraph, RootedTree
from .embedding import Embedding
from .errors import InputError, StructureError
from .points import ConvexPointSet, PointRange
from .tree import RestrictedSolver, Window

# ---------------------------------------------------------------------------
# Upward skeletons
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SkeletonChain:
    """One extremal subgraph reduced to a chain: ``in_len`` vertices
    feed the attachment from below, ``out_len`` continue above it."""

    comp: frozenset[int]
    attachment: int
    incoming: bool  # subgraph hangs on an arc into the root
    in_len: int
    out_len: int


def _attachment_chain(graph: Digraph, rev: Digraph, comp: frozenset[int],
                      root: int, incoming: bool) -> SkeletonChain:
    """Attachment vertex and path lengths of one extremal subgraph.

    The attachment is the unique root neighbour with no other directed
    root path: the far end of a trivial block, or the first side vertex
    of the block's nonempty side.
    """
    frame = rev if incoming else graph
    decomp = block_decompose(frame, comp)
    (bi,) = decomp.blocks_at[root]
    block = decomp.blocks[bi]
    if block.trivial:
        (v,) = block.vertices - {root}
    else:
        shape = block_shape(frame, block)
        if shape is None or not shape.one_sided or shape.source != root:
            raise StructureError("extremal subgraph block is not one-sided at the root")
        side = shape.sides[0] or shape.sides[1]
        v = side[0]
    below = 0
    for hang in hanging_subgraphs(frame, comp, v, exclude=block.vertices):
        dirs = {(w, v) in frame.arc_set()
                for w in frame.und_adj[v] if w in hang and w != v}
        if len(dirs) != 1:
            raise StructureError("attachment vertex is not a switch of its hangings")
        if dirs.pop():
            below += len(hang) - 1
    in_frame = below
    out_frame = len(comp) - 2 - in_frame
    if incoming:
        in_frame, out_frame = out_frame, in_frame
    return SkeletonChain(comp, v, incoming, in_frame, out_frame)


def _skeleton_from_chains(chains: list[SkeletonChain]) -> tuple[Digraph, dict[int, int]]:
    """Tree with one two-path subtree per chain, rooted at vertex 0.

    Returns the skeleton digraph and a map from each chain index to the
    skeleton vertex standing in for its attachment vertex.
    """
    arcs: list[tuple[int, int]] = []
    child_of: dict[int, int] = {}
    nxt = 1
    for idx, ch in enumerate(chains):
        child = nxt
        nxt += 1
        child_of[idx] = child
        arcs.append((child, 0) if ch.incoming else (0, child))
        prev = child
        for _ in range(ch.in_len):
            arcs.append((nxt, prev))
            prev = nxt
            nxt += 1
        prev = child
        for _ in range(ch.out_len):
            arcs.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Digraph(nxt, arcs), child_of


def upward_skeleton(graph: Digraph, root: int, direction: str,
                    vertices: Optional[frozenset[int]] = None) -> RootedTree:
    """Tree surrogate of the upper or lower subgraph at ``root``.

    One two-path subtree stands in for each extremal subgraph of the
    chosen direction ("upper" keeps the subgraphs the root feeds,
    "lower" the ones feeding it); restricted decisions on the skeleton
    coincide with those on the original whenever every such subgraph is
    one-side embeddable from the root (checked here, StructureError
    otherwise).  The skeleton root is vertex 0.
    """
    if direction not in ("upper", "lower"):
        raise InputError(f"direction must be 'upper' or 'lower', got {direction!r}")
    verts = vertices if vertices is not None else frozenset(range(graph.n))
    incoming = direction == "lower"
    rev = graph.reversed()
    arcs = graph.arc_set()
    chains = []
    for comp in hanging_subgraphs(graph, verts, root, frozenset()):
        dirs = {(w, root) in arcs
                for w in graph.und_adj[root] if w in comp and w != root}
        if dirs != {incoming}:
            continue
        if not one_side_embeddable(graph, root, comp):
            raise StructureError("an extremal subgraph is not one-side embeddable")
        chains.append(_attachment_chain(graph, rev, comp, root, incoming))
    skel, _ = _skeleton_from_chains(chains)
    return RootedTree(skel, 0)


# ---------------------------------------------------------------------------
# Restricted solver for rooted outerplanar DAGs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _SideEntry:
    kind: str            # "vertex" or "hang"
    vertex: int          # block vertex, or hang attachment
    comp: frozenset[int] = frozenset()
    below: bool = False  # hang attaches under its vertex
    size: int = 1


class OuterRestrictedSolver:
    """Restricted decisions for one rooted outerplanar subgraph.

    ``precondition_error`` marks the one genuinely ill-posed rooting
    (the root a side vertex of two blocks); the public wrappers raise on
    it.  Every other out-of-definition shape, e.g. a two-sided block not
    holding the root alone on a side, is provably never embeddable under
    the consecutive-side-window rule and is decided NO (``always_no``).
    """

    def __init__(self, graph: Digraph, root: int,
                 vertices: Optional[frozenset[int]] = None):
        self.graph = graph
        self.root = root
        self.verts = vertices if vertices is not None else frozenset(range(graph.n))
        self.size = len(self.verts)
        self.precondition_error: Optional[str] = None
        self.always_no = False
        self._rev = graph.reversed()
        arcs = graph.arc_set()

        lowers: list[frozenset[int]] = []
        uppers: list[frozenset[int]] = []
        side_comps: list[frozenset[int]] = []
        for comp in hanging_subgraphs(graph, self.verts, root, frozenset()):
            dirs = {(w, root) in arcs
                    for w in graph.und_adj[root] if w in comp and w != root}
            if dirs == {True}:
                lowers.append(comp)
            elif dirs == {False}:
                uppers.append(comp)
            else:
                side_comps.append(comp)
        if len(side_comps) > 1:
            self.precondition_error = "root is a side vertex of two blocks"
            return
        for comp in lowers + uppers + side_comps:
            if self._has_unanchored_two_sided(comp):
                # a two-sided block that does not hold the root alone on
                # a side can never satisfy the consecutive-side-window
                # requirement (its far side would come out upside down)
                self.always_no = True
                return

        self.lower_size = 1 + sum(len(c) - 1 for c in lowers)
        self.upper_size = 1 + sum(len(c) - 1 for c in uppers)

        try:
            low_chains = [_attachment_chain(graph, self._rev, c, root, True)
                          for c in lowers]
            up_chains = [_attachment_chain(graph, self._rev, c, root, False)
                         for c in uppers]
        except StructureError:
            self.always_no = True
            return
        for ch in low_chains + up_chains:
            if not one_side_embeddable(graph, root, ch.comp):
                self.always_no = True
                return

        self.side_plan = None
        if side_comps:
            self.side_plan = self._plan_side(side_comps[0])
            if self.precondition_error or self.always_no:
                return
            self._low_solver, self._low_chains = self._skeleton_solver(low_chains)
            self._up_solver, self._up_chains = self._skeleton_solver(up_chains)
        else:
            self._all_solver, self._all_chains = self._skeleton_solver(
                low_chains + up_chains)

    # -- construction-time analysis ---------------------------------------

    def _has_unanchored_two_sided(self, comp: frozenset[int]) -> bool:
        for b in block_decompose(self.graph, comp).blocks:
            if b.trivial:
                continue
            shape = block_shape(self.graph, b)
            if shape is not None and not shape.one_sided:
                side = shape.side_of(self.root)
                if side is None or shape.sides[side] != (self.root,):
                    return True
        return False

    def _skeleton_solver(self, chains: list[SkeletonChain]):
        skel, child_of = _skeleton_from_chains(chains)
        solver = RestrictedSolver(RootedTree(skel, 0))
        by_child = {child_of[i]: chains[i] for i in range(len(chains))}
        return solver, by_child

    def _plan_side(self, comp: frozenset[int]):
        graph, root = self.graph, self.root
        decomp = block_decompose(graph, comp)
        block = decomp.blocks[decomp.blocks_at[root][0]]
        shape = block_shape(graph, block)
        if shape is None:
            self.always_no = True
            return None
        side_idx = shape.side_of(root)
        if side_idx is None or shape.sides[side_idx] != (root,):
            self.always_no = True
            return None
        other = shape.sides[1 - side_idx]
        order = (shape.source,) + other + (shape.sink,)
        entries: list[_SideEntry] = []
        for v in order:
            hangs = hanging_subgraphs(graph, comp, v, exclude=block.vertices)
            belows, aboves = [], []
            for hang in hangs:
                dirs = {(w, v) in graph.arc_set()
                        for w in graph.und_adj[v] if w in hang and w != v}
                if len(dirs) != 1 or not one_side_embeddable(graph, v, hang):
                    self.always_no = True
                    return None
                (belows if dirs.pop() else aboves).append(hang)
            for hang in belows:
                entries.append(_SideEntry("hang", v, hang, True, len(hang) - 1))
            entries.append(_SideEntry("vertex", v))
            for hang in aboves:
                entries.append(_SideEntry("hang", v, hang, False, len(hang) - 1))
        return block, entries, len(comp)

    # -- per-window machinery ---------------------------------------------

    def _split(self, window: Window, p_r: int):
        """Forced window split when the root lies on a block side: the
        points below the root's point host the lower subgraph, a run of
        the opposite side hosts the block component, the rest the upper
        subgraph.  Returns None when the counts cannot match."""
        side_r, pos_r = window.locate(p_r)
        block, entries, comp_size = self.side_plan
        same = window.left if side_r == "L" else window.right
        other = window.right if side_r == "L" else window.left
        low_other = self.lower_size - pos_r
        w_hi = low_other + comp_size - 1
        if low_other < 0 or w_hi > len(other):
            return None
        if len(other) - w_hi != self.upper_size - 1 - (len(same) - pos_r):
            return None
        run = other[low_other:w_hi]
        ranks: dict[int, int] = {self.root: p_r}
        hang_slots: list[tuple[_SideEntry, tuple[int, ...]]] = []
        pos = 0
        for e in entries:
            if e.kind == "vertex":
                ranks[e.vertex] = run[pos]
                pos += 1
            else:
                hang_slots.append((e, run[pos:pos + e.size]))
                pos += e.size
        arcs = self.graph.arc_set()
        for edge in block.edges:
            u, v = tuple(edge)
            a, b = (u, v) if (u, v) in arcs else (v, u)
            if ranks[a] > ranks[b]:
                return None
        if side_r == "L":
            low_win = Window(window.left[:pos_r], window.right[:low_other])
            up_win = Window(window.left[pos_r - 1:], window.right[w_hi:])
        else:
            low_win = Window(window.left[:low_other], window.right[:pos_r])
            up_win = Window(window.left[w_hi:], window.right[pos_r - 1:])
        return low_win, up_win, ranks, hang_slots

    def feasible(self, window: Window, p_r: int) -> bool:
        if self.precondition_error or self.always_no:
            return False
        if self.size != window.size:
            return False
        if self.size == 1:
            return True
        if self.side_plan is None:
            return self._all_solver.feasible(window, p_r)
        split = self._split(window, p_r)
        if split is None:
            return False
        low_win, up_win, _, _ = split
        return (self._low_solver.feasible(low_win, p_r)
                and self._up_solver.feasible(up_win, p_r))

    def assign(self, window: Window, p_r: int) -> Optional[dict[int, int]]:
        if self.precondition_error or self.always_no or self.size != window.size:
            return None
        if self.size == 1:
            return {self.root: p_r}
        out: dict[int, int] = {self.root: p_r}
        if self.side_plan is None:
            skel = self._all_solver.assign(window, p_r)
            if skel is None:
                return None
            self._materialize(skel, self._all_chains, out)
            return out
        split = self._split(window, p_r)
        if split is None:
            return None
        low_win, up_win, ranks, hang_slots = split
        low = self._low_solver.assign(low_win, p_r)
        up = self._up_solver.assign(up_win, p_r)
        if low is None or up is None:
            return None
        self._materialize(low, self._low_chains, out)
        self._materialize(up, self._up_chains, out)
        out.update(ranks)
        for entry, slots in hang_slots:
            out.update(_lay_hang(self.graph, entry.comp, entry.vertex,
                                 entry.below, list(slots)))
        return out

    def _materialize(self, skeleton_map: dict[int, int],
                     chains: dict[int, SkeletonChain],
                     out: dict[int, int]) -> None:
        """Replace each skeleton subtree by the real one-sided layout of
        its subgraph on the same run of ranks."""
        for child, chain in chains.items():
            span = len(chain.comp) - 1
            run = sorted(skeleton_map[v] for v in _subtree_ids(child, chain))
            assert len(run) == span
            out.update(_lay_hang(self.graph, chain.comp, self.root,
                                 chain.incoming, run))


def _subtree_ids(child: int, chain: SkeletonChain) -> list[int]:
    return list(range(child, child + chain.in_len + chain.out_len + 1))


def _lay_hang(graph: Digraph, comp: frozenset[int], attach: int, below: bool,
              run: list[int]) -> dict[int, int]:
    """One-side layout of a hanging subgraph onto a run of ranks, with
    the already-placed attachment vertex on a virtual extreme point just
    outside the run."""
    sentinel = -1
    slots = (list(run) + [sentinel]) if below else ([sentinel] + list(run))
    placed = construct_one_sided(graph, attach, slots, vertices=comp, check=False)
    del placed[attach]
    return placed


def restricted_upse_outerplanar(graph: Digraph, root: int,
                                points: ConvexPointSet, p_r: int,
                                rng: Optional[PointRange] = None
                                ) -> Optional[Embedding]:
    """Embedding with the root pinned to ``p_r`` and every subgraph
    hanging at the root on consecutive points of one side, or None.

    Raises StructureError when the input is outside the problem
    definition (see OuterRestrictedSolver).
    """
    solver = OuterRestrictedSolver(graph, root)
    if solver.precondition_error:
        raise StructureError(solver.precondition_error)
    window = Window.from_range(points, rng) if rng is not None else Window.full(points)
    assignment = solver.assign(window, p_r)
    if assignment is None:
        return None
    return Embedding.from_dict(assignment, graph.n)


def reachable_roots_outerplanar(graph: Digraph, root: int,
                                points: ConvexPointSet,
                                rng: Optional[PointRange] = None) -> frozenset[int]:
    solver = OuterRestrictedSolver(graph, root)
    if solver.precondition_error:
        raise StructureError(solver.precondition_error)
    window = Window.from_range(points, rng) if rng is not None else Window.full(points)
    if solver.size != window.size:
        return frozenset()
    return frozenset(r for r in window.ranks() if solver.feasible(window, r))


# ---------------------------------------------------------------------------
# Path components and the full decision
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OuterPathDecomposition:
    """Cut vertices separating the source from the sink, the pieces
    hanging at them, and the blocks connecting consecutive ones."""

    path: tuple[int, ...]
    pieces: tuple[frozenset[int], ...]
    connector_blocks: tuple[Optional[Block], ...]  # len(path) - 1
    prefix_sizes: tuple[int, ...]


def _bc_path(graph: Digraph, decomp: BlockDecomposition, s: int, t: int
             ) -> tuple[list[int], list[Block]]:
    """Separating cut vertices between s and t in order, plus the block
    joining each consecutive pair."""
    nodes: dict[object, list[object]] = {}
    for v in decomp.cut_vertices:
        nodes[("c", v)] = []
    for b in decomp.blocks:
        nodes[("b", b.index)] = []
        for v in b.vertices:
            if v in decomp.cut_vertices:
                nodes[("b", b.index)].append(("c", v))
                nodes[("c", v)].append(("b", b.index))

    def node_of(v: int):
        if v in decomp.cut_vertices:
            return ("c", v)
        return ("b", decomp.blocks_at[v][0])

    start, goal = node_of(s), node_of(t)
    prev: dict[object, object] = {start: None}
    queue = [start]
    while queue:
        cur = queue.pop(0)
        if cur == goal:
            break
        for nb in nodes[cur]:
            if nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    if goal not in prev:
        raise StructureError("source and sink are not connected")
    chain = [goal]
    while chain[-1] is not None:
        chain.append(prev[chain[-1]])
    chain = chain[:-1][::-1]

    w = [s] + [v for kind, v in chain if kind == "c" and v not in (s, t)] + [t]
    connectors: list[Block] = []
    block_nodes = [decomp.blocks[i] for kind, i in chain if kind == "b"]
    for a, b in zip(w, w[1:]):
        found = next(blk for blk in block_nodes
                     if a in blk.vertices and b in blk.vertices)
        connectors.append(found)
    return w, connectors


def outer_path_decompose(graph: Digraph, s: int, t: int) -> OuterPathDecomposition:
    decomp = block_decompose(graph)
    w, connectors = _bc_path(graph, decomp, s, t)
    pieces = []
    for i, v in enumerate(w):
        exclude = set()
        if i > 0:
            exclude |= connectors[i - 1].vertices
        if i + 1 < len(w):
            exclude |= connectors[i].vertices
        exclude.discard(v)
        comps = hanging_subgraphs(graph, frozenset(range(graph.n)), v,
                                  frozenset(exclude))
        piece = frozenset({v}).union(*comps) if comps else frozenset({v})
        pieces.append(piece)
    sizes = []
    total = 0
    for i, piece in enumerate(pieces):
        if i > 0:
            a, b, _ = _connector_content(graph, connectors[i - 1], w[i - 1], w[i])
            total += sum(e.size for e in a + b)
        total += len(piece)
        sizes.append(total)
    return OuterPathDecomposition(tuple(w), tuple(pieces),
                                  tuple(connectors), tuple(sizes))


def _connector_content(graph: Digraph, block: Block, w_prev: int, w_cur: int
                       ) -> tuple[list[_SideEntry], list[_SideEntry], list[frozenset[int]]]:
    """Forced bottom-to-top contents of the two cycle arcs of a
    connector block between consecutive path vertices (empty for a
    trivial block), plus all hanging components for size accounting."""
    from .blocks import outer_cycle

    if block.trivial:
        return [], [], []
    cycle = outer_cycle(block.vertices, block.edges)
    assert cycle is not None
    k = len(cycle)
    pi, ci = cycle.index(w_prev), cycle.index(w_cur)
    arc_a = [cycle[(pi + j) % k] for j in range(1, (ci - pi) % k)]
    arc_b = [cycle[(ci + j) % k] for j in range(1, (pi - ci) % k)][::-1]
    all_hangs: list[frozenset[int]] = []

    def content(seq: list[int]) -> list[_SideEntry]:
        entries: list[_SideEntry] = []
        for v in seq:
            hangs = hanging_subgraphs(graph, frozenset(range(graph.n)), v,
                                      exclude=block.vertices - {v})
            belows, aboves = [], []
            for hang in hangs:
                all_hangs.append(hang)
                dirs = {(x, v) in graph.arc_set()
                        for x in graph.und_adj[v] if x in hang and x != v}
                if len(dirs) != 1 or not one_side_embeddable(graph, v, hang):
                    entries.append(_SideEntry("invalid", v, size=0))
                (belows if dirs == {True} else aboves).append(hang)
            for hang in belows:
                entries.append(_SideEntry("hang", v, hang, True, len(hang) - 1))
            entries.append(_SideEntry("vertex", v))
            for hang in aboves:
                entries.append(_SideEntry("hang", v, hang, False, len(hang) - 1))
        return entries

    return content(arc_a), content(arc_b), all_hangs


class _Connector:
    """One path component prepared for both mirror drawings."""

    def __init__(self, graph: Digraph, block: Block, w_prev: int, w_cur: int):
        self.graph = graph
        self.block = block
        self.w_prev = w_prev
        self.w_cur = w_cur
        a, b, _ = _connector_content(graph, block, w_prev, w_cur)
        self.runs = (a, b)
        self.invalid = any(e.kind == "invalid" for e in a + b)
        self.sizes = (sum(e.size for e in a), sum(e.size for e in b))

    def place(self, branch: int, left_ranks: tuple[int, ...],
              right_ranks: tuple[int, ...], q: int, p: int
              ) -> Optional[tuple[dict[int, int],
                                  list[tuple[_SideEntry, tuple[int, ...]]]]]:
        """Forced ranks for one mirror branch, or None when some block
        arc comes out downward."""
        if self.invalid:
            return None
        first, second = self.runs if branch == 0 else self.runs[::-1]
        ranks: dict[int, int] = {self.w_prev: q, self.w_cur: p}
        hang_slots = []
        for entries, run in ((first, left_ranks), (second, right_ranks)):
            pos = 0
            for e in entries:
                if e.kind == "vertex":
                    ranks[e.vertex] = run[pos]
                    pos += 1
                else:
                    hang_slots.append((e, run[pos:pos + e.size]))
                    pos += e.size
        arcs = self.graph.arc_set()
        for edge in self.block.edges:
            u, v = tuple(edge)
            a, b = (u, v) if (u, v) in arcs else (v, u)
            if ranks[a] > ranks[b]:
                return None
        return ranks, hang_slots


# layer: left count -> {host rank: (prev rank, prev left count, branch) | None}
OuterLayer = dict[int, dict[int, Optional[tuple[int, int, int]]]]


class _OuterDp:
    def __init__(self, graph: Digraph, points: ConvexPointSet, s: int, t: int):
        self.graph = graph
        self.points = points
        self.decomp = outer_path_decompose(graph, s, t)
        self.solvers = [OuterRestrictedSolver(graph, w, piece)
                        for w, piece in zip(self.decomp.path, self.decomp.pieces)]
        self.connectors = [
            _Connector(graph, self.decomp.connector_blocks[i],
                       self.decomp.path[i], self.decomp.path[i + 1])
            for i in range(len(self.decomp.path) - 1)]

    def _piece_window(self, a0: int, a: int, b0: int, b: int) -> Window:
        return Window(self.points.left_ranks[a0:a], self.points.right_ranks[b0:b])

    def run(self) -> Optional[list[OuterLayer]]:
        points = self.points
        nL, nR = points.left_count, points.right_count
        solver0 = self.solvers[0]
        size0 = len(self.decomp.pieces[0])
        layer: OuterLayer = {}
        bottom = 1
        for a in range(0, min(size0, nL) + 1):
            b = size0 - a
            if b > nR:
                continue
            window = self._piece_window(0, a, 0, b)
            covered = (points.tags[0] == "L" and a >= 1) or \
                      (points.tags[0] == "R" and b >= 1)
            if covered and solver0.feasible(window, bottom):
                layer[a] = {bottom: None}
        layers = [layer]
        placed = self.decomp.prefix_sizes[0]
        for k in range(1, len(self.decomp.path)):
            conn = self.connectors[k - 1]
            solver = self.solvers[k]
            piece_size = len(self.decomp.pieces[k])
            prev_layer = layers[-1]
            prev_placed = placed
            placed = self.decomp.prefix_sizes[k]
            nxt: OuterLayer = {}
            for a0 in sorted(prev_layer):
                hosts = prev_layer[a0]
                b0 = prev_placed - a0
                branches = (0,) if conn.block.trivial else (0, 1)
                for branch in branches:
                    cl = conn.sizes[branch]
                    cr = conn.sizes[1 - branch]
                    if a0 + cl > nL or b0 + cr > nR:
                        continue
                    run_l = points.left_ranks[a0:a0 + cl]
                    run_r = points.right_ranks[b0:b0 + cr]
                    for i in range(piece_size + 1):
                        a = a0 + cl + i
                        b = b0 + cr + (piece_size - i)
                        if a > nL or b > nR:
                            continue
                        window = self._piece_window(a0 + cl, a, b0 + cr, b)
                        cell = nxt.setdefault(a, {})
                        for p in window.ranks():
                            if p in cell:
                                continue
                            if not solver.feasible(window, p):
                                continue
                            for q in sorted(hosts):
                                if conn.place(branch, run_l, run_r, q, p) is not None:
                                    cell[p] = (q, a0, branch)
                                    break
                        if not cell:
                            nxt.pop(a, None)
            layers.append(nxt)
        return layers

    def decide(self) -> bool:
        layers = self.run()
        return self.points.n in layers[-1].get(self.points.left_count, {})

    def reconstruct(self, layers: list[OuterLayer]) -> dict[int, int]:
        points = self.points
        out: dict[int, int] = {}
        a = points.left_count
        p = points.n
        for k in range(len(self.decomp.path) - 1, -1, -1):
            back = layers[k][a][p]
            if back is None:
                a0, b0 = 0, 0
            else:
                q, a0, branch = back
                conn = self.connectors[k - 1]
                cl = conn.sizes[branch]
                cr = conn.sizes[1 - branch]
                b0 = (self.decomp.prefix_sizes[k - 1] - a0)
                run_l = points.left_ranks[a0:a0 + cl]
                run_r = points.right_ranks[b0:b0 + cr]
                placed = conn.place(branch, run_l, run_r, q, p)
                assert placed is not None
                ranks, hang_slots = placed
                out.update(ranks)
                for entry, slots in hang_slots:
                    out.update(_lay_hang(self.graph, entry.comp, entry.vertex,
                                         entry.below, list(slots)))
                a0, b0 = a0 + cl, b0 + cr
            b = self.decomp.prefix_sizes[k] - a
            window = self._piece_window(a0, a, b0, b)
            chunk = self.solvers[k].assign(window, p)
            assert chunk is not None
            out.update(chunk)
            if back is None:
                break
            p, a = back[0], back[1]
        return out


def outerplanar_upse_fixed(graph: Digraph, points: ConvexPointSet,
                           s: int, t: int) -> Optional[Embedding]:
    """Upward embedding of an outerplanar DAG with the source on the
    bottom point and the sink on the top point, or None."""
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if graph.in_degree(s) != 0:
        raise StructureError(f"vertex {s} is not a source")
    if graph.out_degree(t) != 0:
        raise StructureError(f"vertex {t} is not a sink")
    check = structural_check(graph)
    if not check.accepted:
        return None
    if graph.n == 0:
        return Embedding(())
    if graph.n == 1:
        return Embedding((1,))
    dp = _OuterDp(graph, points, s, t)
    layers = dp.run()
    if points.n not in layers[-1].get(points.left_count, {}):
        return None
    return Embedding.from_dict(dp.reconstruct(layers), graph.n)


def outerplanar_upse_all(graph: Digraph, points: ConvexPointSet
                         ) -> Optional[Embedding]:
    """Try every (source, sink) pair in ascending order after the
    structural admissibility check."""
    if graph.n != points.n:
        raise InputError(f"{graph.n} vertices vs {points.n} points")
    if graph.n == 0:
        return Embedding(())
    check = structural_check(graph)
    if not check.accepted:
        return None
    if graph.n == 1:
        return Embedding((1,))
    for s in graph.sources():
        for t in graph.sinks():
            emb = outerplanar_upse_fixed(graph, points, s, t)
            if emb is not None:
                return emb
    return None
