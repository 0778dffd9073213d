"""Block structure of outerplanar DAGs.

Provides biconnected components with cut vertices, outer cycle
extraction (which doubles as the outerplanarity test for a block),
block shape classification (switches and sides), the global structural
admissibility check, the auxiliary tree over switch-glued block groups,
one-sided embeddability and the recursive one-sided construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .digraph import Digraph
from .errors import StructureError


# ---------------------------------------------------------------------------
# Biconnected components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    """A maximal biconnected subgraph; bridges are trivial blocks."""

    index: int
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]] = field(repr=False)

    @property
    def trivial(self) -> bool:
        return len(self.vertices) == 2


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    blocks_at: dict[int, tuple[int, ...]]  # vertex -> incident block indices

    def block_with(self, u: int, v: int) -> Optional[Block]:
        for bi in self.blocks_at.get(u, ()):
            if v in self.blocks[bi].vertices:
                return self.blocks[bi]
        return None


def block_decompose(graph: Digraph,
                    vertices: Optional[frozenset[int]] = None) -> BlockDecomposition:
    """Blocks and cut vertices of the underlying undirected graph
    (Hopcroft-Tarjan on an explicit stack)."""
    verts = vertices if vertices is not None else frozenset(range(graph.n))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    parent: dict[int, Optional[int]] = {}
    edge_stack: list[frozenset[int]] = []
    comp_edges: list[list[frozenset[int]]] = []
    cut: set[int] = set()
    timer = 0

    for start in sorted(verts):
        if start in disc:
            continue
        parent[start] = None
        disc[start] = low[start] = timer
        timer += 1
        stack: list[tuple[int, int]] = [(start, 0)]
        children_of_root = 0
        while stack:
            v, i = stack[-1]
            nbrs = [w for w in graph.und_adj[v] if w in verts]
            if i < len(nbrs):
                stack[-1] = (v, i + 1)
                w = nbrs[i]
                if w not in disc:
                    parent[w] = v
                    if v == start:
                        children_of_root += 1
                    edge_stack.append(frozenset((v, w)))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, 0))
                elif w != parent[v] and disc[w] < disc[v]:
                    edge_stack.append(frozenset((v, w)))
                    low[v] = min(low[v], disc[w])
            else:
                stack.pop()
                if stack:
                    u = stack[-1][0]
                    low[u] = min(low[u], low[v])
                    if low[v] >= disc[u]:
                        edges = []
                        marker = frozenset((u, v))
                        while edge_stack:
                            e = edge_stack.pop()
                            edges.append(e)
                            if e == marker:
                                break
                        comp_edges.append(edges)
                        if u != start:
                            cut.add(u)
        if children_of_root > 1:
            cut.add(start)

    blocks = []
    blocks_at: dict[int, list[int]] = {}
    for i, edges in enumerate(comp_edges):
        vs = frozenset(v for e in edges for v in e)
        blocks.append(Block(i, vs, frozenset(edges)))
        for v in vs:
            blocks_at.setdefault(v, []).append(i)
    return BlockDecomposition(tuple(blocks), frozenset(cut),
                              {v: tuple(bs) for v, bs in blocks_at.items()})


# ---------------------------------------------------------------------------
# Outer cycle extraction / outerplanarity of a block
# ---------------------------------------------------------------------------


def outer_cycle(block_vertices: frozenset[int],
                block_edges: frozenset[frozenset[int]]) -> Optional[tuple[int, ...]]:
    """The unique outer Hamiltonian cycle of a biconnected outerplanar
    block, or None when the block is not outerplanar.

    Peels degree-2 vertices, bridging each with a (possibly virtual)
    edge between its neighbours, then reinserts them in reverse; a
    reinsertion whose neighbours are no longer cycle-adjacent certifies
    a forbidden configuration.
    """
    k = len(block_vertices)
    if k == 2:
        return tuple(sorted(block_vertices))
    if len(block_edges) > 2 * k - 3:
        return None
    adj: dict[int, set[int]] = {v: set() for v in block_vertices}
    for e in block_edges:
        u, v = tuple(e)
        adj[u].add(v)
        adj[v].add(u)

    peeled: list[tuple[int, int, int]] = []
    alive = set(block_vertices)
    while len(alive) > 3:
        v2 = next((v for v in sorted(alive) if len(adj[v]) == 2), None)
        if v2 is None:
            return None
        a, b = sorted(adj[v2])
        adj[a].discard(v2)
        adj[b].discard(v2)
        alive.discard(v2)
        del adj[v2]
        peeled.append((v2, a, b))
        adj[a].add(b)
        adj[b].add(a)
    tri = sorted(alive)
    if any(len(adj[v]) != 2 for v in tri):
        return None

    succ: dict[int, int] = {tri[0]: tri[1], tri[1]: tri[2], tri[2]: tri[0]}
    pred: dict[int, int] = {v: u for u, v in succ.items()}
    for v2, a, b in reversed(peeled):
        if succ[a] == b:
            u, w = a, b
        elif succ[b] == a:
            u, w = b, a
        else:
            return None
        succ[u], succ[v2], pred[v2], pred[w] = v2, w, u, v2

    start = min(block_vertices)
    cycle = [start]
    while succ[cycle[-1]] != start:
        cycle.append(succ[cycle[-1]])
    if len(cycle) != k:
        return None
    if pred[start] < cycle[1]:
        cycle = [start] + cycle[1:][::-1]
    return tuple(cycle)


# ---------------------------------------------------------------------------
# Block shapes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockShape:
    """Switches and sides of a nontrivial block with directed sides.

    Sides run from the block source to the block sink along the outer
    cycle and list only the side vertices (switches excluded); for a
    one-sided block one side is empty.
    """

    block: Block
    cycle: tuple[int, ...]
    source: int
    sink: int
    sides: tuple[tuple[int, ...], tuple[int, ...]]

    @property
    def one_sided(self) -> bool:
        return not self.sides[0] or not self.sides[1]

    def side_of(self, v: int) -> Optional[int]:
        for i in (0, 1):
            if v in self.sides[i]:
                return i
        return None


def block_arc_directions(graph: Digraph, block: Block, v: int) -> tuple[int, int]:
    """(incoming, outgoing) arc counts of v inside the block."""
    ins = outs = 0
    arcs = graph.arc_set()
    for e in block.edges:
        if v in e:
            (other,) = e - {v}
            if (v, other) in arcs:
                outs += 1
            else:
                ins += 1
    return ins, outs


def _block_switches(graph: Digraph, block: Block) -> tuple[list[int], list[int]]:
    sources, sinks = [], []
    for v in sorted(block.vertices):
        ins, outs = block_arc_directions(graph, block, v)
        if ins == 0:
            sources.append(v)
        if outs == 0:
            sinks.append(v)
    return sources, sinks


def block_shape(graph: Digraph, block: Block) -> Optional[BlockShape]:
    """Shape of a nontrivial block, or None when it is not outerplanar,
    not single-source single-sink, or a side is not a directed
    source-to-sink path."""
    if block.trivial:
        return None
    cycle = outer_cycle(block.vertices, block.edges)
    if cycle is None:
        return None
    sources, sinks = _block_switches(graph, block)
    if len(sources) != 1 or len(sinks) != 1:
        return None
    src, snk = sources[0], sinks[0]
    si, ti = cycle.index(src), cycle.index(snk)
    k = len(cycle)
    side_a = tuple(cycle[(si + j) % k] for j in range(1, (ti - si) % k))
    side_b = tuple(cycle[(ti + j) % k] for j in range(1, (si - ti) % k))[::-1]
    arcs = graph.arc_set()
    for side in (side_a, side_b):
        walk = (src,) + side + (snk,)
        if any((walk[i + 1], walk[i]) in arcs for i in range(len(walk) - 1)):
            return None
    return BlockShape(block, cycle, src, snk, (side_a, side_b))


# ---------------------------------------------------------------------------
# Structural admissibility
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructuralCheck:
    accepted: bool
    reason: Optional[str]
    decomposition: Optional[BlockDecomposition]
    shapes: dict[int, BlockShape]  # nontrivial block index -> shape


def _reject(reason: str) -> StructuralCheck:
    return StructuralCheck(False, reason, None, {})


def structural_check(graph: Digraph) -> StructuralCheck:
    """Global admissibility: connected acyclic outerplanar, every
    nontrivial block with one source, one sink and directed sides, and
    no vertex a side vertex of two blocks.  Every rejection is a sound
    NO for the embedding problem."""
    if graph.n == 0:
        return StructuralCheck(True, None,
                               BlockDecomposition((), frozenset(), {}), {})
    if not graph.is_connected():
        return _reject("disconnected")
    if not graph.is_acyclic():
        return _reject("directed cycle")
    decomp = block_decompose(graph)
    shapes: dict[int, BlockShape] = {}
    for b in decomp.blocks:
        if b.trivial:
            continue
        if outer_cycle(b.vertices, b.edges) is None:
            return _reject("not outerplanar")
        sources, sinks = _block_switches(graph, b)
        if len(sources) > 1 or len(sinks) > 1:
            return _reject(
                f"block with {len(sources)} sources and {len(sinks)} sinks")
        shape = block_shape(graph, b)
        if shape is None:
            return _reject("block side is not a directed source-to-sink path")
        shapes[b.index] = shape
    side_count: dict[int, int] = {}
    for shape in shapes.values():
        for side in shape.sides:
            for v in side:
                side_count[v] = side_count.get(v, 0) + 1
                if side_count[v] > 1:
                    return _reject(f"vertex {v} is a side vertex of two blocks")
    return StructuralCheck(True, None, decomp, shapes)


# ---------------------------------------------------------------------------
# Auxiliary tree over switch-glued block groups
# ---------------------------------------------------------------------------


def is_block_switch(graph: Digraph, block: Block, v: int) -> bool:
    ins, outs = block_arc_directions(graph, block, v)
    return ins == 0 or outs == 0


@dataclass(frozen=True)
class AuxiliaryTree:
    """Contraction of the block structure: maximal groups of blocks
    glued at cut vertices that are switches of both, with a directed
    edge where a cut vertex is a side vertex in one block and a switch
    in another (from the side-vertex block's group)."""

    node_of_block: dict[int, int]
    node_count: int
    edges: tuple[tuple[int, int], ...]
    in_degree: tuple[int, ...]


def auxiliary_tree(graph: Digraph, decomp: BlockDecomposition) -> AuxiliaryTree:
    nb = len(decomp.blocks)
    root = list(range(nb))

    def find(x: int) -> int:
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for v, bis in decomp.blocks_at.items():
        if len(bis) < 2:
            continue
        switch_blocks = [bi for bi in bis
                         if is_block_switch(graph, decomp.blocks[bi], v)]
        for bi in switch_blocks[1:]:
            root[find(switch_blocks[0])] = find(bi)

    reps = sorted({find(i) for i in range(nb)})
    node_index = {r: i for i, r in enumerate(reps)}
    node_of_block = {i: node_index[find(i)] for i in range(nb)}

    edges = []
    for v, bis in decomp.blocks_at.items():
        if len(bis) < 2:
            continue
        side_blocks = [bi for bi in bis
                       if not is_block_switch(graph, decomp.blocks[bi], v)]
        switch_blocks = [bi for bi in bis
                         if is_block_switch(graph, decomp.blocks[bi], v)]
        for sb in side_blocks:
            for tb in switch_blocks:
                edges.append((node_of_block[sb], node_of_block[tb]))
    edges = sorted(set(edges))
    indeg = [0] * len(reps)
    for _, dst in edges:
        indeg[dst] += 1
    return AuxiliaryTree(node_of_block, len(reps), tuple(edges), tuple(indeg))


def node_of_switch_vertex(graph: Digraph, decomp: BlockDecomposition,
                          aux: AuxiliaryTree, v: int) -> int:
    """Auxiliary-tree node of a vertex that is a switch of all its
    blocks (a source or sink of the whole subgraph always is)."""
    nodes = {aux.node_of_block[bi] for bi in decomp.blocks_at[v]
             if is_block_switch(graph, decomp.blocks[bi], v)}
    if len(nodes) != 1:
        raise StructureError(f"vertex {v} does not identify one group node")
    return nodes.pop()


# ---------------------------------------------------------------------------
# One-sided embeddability and construction
# ---------------------------------------------------------------------------


def _component_vertices(graph: Digraph, within: frozenset[int], start: int,
                        banned: frozenset[int]) -> frozenset[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in graph.und_adj[u]:
            if w in within and w not in banned and w not in seen:
                seen.add(w)
                stack.append(w)
    return frozenset(seen)


def hanging_subgraphs(graph: Digraph, within: frozenset[int], v: int,
                      exclude: frozenset[int]) -> list[frozenset[int]]:
    """Components at v inside ``within`` that avoid ``exclude``; each
    returned set includes v.  Deterministic order by smallest entry."""
    out = []
    taken: set[int] = set()
    for w in sorted(graph.und_adj[v]):
        if w not in within or w in exclude or w in taken:
            continue
        comp = _component_vertices(graph, within, w, frozenset({v}))
        taken |= comp
        if comp & exclude:
            continue
        out.append(comp | {v})
    return out


def _attaches_below(graph: Digraph, comp: frozenset[int], v: int) -> bool:
    """True when every arc between v and the component points into v."""
    dirs = {(w, v) in graph.arc_set()
            for w in graph.und_adj[v] if w in comp and w != v}
    if len(dirs) != 1:
        raise StructureError(f"vertex {v} is not a switch of a hanging subgraph")
    return dirs.pop()


def one_side_embeddable(graph: Digraph, root: int,
                        vertices: Optional[frozenset[int]] = None) -> bool:
    """Whether the subgraph embeds into every one-sided point set with
    the root (a source or sink of it) on the extreme point.

    Holds iff: no two-sided block, every nontrivial block has one
    source, one sink and a directed side, no vertex is a side vertex of
    two blocks, every auxiliary-tree node has at most one incoming edge,
    and the root's node has none.
    """
    verts = vertices if vertices is not None else frozenset(range(graph.n))
    if root not in verts:
        raise StructureError(f"root {root} not in vertex set")
    if len(verts) == 1:
        return True
    decomp = block_decompose(graph, verts)
    side_count: dict[int, int] = {}
    for b in decomp.blocks:
        if b.trivial:
            continue
        shape = block_shape(graph, b)
        if shape is None or not shape.one_sided:
            return False
        for side in shape.sides:
            for v in side:
                side_count[v] = side_count.get(v, 0) + 1
                if side_count[v] > 1:
                    return False
    aux = auxiliary_tree(graph, decomp)
    if any(d > 1 for d in aux.in_degree):
        return False
    try:
        root_node = node_of_switch_vertex(graph, decomp, aux, root)
    except StructureError:
        return False
    return aux.in_degree[root_node] == 0


def _layout_up(fwd: Digraph, rev: Digraph, verts: frozenset[int], root: int,
               slots: list[int], out: dict[int, int]) -> None:
    """Lay out a subgraph whose root is its source in the ``fwd`` frame:
    root on slots[0], each block branch above it, side vertices in side
    order, hanging subgraphs hugging their attachment vertex.

    Subgraphs hanging below an attachment vertex are laid out in the
    reversed frame with reversed slots, which mirrors the picture.
    """
    out[root] = slots[0]
    free = slots[1:]
    decomp = block_decompose(fwd, verts)
    for bi in decomp.blocks_at[root]:
        block = decomp.blocks[bi]
        if block.trivial:
            (other,) = block.vertices - {root}
            branch_order = [other]
        else:
            shape = block_shape(fwd, block)
            if shape is None or not shape.one_sided or shape.source != root:
                raise StructureError("block not one-side embeddable from its source")
            side = shape.sides[0] or shape.sides[1]
            branch_order = list(side) + [shape.sink]
        items = []
        size = 0
        for v in branch_order:
            hangs = hanging_subgraphs(fwd, verts, v, exclude=block.vertices)
            below = [c for c in hangs if _attaches_below(fwd, c, v)]
            above = [c for c in hangs if not _attaches_below(fwd, c, v)]
            items.append((v, below, above))
            size += 1 + sum(len(c) - 1 for c in below + above)
        chunk, free = free[:size], free[size:]
        pos = 0
        for v, below, above in items:
            below_span = sum(len(c) - 1 for c in below)
            v_slot = chunk[pos + below_span]
            for comp in below:
                span = len(comp) - 1
                sub = [v_slot] + list(reversed(chunk[pos:pos + span]))
                _layout_up(rev, fwd, comp, v, sub, out)
                pos += span
            out[v] = v_slot
            pos += 1
            for comp in above:
                span = len(comp) - 1
                sub = [v_slot] + chunk[pos:pos + span]
                _layout_up(fwd, rev, comp, v, sub, out)
                pos += span
    if free:
        raise StructureError("one-sided layout did not consume all points")


def construct_one_sided(graph: Digraph, root: int, slots: list[int],
                        vertices: Optional[frozenset[int]] = None,
                        check: bool = True) -> dict[int, int]:
    """Vertex -> slot map embedding a one-side-embeddable subgraph into
    a one-sided run of slots (ascending y).  The root must be a source
    of the subgraph (landing on the first slot) or a sink (last slot).
    """
    verts = vertices if vertices is not None else frozenset(range(graph.n))
    if len(slots) != len(verts):
        raise StructureError(f"{len(verts)} vertices vs {len(slots)} slots")
    if check and not one_side_embeddable(graph, root, verts):
        raise StructureError("subgraph is not one-side embeddable from this root")
    out: dict[int, int] = {}
    if len(verts) == 1:
        out[root] = slots[0]
        return out
    nbrs = [w for w in graph.und_adj[root] if w in verts]
    outgoing = [(root, w) in graph.arc_set() for w in nbrs]
    if all(outgoing):
        _layout_up(graph, graph.reversed(), verts, root, list(slots), out)
    elif not any(outgoing):
        rev = graph.reversed()
        _layout_up(rev, graph, verts, root, list(reversed(slots)), out)
    else:
        raise StructureError("root is neither a source nor a sink of the subgraph")
    return out
