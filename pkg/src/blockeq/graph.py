"""Validated block-graph representation and structural decomposition.

A block graph is a simple undirected graph in which every maximal
2-connected subgraph (block) is a clique.  Vertices are dense ids
0..n-1.  Graphs are immutable after construction; every operation here
is a pure function, so instances can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import (
    DisconnectedError,
    EdgelessError,
    NotABlockGraphError,
    SelfLoopError,
    UnknownVertexError,
)


def _biconnected_components(vertices, adj):
    """Blocks and cut vertices of the subgraph induced by `vertices`.

    Iterative Hopcroft-Tarjan on an edge stack.  Blocks come back as
    vertex frozensets; an isolated vertex yields a singleton block.
    """
    order = sorted(vertices)
    vset = set(order)
    disc = {}
    low = {}
    blocks = []
    cuts = set()
    timer = 0
    for root in order:
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        estack = []
        had_edge = False
        # frame: [vertex, parent, neighbor iterator, tree-child count]
        frames = [[root, -1, iter(sorted(w for w in adj[root] if w in vset)), 0]]
        while frames:
            frame = frames[-1]
            v = frame[0]
            parent = frame[1]
            moved = False
            for w in frame[2]:
                if w == parent:
                    continue
                if w not in disc:
                    had_edge = True
                    estack.append((v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    frame[3] += 1
                    frames.append([w, v, iter(sorted(x for x in adj[w] if x in vset)), 0])
                    moved = True
                    break
                if disc[w] < disc[v]:
                    had_edge = True
                    estack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if moved:
                continue
            frames.pop()
            if parent == -1:
                if frame[3] >= 2:
                    cuts.add(root)
                continue
            pframe = frames[-1]
            if low[v] < low[parent]:
                low[parent] = low[v]
            if low[v] >= disc[parent]:
                comp = set()
                while True:
                    e = estack.pop()
                    comp.add(e[0])
                    comp.add(e[1])
                    if e == (parent, v):
                        break
                blocks.append(frozenset(comp))
                if pframe[1] != -1:
                    cuts.add(parent)
        if estack:
            raise AssertionError("edge stack not drained")
        if not had_edge:
            blocks.append(frozenset((root,)))
    return blocks, cuts


class BlockGraph:
    """Immutable simple graph whose blocks are all cliques."""

    __slots__ = ("n", "_adj", "labels", "_decomp", "_levels")

    def __init__(self, n, edges, labels=None, _validated=False):
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n) or not (0 <= v < n):
                raise UnknownVertexError(f"edge ({u},{v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoopError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj = tuple(frozenset(s) for s in adj)
        self.labels = tuple(labels) if labels is not None else None
        self._decomp = None
        self._levels = None
        if not _validated:
            self._validate()

    def _validate(self):
        blocks, _ = _biconnected_components(range(self.n), self._adj)
        for b in blocks:
            bs = sorted(b)
            for i, u in enumerate(bs):
                for v in bs[i + 1:]:
                    if v not in self._adj[u]:
                        raise NotABlockGraphError((u, v))

    # -- basic accessors ------------------------------------------------

    def neighbors(self, v):
        self._check_vertex(v)
        return self._adj[v]

    def closed_neighborhood(self, v):
        self._check_vertex(v)
        return self._adj[v] | {v}

    def degree(self, v):
        self._check_vertex(v)
        return len(self._adj[v])

    def max_degree(self):
        return max((len(s) for s in self._adj), default=0)

    def edges(self):
        """Sorted list of edges as (u, v) with u < v."""
        return [(u, v) for u in range(self.n) for v in sorted(self._adj[u]) if u < v]

    def edge_count(self):
        return sum(len(s) for s in self._adj) // 2

    def adjacent(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def _check_vertex(self, v):
        if not (0 <= v < self.n):
            raise UnknownVertexError(f"vertex {v} outside 0..{self.n - 1}")

    # -- connectivity ---------------------------------------------------

    def connected_components(self):
        seen = set()
        comps = []
        for s in range(self.n):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self):
        return self.n <= 1 or len(self.connected_components()) == 1

    # -- induced-subgraph surgery ----------------------------------------

    def induced_subgraph(self, keep):
        """Induced subgraph on `keep`, re-densified.

        Returns (graph, id_map) where id_map sends old ids to new ones.
        Induced subgraphs of block graphs are block graphs, so the
        result skips re-validation.
        """
        kept = sorted(set(keep))
        for v in kept:
            self._check_vertex(v)
        id_map = {old: new for new, old in enumerate(kept)}
        edges = [
            (id_map[u], id_map[v])
            for u in kept
            for v in self._adj[u]
            if v in id_map and u < v
        ]
        labels = None
        if self.labels is not None:
            labels = [self.labels[v] for v in kept]
        return BlockGraph(len(kept), edges, labels, _validated=True), id_map

    def delete_vertices(self, removed):
        removed = set(removed)
        for v in removed:
            self._check_vertex(v)
        return self.induced_subgraph(v for v in range(self.n) if v not in removed)

    def delete_closed_neighborhood(self, v):
        return self.delete_vertices(self.closed_neighborhood(v))

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, BlockGraph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self):
        return hash((self.n, self._adj))

    def __repr__(self):
        return f"BlockGraph(n={self.n}, m={self.edge_count()})"


def from_edge_list(n, edges, labels=None):
    """Build and validate a BlockGraph; duplicate edges collapse."""
    return BlockGraph(n, edges, labels)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks, cut vertices, and their bipartite incidences."""

    blocks: tuple
    cut_vertices: frozenset
    tree_edges: tuple
    _vertex_blocks: dict = field(repr=False, hash=False, compare=False)

    def block_indices_of(self, v):
        return self._vertex_blocks.get(v, ())

    def is_cut(self, v):
        return v in self.cut_vertices

    def is_simplicial(self, v):
        return v not in self.cut_vertices

    def simplicial_vertices(self, n):
        return frozenset(v for v in range(n) if v not in self.cut_vertices)

    def pendant_block_indices(self):
        """Blocks containing exactly one cut vertex."""
        return tuple(
            i for i, b in enumerate(self.blocks) if len(b & self.cut_vertices) == 1
        )

    def max_block_size(self):
        return max((len(b) for b in self.blocks), default=0)


def decompose(g: BlockGraph) -> BlockDecomposition:
    """Biconnected decomposition; cached on the graph instance."""
    if g._decomp is None:
        raw, cuts = _biconnected_components(range(g.n), g._adj)
        blocks = tuple(sorted(raw, key=sorted))
        vertex_blocks = {}
        for i, b in enumerate(blocks):
            for v in b:
                vertex_blocks.setdefault(v, []).append(i)
        tree_edges = tuple(
            (i, v) for i, b in enumerate(blocks) for v in sorted(b) if v in cuts
        )
        g._decomp = BlockDecomposition(
            blocks,
            frozenset(cuts),
            tree_edges,
            {v: tuple(ix) for v, ix in vertex_blocks.items()},
        )
    return g._decomp


@dataclass(frozen=True)
class LevelAssignment:
    """Clique levels from iterative pendant peeling.

    `levels[i]` is the level of block i of decompose(g); `roots[i]` is
    the vertex through which block i hangs off the rest of the graph at
    peel time (None when the block was the final residual clique).  A
    final one-vertex residual gets no level and is recorded as
    `unleveled_singleton`.
    """

    levels: dict
    roots: dict
    unleveled_singleton: Optional[int]
    rounds: int

    def max_level(self):
        return max(self.levels.values(), default=0)

    def blocks_at_level(self, lv):
        return tuple(i for i, l in sorted(self.levels.items()) if l == lv)


def clique_levels(g: BlockGraph) -> LevelAssignment:
    """Assign peel levels to every block of a connected graph.

    Pendant cliques of the current residual get the current level, then
    their simplicial vertices are deleted and the process repeats.
    """
    if g._levels is not None:
        return g._levels
    if not g.is_connected():
        raise DisconnectedError("clique levels are defined for connected graphs")
    if g.edge_count() == 0:
        raise EdgelessError("clique levels require at least one edge")

    deco = decompose(g)
    index_of = {b: i for i, b in enumerate(deco.blocks)}
    levels = {}
    roots = {}
    unleveled = None
    alive = set(range(g.n))
    rounds = 0
    while alive:
        if len(alive) == 1:
            unleveled = next(iter(alive))
            break
        rounds += 1
        blocks_r, cuts_r = _biconnected_components(alive, g._adj)
        drop = set()
        for b in blocks_r:
            bcuts = b & cuts_r
            if len(bcuts) > 1:
                continue
            # pendant in the residual; a lone final clique has no cut vertex
            idx = index_of[b]
            levels[idx] = rounds
            roots[idx] = next(iter(bcuts)) if bcuts else None
            drop |= b - bcuts
        if not drop:
            raise AssertionError("peeling made no progress")
        alive -= drop
    g._levels = LevelAssignment(levels, roots, unleveled, rounds)
    return g._levels


@dataclass(frozen=True)
class CliqueStarStatus:
    is_star: bool
    single_clique: bool
    center: Optional[int]


def clique_star_status(g: BlockGraph) -> CliqueStarStatus:
    """Whether one vertex lies in every block (needs >= 2 blocks)."""
    if not g.is_connected():
        raise DisconnectedError("clique-star test is defined for connected graphs")
    deco = decompose(g)
    if len(deco.blocks) < 2:
        return CliqueStarStatus(False, True, None)
    common = set(deco.blocks[0])
    for b in deco.blocks[1:]:
        common &= b
        if not common:
            return CliqueStarStatus(False, False, None)
    center = next(iter(common))
    return CliqueStarStatus(True, False, center)


def is_clique_star(g: BlockGraph) -> bool:
    return clique_star_status(g).is_star


def delete_vertices(g: BlockGraph, removed: Iterable[int]):
    """Induced subgraph dropping `removed`, plus old-to-new id map."""
    return g.delete_vertices(removed)


def delete_closed_neighborhood(g: BlockGraph, v: int):
    """Induced subgraph dropping N[v], plus old-to-new id map."""
    return g.delete_closed_neighborhood(v)
