"""Independent brute-force ground truth.

Everything here is deliberately naive or exhaustively exact so that it
shares no code path with the fast implementations in `invariants` and
`gls`: subset enumeration for independence numbers and cluster
deletion, backtracking with sound pruning for equitable colorability,
branch and bound for packing, and a clique-attachment generator of all
small connected block graphs up to isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterator, Optional

from .errors import (
    ColorOutOfRangeError,
    SearchBudgetExceededError,
    TooLargeError,
    UncoloredVertexError,
)
from .gls import BinPackingInstance, Coloring
from .graph import BlockGraph, decompose

BRUTE_CAP = 20


@dataclass(frozen=True)
class CheckResult:
    proper: bool
    equitable: bool


def check_coloring(g: BlockGraph, coloring: Coloring) -> CheckResult:
    """Properness and equitability of a complete coloring."""
    col = coloring.color
    t = coloring.t
    for v in range(g.n):
        if v not in col:
            raise UncoloredVertexError(f"vertex {v} has no color")
        if not (1 <= col[v] <= t):
            raise ColorOutOfRangeError(f"color {col[v]} outside 1..{t}")
    proper = all(col[u] != col[v] for u, v in g.edges())
    sizes = [0] * t
    for v in range(g.n):
        sizes[col[v] - 1] += 1
    lo, hi = g.n // t, -(g.n // -t)
    equitable = all(s in (lo, hi) for s in sizes)
    return CheckResult(proper, equitable)


def _degeneracy_order(g: BlockGraph):
    """Vertices in removal order of repeated minimum degree."""
    deg = {v: g.degree(v) for v in range(g.n)}
    alive = set(range(g.n))
    out = []
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        out.append(v)
        alive.remove(v)
        for w in g.neighbors(v):
            if w in alive:
                deg[w] -= 1
    return out


def _true_twin_predecessors(g: BlockGraph, order):
    """For each vertex, its nearest earlier vertex with the same closed
    neighborhood (adjacent interchangeable twins); used to break color
    symmetry inside cliques."""
    pos = {v: i for i, v in enumerate(order)}
    closed = [g.closed_neighborhood(v) for v in range(g.n)]
    prev = {}
    groups = {}
    for v in range(g.n):
        groups.setdefault(closed[v], []).append(v)
    for members in groups.values():
        if len(members) < 2:
            continue
        members.sort(key=lambda v: pos[v])
        for earlier, later in zip(members, members[1:]):
            prev[later] = earlier
    return prev


def exact_equitable_colorable(
    g: BlockGraph, t: int, node_budget: Optional[int] = None
):
    """Exact decision of equitable t-colorability, with witness.

    Backtracking in reverse degeneracy order under per-class caps, a
    floor-deficit prune, first-empty-class and twin symmetry breaking.
    Raises SearchBudgetExceededError when the node cap is hit, so a
    'gave up' is never conflated with a 'no'.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    n = g.n
    if n == 0:
        return True, Coloring({}, t)
    floor, extra = divmod(n, t)
    cap_hi = floor + 1 if extra else floor
    order = list(reversed(_degeneracy_order(g)))
    twin_prev = _true_twin_predecessors(g, order)
    counts = [0] * t
    assign = {}
    deficit = floor * t  # sum over classes of max(0, floor - count)
    over = 0  # classes at floor+1
    nodes = 0

    def rec(idx):
        nonlocal nodes, deficit, over
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise SearchBudgetExceededError(f"budget {node_budget} exhausted")
        if idx == n:
            return True
        v = order[idx]
        forbidden = {assign[w] for w in g.neighbors(v) if w in assign}
        lo = 0
        tw = twin_prev.get(v)
        if tw is not None and tw in assign:
            lo = assign[tw]
        remaining = n - idx - 1
        seen_empty = False
        for c in range(lo, t):
            if counts[c] == 0:
                if seen_empty:
                    break
                seen_empty = True
            if c in forbidden or counts[c] >= cap_hi:
                continue
            if counts[c] == floor and extra and over == extra:
                continue
            d_dec = 1 if counts[c] < floor else 0
            if deficit - d_dec > remaining:
                continue
            counts[c] += 1
            deficit -= d_dec
            was_over = counts[c] == floor + 1
            if was_over:
                over += 1
            assign[v] = c
            if rec(idx + 1):
                return True
            del assign[v]
            if was_over:
                over -= 1
            deficit += d_dec
            counts[c] -= 1
        return False

    if rec(0):
        return True, Coloring({v: c + 1 for v, c in assign.items()}, t)
    return False, None


@dataclass(frozen=True)
class SpectrumReport:
    """Which color counts admit an equitable coloring."""

    n: int
    t_cap: int
    feasible_ts: frozenset
    unknown_ts: frozenset
    chi_eq: Optional[int]
    chi_eq_star: Optional[int]
    gap_free: Optional[bool]
    complete: bool

    def to_json_dict(self):
        return {
            "n": self.n,
            "t_cap": self.t_cap,
            "feasible_ts": sorted(self.feasible_ts),
            "unknown_ts": sorted(self.unknown_ts),
            "chi_eq": self.chi_eq,
            "chi_eq_star": self.chi_eq_star,
            "gap_free": self.gap_free,
            "complete": self.complete,
        }


def spectrum(g: BlockGraph, t_cap: Optional[int] = None, node_budget: Optional[int] = None) -> SpectrumReport:
    """Scan t = 1..t_cap with the exact solver."""
    cap = g.n if t_cap is None else t_cap
    if cap > g.n:
        raise ValueError("t_cap exceeds the vertex count")
    feasible = set()
    unknown = set()
    for t in range(1, cap + 1):
        try:
            ok, _ = exact_equitable_colorable(g, t, node_budget)
        except SearchBudgetExceededError:
            unknown.add(t)
            continue
        if ok:
            feasible.add(t)
    complete = not unknown and cap == g.n
    chi_eq = min(feasible) if feasible else None
    chi_star = None
    if complete and feasible:
        chi_star = cap
        while chi_star - 1 in feasible and chi_star - 1 >= 1:
            chi_star -= 1
    gap_free = (chi_eq == chi_star) if (chi_eq is not None and chi_star is not None) else None
    return SpectrumReport(
        g.n, cap, frozenset(feasible), frozenset(unknown), chi_eq, chi_star, gap_free, complete
    )


def exact_chi_eq(g: BlockGraph, node_budget: Optional[int] = None) -> int:
    """Smallest t admitting an equitable coloring (t = n always works)."""
    for t in range(1, g.n + 1):
        ok, _ = exact_equitable_colorable(g, t, node_budget)
        if ok:
            return t
    raise AssertionError("t = n is always feasible")


# -- naive independence and cluster numbers ------------------------------


def _check_cap(g, cap):
    if g.n > cap:
        raise TooLargeError(f"brute force capped at {cap} vertices, got {g.n}")


def brute_alpha(g: BlockGraph, cap: int = BRUTE_CAP) -> int:
    """Maximum independent set size by include/exclude enumeration."""
    _check_cap(g, cap)
    masks = [0] * g.n
    for u, v in g.edges():
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    best = 0

    def rec(v, blocked, size):
        nonlocal best
        if size + (g.n - v) <= best:
            return
        if v == g.n:
            best = max(best, size)
            return
        if not (blocked >> v) & 1:
            rec(v + 1, blocked | masks[v], size + 1)
        rec(v + 1, blocked, size)

    rec(0, 0, 0)
    return best


def brute_alpha_with(g: BlockGraph, v: int, cap: int = BRUTE_CAP) -> int:
    """Maximum independent set containing v, enumerated directly."""
    _check_cap(g, cap)
    g._check_vertex(v)
    masks = [0] * g.n
    for a, b in g.edges():
        masks[a] |= 1 << b
        masks[b] |= 1 << a
    best = 0

    def rec(u, blocked, size):
        nonlocal best
        if size + (g.n - u) <= best:
            return
        if u == g.n:
            best = max(best, size)
            return
        if u == v:
            rec(u + 1, blocked, size)
            return
        if not (blocked >> u) & 1:
            rec(u + 1, blocked | masks[u], size + 1)
        rec(u + 1, blocked, size)

    # v is committed up front; its neighbors start blocked
    rec(0, masks[v], 1)
    return best


def brute_dc(g: BlockGraph, cap: int = BRUTE_CAP) -> int:
    """Distance to cluster by subset enumeration, cluster = no induced P_3."""
    _check_cap(g, cap)
    verts = list(range(g.n))
    for size in range(g.n + 1):
        for sub in combinations(verts, size):
            keep = set(verts) - set(sub)
            if _no_induced_p3(g, keep):
                return size
    raise AssertionError("unreachable")


def _no_induced_p3(g, keep):
    for v in keep:
        nbrs = [w for w in g.neighbors(v) if w in keep]
        for i, a in enumerate(nbrs):
            row = g.neighbors(a)
            for b in nbrs[i + 1:]:
                if b not in row:
                    return False
    return True


def bin_packing_decide(inst: BinPackingInstance, cap: int = BRUTE_CAP):
    """Exact packing decision with a partition witness.

    Branch and bound over items in descending size; parts with equal
    load are interchangeable and tried once.
    """
    inst.validate()
    items = sorted(range(len(inst.item_sizes)), key=lambda i: -inst.item_sizes[i])
    if len(items) > cap:
        raise TooLargeError(f"packing capped at {cap} items")
    k, b = inst.parts, inst.capacity
    loads = [0] * k
    placed = [[] for _ in range(k)]

    def rec(pos):
        if pos == len(items):
            return True
        item = items[pos]
        size = inst.item_sizes[item]
        tried = set()
        for p in range(k):
            if loads[p] in tried or loads[p] + size > b:
                continue
            tried.add(loads[p])
            loads[p] += size
            placed[p].append(item)
            if rec(pos + 1):
                return True
            placed[p].pop()
            loads[p] -= size
        return False

    if rec(0):
        return True, [sorted(p) for p in placed]
    return False, None


# -- canonical forms and exhaustive enumeration ---------------------------


def canonical_form(g: BlockGraph) -> bytes:
    """Isomorphism-invariant canonical encoding of a block graph.

    A block graph is determined by its block-cut forest with block
    sizes, so the canonical string is the classic rooted-tree encoding
    of that forest, rooted at tree centers.
    """
    deco = decompose(g)
    node_children = {}

    def encode(node, parent, neigh):
        kids = sorted(encode(w, node, neigh) for w in neigh[node] if w != parent)
        label = f"B{len(deco.blocks[node[1]])}" if node[0] == "B" else "C"
        return label + "(" + ",".join(kids) + ")"

    comps = []
    assigned = set()
    for comp in sorted(g.connected_components(), key=sorted):
        bidx = sorted({i for v in comp for i in deco.block_indices_of(v)})
        nodes = [("B", i) for i in bidx] + [
            ("C", v) for v in sorted(comp & deco.cut_vertices)
        ]
        neigh = {nd: [] for nd in nodes}
        for i in bidx:
            for v in deco.blocks[i] & deco.cut_vertices:
                neigh[("B", i)].append(("C", v))
                neigh[("C", v)].append(("B", i))
        centers = _tree_centers(nodes, neigh)
        comps.append(min(encode(c, None, neigh) for c in centers))
        assigned |= comp
    return "|".join(sorted(comps)).encode("ascii")


def _tree_centers(nodes, neigh):
    if len(nodes) == 1:
        return list(nodes)
    degree = {nd: len(neigh[nd]) for nd in nodes}
    leaves = [nd for nd in nodes if degree[nd] <= 1]
    remaining = len(nodes)
    while remaining > 2:
        nxt = []
        for leaf in leaves:
            for w in neigh[leaf]:
                degree[w] -= 1
                if degree[w] == 1:
                    nxt.append(w)
            degree[leaf] = 0
            remaining -= 1
        leaves = nxt
    return leaves


def isomorphic_brute(g1: BlockGraph, g2: BlockGraph, cap: int = 8) -> bool:
    """Isomorphism by permutation search; test-scale only."""
    if g1.n > cap or g2.n > cap:
        raise TooLargeError(f"isomorphism search capped at {cap} vertices")
    if g1.n != g2.n or g1.edge_count() != g2.edge_count():
        return False
    if sorted(g1.degree(v) for v in range(g1.n)) != sorted(
        g2.degree(v) for v in range(g2.n)
    ):
        return False
    e1 = set(g1.edges())
    for perm in permutations(range(g2.n)):
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in e1 for u, v in g2.edges()):
            return True
    return False


def _attach_clique_raw(g: BlockGraph, anchor: int, size: int) -> BlockGraph:
    fresh = list(range(g.n, g.n + size - 1))
    group = [anchor] + fresh
    edges = g.edges() + [
        (group[i], group[j]) for i in range(len(group)) for j in range(i + 1, len(group))
    ]
    return BlockGraph(g.n + size - 1, edges, _validated=True)


def enumerate_block_graphs(
    n_max: int, verify_collisions: bool = False
) -> Iterator[BlockGraph]:
    """All connected block graphs up to n_max vertices, one per class.

    Grows graphs by attaching a fresh clique at an existing vertex;
    every connected block graph arises this way because removing a
    pendant clique leaves a smaller connected block graph.  Duplicates
    are dropped via canonical_form; with verify_collisions each drop is
    double-checked by explicit isomorphism search.
    """
    if n_max < 1:
        return
    k1 = BlockGraph(1, [], _validated=True)
    by_size = {1: {canonical_form(k1): k1}}
    yield k1
    for n in range(1, n_max):
        if n not in by_size:
            break
        for g in list(by_size[n].values()):
            for anchor in range(g.n):
                for size in range(2, n_max - n + 2):
                    cand = _attach_clique_raw(g, anchor, size)
                    key = canonical_form(cand)
                    bucket = by_size.setdefault(cand.n, {})
                    if key in bucket:
                        if verify_collisions and not isomorphic_brute(bucket[key], cand):
                            raise AssertionError("canonical collision on non-isomorphic pair")
                        continue
                    bucket[key] = cand
                    yield cand


def is_block_graph_by_filter(g: BlockGraph) -> bool:
    """Block-graph test independent of the decomposition code.

    Uses the forbidden-subgraph characterization: no induced cycle of
    length >= 4 and no induced diamond.
    """
    n = g.n
    for quad in combinations(range(n), 4):
        sub = [(u, v) for u, v in combinations(quad, 2) if g.adjacent(u, v)]
        if len(sub) == 5:
            return False  # diamond
    for size in range(4, n + 1):
        for sub in combinations(range(n), size):
            degs = {v: sum(1 for w in sub if g.adjacent(v, w)) for v in sub}
            if all(d == 2 for d in degs.values()) and _is_single_cycle(g, sub):
                return False
    return True


def _is_single_cycle(g, sub):
    sub = set(sub)
    start = next(iter(sub))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w in sub and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == sub


def count_block_graphs_by_filter(n: int) -> int:
    """Count connected block graphs on exactly n labeled-free vertices
    by filtering all 2^(n choose 2) graphs; the independent cross-check
    for the attachment enumerator."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if (mask >> i) & 1]
        try:
            g = BlockGraph(n, edges, _validated=True)
        except Exception:
            continue
        if not g.is_connected():
            continue
        if not is_block_graph_by_filter(g):
            continue
        seen.add(canonical_form(g))
    return len(seen)
