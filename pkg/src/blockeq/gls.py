"""Flower-gadget block graphs built from bin-packing instances.

A packing instance (item sizes A, part count k, capacity B with
sum(A) = k*B) turns into a block graph made of flowers: flower j >= 1
is a_j + 1 disjoint K_k cliques joined to a hub y_j, flower 0 plays the
same role for the capacity B, and y_0 is joined to every other hub.
This module builds those graphs, colors the uniform ones equitably with
any t >= k+2 colors via a count-matrix construction, and colors every
instance equitably with n+2 colors via product-maximizing recoloring.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Dict, Optional, Tuple

from . import invariants
from .errors import (
    AlgorithmInvariantError,
    CycleFoundError,
    InstanceInvariantError,
    NotEquitableAtFixpointError,
    NotUniformConsistentError,
    TBelowThresholdError,
    UnrealizableError,
)
from .graph import BlockGraph, decompose, from_edge_list

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BinPackingInstance:
    """Items A to be split into `parts` groups each summing to `capacity`."""

    item_sizes: Tuple[int, ...]
    parts: int
    capacity: int

    def __post_init__(self):
        object.__setattr__(self, "item_sizes", tuple(self.item_sizes))

    def validate(self):
        a, k, b = self.item_sizes, self.parts, self.capacity
        if not a or k < 1 or b < 1:
            raise InstanceInvariantError("need items, parts >= 1, capacity >= 1")
        if any(x < 1 for x in a):
            raise InstanceInvariantError("item sizes must be positive")
        if any(x > b for x in a):
            raise InstanceInvariantError("item size exceeds capacity")
        if sum(a) != k * b:
            raise InstanceInvariantError(f"sum(A)={sum(a)} != k*B={k * b}")

    def to_json_dict(self):
        return {"A": list(self.item_sizes), "k": self.parts, "B": self.capacity}

    @classmethod
    def from_json_dict(cls, d):
        return cls(tuple(d["A"]), int(d["k"]), int(d["B"]))


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map with colors drawn from 1..t."""

    color: dict
    t: int

    def class_sizes(self):
        sizes = [0] * self.t
        for c in self.color.values():
            sizes[c - 1] += 1
        return sizes

    def to_json_dict(self):
        return {
            "t": self.t,
            "colors": {str(v): c for v, c in sorted(self.color.items())},
            "class_sizes": self.class_sizes(),
        }


@dataclass(frozen=True)
class GlsGraph:
    """A flower graph plus the bookkeeping the coloring routines need."""

    graph: BlockGraph
    universal_vertices: Tuple[int, ...]
    flower_of: dict
    cliques: tuple  # cliques[j] = tuple of k-vertex tuples of flower j
    instance: BinPackingInstance

    @property
    def n_items(self):
        return len(self.instance.item_sizes)

    @property
    def part_count(self):
        return self.instance.parts


def build_gls(inst: BinPackingInstance, cross_check: bool = True) -> GlsGraph:
    """Construct the flower graph for a packing instance.

    Cross-checks the closed forms |V| = (k+1)(kB+n+1), omega = k+1 and
    alpha_min = n+1+kB against structural recomputation.
    """
    inst.validate()
    a, k, b = inst.item_sizes, inst.parts, inst.capacity
    n = len(a)
    edges = [(0, j) for j in range(1, n + 1)]
    flower_of = {j: j for j in range(n + 1)}
    cliques = []
    nxt = n + 1
    for j in range(n + 1):
        count = (b if j == 0 else a[j - 1]) + 1
        mine = []
        for _ in range(count):
            members = tuple(range(nxt, nxt + k))
            nxt += k
            mine.append(members)
            for v in members:
                flower_of[v] = j
                edges.append((j, v))
            edges.extend(
                (members[i], members[jj])
                for i in range(k)
                for jj in range(i + 1, k)
            )
        cliques.append(tuple(mine))
    g = from_edge_list(nxt, edges)

    expected_n = (k + 1) * (k * b + n + 1)
    if g.n != expected_n:
        raise AlgorithmInvariantError(f"|V|={g.n} != closed form {expected_n}")
    if cross_check:
        omega = decompose(g).max_block_size()
        if omega != k + 1:
            raise AlgorithmInvariantError(f"omega={omega} != k+1={k + 1}")
        amin = invariants.alpha_min(g).value
        if amin != n + 1 + k * b:
            raise AlgorithmInvariantError(f"alpha_min={amin} != n+1+kB={n + 1 + k * b}")
    return GlsGraph(g, tuple(range(n + 1)), flower_of, tuple(cliques), inst)


def equitably_k1_colorable_uniform(a: int, n: int, k: int, B: int) -> bool:
    """Decide equitable (k+1)-colorability of the uniform flower graph.

    For uniform instances the packing is solvable exactly when a | B,
    and packing solvability is equivalent to (k+1)-colorability.
    """
    _check_uniform(a, n, k, B)
    return B % a == 0


def _check_uniform(a, n, k, B):
    if min(a, n, k, B) < 1:
        raise NotUniformConsistentError("parameters must be positive")
    if a * n != k * B:
        raise NotUniformConsistentError(f"a*n={a * n} != k*B={k * B}")
    if a > B:
        raise NotUniformConsistentError("item size exceeds capacity")


@lru_cache(maxsize=64)
def _uniform_gls(a, n, k, B) -> GlsGraph:
    return build_gls(BinPackingInstance((a,) * n, k, B))


@dataclass(frozen=True)
class CountMatrix:
    """Per-(color, flower) vertex counts; rows are colors, columns flowers."""

    entries: tuple  # t rows x (n+1) columns
    a: int
    n: int
    k: int
    B: int
    t: int
    universal_colors: tuple  # color of the hub of each flower

    def entry(self, color, flower):
        return self.entries[color - 1][flower]

    def row_sums(self):
        return [sum(row) for row in self.entries]

    def col_sums(self):
        return [sum(row[j] for row in self.entries) for j in range(self.n + 1)]

    def caps(self):
        return [self.B + 1] + [self.a + 1] * self.n

    def flower_sizes(self):
        return [(self.B + 1) * self.k + 1] + [(self.a + 1) * self.k + 1] * self.n

    def violations(self, class_sizes):
        """All broken matrix invariants, as human-readable strings.

        Every column must be realizable inside its flower: the hub
        color appears exactly once (the hub itself), every other color
        at most cap times, and the column sums to the flower size.
        Together with the row sums these are exactly the conditions the
        flower realization needs.
        """
        bad = []
        caps = self.caps()
        if self.row_sums() != list(class_sizes):
            bad.append(f"row sums {self.row_sums()} != class sizes {list(class_sizes)}")
        if self.col_sums() != self.flower_sizes():
            bad.append(f"column sums {self.col_sums()} != flower sizes {self.flower_sizes()}")
        for j in range(self.n + 1):
            col = [row[j] for row in self.entries]
            if any(x > caps[j] for x in col):
                bad.append(f"column {j} exceeds cap {caps[j]}: {col}")
            uc = self.universal_colors[j]
            if col[uc - 1] != 1:
                bad.append(f"column {j} hub color {uc} has count {col[uc - 1]} != 1")
        return bad

    def to_json_dict(self):
        return {
            "t": self.t,
            "a": self.a,
            "n": self.n,
            "k": self.k,
            "B": self.B,
            "entries": [list(r) for r in self.entries],
            "universal_colors": list(self.universal_colors),
        }


def _equitable_class_sizes(total, t):
    q, r = divmod(total, t)
    return [q + 1] * r + [q] * (t - r)


class _ScheduleDeadlock(Exception):
    """The literal row schedule jammed; the exact fill takes over."""


def _exact_fill(t, cols, sizes, caps, colsize, uc):
    """Deterministic transportation fill of the count matrix.

    Hub cells are pinned to 1; every other cell of column x holds at
    most caps[x].  A straightforward augmenting-path flow saturates the
    row and column totals; any saturating matrix realizes to a proper
    equitable coloring, so this covers the color-count regimes where
    the row-by-row schedule of the source construction jams.
    """
    need_row = list(sizes)
    need_col = list(colsize)
    for x in range(cols):
        need_row[uc[x] - 1] -= 1
        need_col[x] -= 1
    if any(r < 0 for r in need_row):
        raise AlgorithmInvariantError("hub placements alone overfill a class")

    src, sink = 0, 1 + t + cols
    row_node = lambda i: 1 + i
    col_node = lambda x: 1 + t + x
    cap = {}

    def add(u, v, c):
        cap[(u, v)] = c
        cap.setdefault((v, u), 0)

    for i in range(t):
        add(src, row_node(i), need_row[i])
    for x in range(cols):
        add(col_node(x), sink, need_col[x])
        for i in range(t):
            add(row_node(i), col_node(x), 0 if uc[x] - 1 == i else caps[x])

    total = sum(need_row)
    flow = 0
    while flow < total:
        parent = {src: None}
        queue = [src]
        while queue and sink not in parent:
            u = queue.pop(0)
            for v in range(sink + 1):
                if v not in parent and cap.get((u, v), 0) > 0:
                    parent[v] = u
                    queue.append(v)
        if sink not in parent:
            raise AlgorithmInvariantError("no feasible count matrix exists")
        path = []
        v = sink
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        push = min(cap[e] for e in path)
        for u, v in path:
            cap[(u, v)] -= push
            cap[(v, u)] += push
        flow += push

    C = [[0] * cols for _ in range(t)]
    for x in range(cols):
        C[uc[x] - 1][x] = 1
        for i in range(t):
            if uc[x] - 1 != i:
                C[i][x] = cap[(col_node(x), row_node(i))]
    return C


def color_uniform(a: int, n: int, k: int, B: int, t: int):
    """Equitable t-coloring of the uniform flower graph, t >= k+2.

    Fills the count matrix row by row (largest classes first, hub
    colors spread evenly, column completion when a column has excluded
    t-k-1 colors), then realizes it flower by flower.  Returns
    (CountMatrix, Coloring).
    """
    _check_uniform(a, n, k, B)
    if t < k + 2:
        raise TBelowThresholdError(f"t={t} < k+2={k + 2}")

    gls = _uniform_gls(a, n, k, B)
    total = gls.graph.n
    sizes = _equitable_class_sizes(total, t)
    if n * (a + 1) < sizes[0]:
        raise AlgorithmInvariantError("n(a+1) < |V_1|; row 1 cannot be filled")

    cols = n + 1
    caps = [B + 1] + [a + 1] * n
    colsize = [(B + 1) * k + 1] + [(a + 1) * k + 1] * n

    # hub colors: y_0 gets 1, the rest take 2..t with ceil quotas
    uc = [0] * cols
    uc[0] = 1
    j = 1
    for ci, color in enumerate(range(2, t + 1)):
        quota = max(0, -((n - ci) // -(t - 1)))
        for _ in range(quota):
            if j > n:
                break
            uc[j] = color
            j += 1
    if j != n + 1:
        raise AlgorithmInvariantError("hub quotas did not cover all flowers")

    try:
        C = _schedule_fill(t, cols, sizes, caps, colsize, uc, a, k)
    except _ScheduleDeadlock:
        # large color counts on small flowers jam the literal row
        # schedule; the exact fill preserves every matrix invariant
        C = _exact_fill(t, cols, sizes, caps, colsize, uc)

    matrix = CountMatrix(tuple(tuple(row) for row in C), a, n, k, B, t, tuple(uc))
    bad = matrix.violations(sizes)
    if bad:
        raise AlgorithmInvariantError("; ".join(bad))

    coloring = _realize(gls, matrix)
    return matrix, coloring


def _schedule_fill(t, cols, sizes, caps, colsize, uc, a, k):
    """Row-by-row fill: largest class first, full flowers then a
    partial, each later row resuming after the column where the
    previous one stopped, topping up partial columns and completing
    columns that have excluded t-k-1 colors."""
    C = [[None] * cols for _ in range(t)]
    colsum = [0] * cols
    C[0][0] = 1
    colsum[0] += 1
    for x in range(1, cols):
        C[uc[x] - 1][x] = 1
        colsum[x] += 1

    pending: Dict[int, int] = {}  # column -> top-up value waiting for a free cell

    def complete_excluded_columns():
        for x in range(cols):
            zeros = sum(1 for i in range(t) if C[i][x] == 0)
            if zeros != t - k - 1:
                continue
            if any(C[i][x] is None for i in range(t)):
                if x in pending:
                    raise _ScheduleDeadlock(f"column {x} completion clashes with top-up")
                for i in range(t):
                    if C[i][x] is None:
                        C[i][x] = caps[x]
                        colsum[x] += caps[x]
                if colsum[x] != colsize[x]:
                    raise _ScheduleDeadlock(f"column {x} completion oversums")

    # row 1: hub unit plus full flowers 1..l1-1 and a partial at l1
    target = sizes[0]
    l1 = -((target - 1) // -(a + 1)) if target > 1 else 0
    cursor = 0
    for x in range(1, l1):
        C[0][x] = a + 1
        colsum[x] += a + 1
    rem1 = target - 1 - max(0, l1 - 1) * (a + 1)
    if l1 >= 1 and rem1 > 0:
        C[0][l1] = rem1
        colsum[l1] += rem1
        cursor = l1
        if rem1 < caps[l1] and colsum[l1] < colsize[l1]:
            pending[l1] = caps[l1] - rem1
    elif l1 >= 1:
        cursor = l1 - 1
    for x in range(cols):
        if C[0][x] is None:
            C[0][x] = 0
    complete_excluded_columns()

    for row in range(1, t):
        target = sizes[row]
        s = sum(x for x in C[row] if x is not None)
        if s > target:
            raise _ScheduleDeadlock(f"row {row + 1} pre-filled beyond {target}")
        # top-ups land in the first later row with a free cell and budget
        for x in sorted(pending):
            if C[row][x] is None and s + pending[x] <= target:
                val = pending.pop(x)
                C[row][x] = val
                colsum[x] += val
                s += val
        last = None
        for step in range(cols):
            if s == target:
                break
            x = (cursor + 1 + step) % cols
            if C[row][x] is not None:
                continue
            m = min(caps[x], colsize[x] - colsum[x], target - s)
            if m <= 0:
                C[row][x] = 0
                continue
            C[row][x] = m
            colsum[x] += m
            s += m
            last = (x, m)
        if s != target:
            raise _ScheduleDeadlock(f"row {row + 1} ended short: {s} < {target}")
        for x in range(cols):
            if C[row][x] is None:
                C[row][x] = 0
        if last is not None:
            x, m = last
            cursor = x
            if m < caps[x] and colsum[x] < colsize[x]:
                pending[x] = caps[x] - m
        complete_excluded_columns()

    if pending:
        raise _ScheduleDeadlock(f"unplaced top-ups: {pending}")
    return C


def realize_flower(counts, a: int, k: int, universal_color: int):
    """Turn one flower's per-color counts into per-clique color sets.

    `counts` maps color -> vertex count inside the flower, hub unit
    included; the flower has a+1 cliques whose non-hub part has k
    vertices.  Greedy largest-remaining-first, ties to the smaller
    color.
    """
    rem = {c: int(v) for c, v in dict(counts).items() if v > 0}
    if rem.get(universal_color, 0) < 1:
        raise UnrealizableError("hub color absent from its own flower")
    rem[universal_color] -= 1
    if rem[universal_color] != 0:
        raise UnrealizableError("hub color reused inside its own flower")
    del rem[universal_color]
    if sum(rem.values()) != k * (a + 1):
        raise UnrealizableError(
            f"non-hub counts sum {sum(rem.values())} != k(a+1)={k * (a + 1)}"
        )
    if any(v > a + 1 for v in rem.values()):
        raise UnrealizableError("some color exceeds the per-flower cap a+1")
    out = []
    for _ in range(a + 1):
        live = sorted((c for c, v in rem.items() if v > 0), key=lambda c: (-rem[c], c))
        if len(live) < k:
            raise UnrealizableError("fewer than k colors left for a clique")
        chosen = sorted(live[:k])
        for c in chosen:
            rem[c] -= 1
        out.append(tuple(chosen))
    if any(v for v in rem.values()):
        raise UnrealizableError("counts left over after all cliques")
    return out


def _realize(gls: GlsGraph, matrix: CountMatrix) -> Coloring:
    color = {}
    for j in range(matrix.n + 1):
        uc = matrix.universal_colors[j]
        color[gls.universal_vertices[j]] = uc
        counts = {c: matrix.entry(c, j) for c in range(1, matrix.t + 1)}
        per_clique = realize_flower(
            counts, matrix.B if j == 0 else matrix.a, matrix.k, uc
        )
        for members, chosen in zip(gls.cliques[j], per_clique):
            for v, c in zip(members, chosen):
                color[v] = c
    return Coloring(color, matrix.t)


# -- equitable (n+2)-coloring by product-maximizing recoloring -----------


def color_nplus2(g: GlsGraph, stats: Optional[dict] = None) -> Coloring:
    """Equitable (n+2)-coloring of any flower graph.

    Works on the auxiliary graph with all hubs joined into a clique,
    starts from a greedy proper coloring, and commits only recolorings
    that strictly increase the product of class sizes.  The fixpoint is
    equitable; if it ever were not, the gap is surfaced as an error.
    """
    n = g.n_items
    t = n + 2
    nv = g.graph.n
    hubs = list(g.universal_vertices)
    adj = [set(g.graph.neighbors(v)) for v in range(nv)]
    for u in hubs:
        for w in hubs:
            if u != w:
                adj[u].add(w)

    cliques = [tuple(hubs)]
    for j, flower in enumerate(g.cliques):
        hub = g.universal_vertices[j]
        cliques.extend((hub,) + members for members in flower)
    clique_of = {}
    for ci, members in enumerate(cliques[1:], start=1):
        for v in members[1:]:
            clique_of[v] = ci
    simplicials = sorted(clique_of)

    # least-loaded feasible class keeps every class nonempty, so the
    # class-size product starts positive and can certify termination
    col = {}
    sizes = [0] * (t + 1)
    for v in sorted(range(nv), key=lambda u: (-len(adj[u]), u)):
        used = {col[w] for w in adj[v] if w in col}
        free = [c for c in range(1, t + 1) if c not in used]
        if not free:
            raise AlgorithmInvariantError("greedy start needed more than n+2 colors")
        c = min(free, key=lambda c: (sizes[c], c))
        col[v] = c
        sizes[c] += 1

    def present(ci):
        return {col[v] for v in cliques[ci]}

    def recolor(v, c):
        sizes[col[v]] -= 1
        sizes[c] += 1
        col[v] = c

    def generic_move():
        # move a simplicial vertex into a missing class at least 2 smaller
        for w in simplicials:
            cw = col[w]
            pres = present(clique_of[w])
            for c in range(1, t + 1):
                if c not in pres and sizes[c] <= sizes[cw] - 2:
                    recolor(w, c)
                    return True
        return False

    def transfer_move():
        # two-clique transfer: shift one unit from a big class x to a
        # small class y through an intermediate color carried between
        # a clique missing y and a clique missing that intermediate
        order = sorted(range(1, t + 1), key=lambda c: (-sizes[c], c))
        for x in order:
            for y in reversed(order):
                if x == y or sizes[x] - sizes[y] < 2:
                    continue
                for ci2, members2 in enumerate(cliques):
                    if y in present(ci2):
                        continue
                    simp2 = [v for v in members2 if clique_of.get(v) == ci2]
                    for cT in sorted({col[v] for v in simp2} - {x, y}):
                        for ci1, members1 in enumerate(cliques):
                            if cT in present(ci1):
                                continue
                            wx = next(
                                (v for v in members1
                                 if clique_of.get(v) == ci1 and col[v] == x),
                                None,
                            )
                            if wx is None:
                                continue
                            u = next(v for v in simp2 if col[v] == cT)
                            recolor(wx, cT)
                            recolor(u, y)
                            return True
        return False

    def cascade_move():
        # product-neutral slide of a simplicial vertex, kept only if it
        # unlocks a strictly improving follow-up
        for w in simplicials:
            cw = col[w]
            pres = present(clique_of[w])
            for c in range(1, t + 1):
                if c in pres or sizes[c] != sizes[cw] - 1:
                    continue
                recolor(w, c)
                if generic_move() or transfer_move():
                    return True
                recolor(w, cw)
        return False

    products = [math.prod(sizes[1:])]
    while generic_move() or transfer_move() or cascade_move():
        p = math.prod(sizes[1:])
        if p <= products[-1]:
            raise AlgorithmInvariantError("committed move did not increase the product")
        products.append(p)
    if stats is not None:
        stats["products"] = products
        stats["moves"] = len(products) - 1

    live = sizes[1:]
    log.debug("fixpoint class sizes %s (window %d)", sorted(live), max(live) - min(live))
    if max(live) - min(live) > 2:
        raise AlgorithmInvariantError("fixpoint breaks the two-unit window claim")
    for members in cliques:
        seen = [col[v] for v in members]
        if len(set(seen)) != len(seen):
            raise AlgorithmInvariantError("fixpoint coloring not proper")
    coloring = Coloring(dict(col), t)
    if max(live) - min(live) > 1:
        raise NotEquitableAtFixpointError(coloring, live)
    return coloring


class ComponentKind(Enum):
    ISOLATED_VERTEX = "isolated_vertex"
    ISOLATED_EDGE = "isolated_edge"
    STAR = "star"
    NON_STAR_TREE = "non_star_tree"


def alternating_components(g: BlockGraph, coloring: Coloring, i: int, j: int):
    """Classify the components induced by two color classes.

    In a properly colored block graph these are always trees; a cycle
    would mean the coloring is broken, and raises.
    """
    if i == j:
        raise ValueError("need two distinct colors")
    keep = {v for v, c in coloring.color.items() if c in (i, j)}
    comps = []
    seen = set()
    for s in sorted(keep):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.neighbors(u):
                if w in keep and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        ne = sum(1 for u in comp for w in g.neighbors(u) if w in comp) // 2
        if ne != len(comp) - 1:
            raise CycleFoundError(f"classes {i},{j} induce a cycle on {sorted(comp)}")
        if len(comp) == 1:
            kind = ComponentKind.ISOLATED_VERTEX
        elif len(comp) == 2:
            kind = ComponentKind.ISOLATED_EDGE
        else:
            degs = {u: sum(1 for w in g.neighbors(u) if w in comp) for u in comp}
            center_like = sum(1 for d in degs.values() if d > 1)
            kind = ComponentKind.STAR if center_like == 1 else ComponentKind.NON_STAR_TREE
        comps.append((frozenset(comp), kind))
    return comps
