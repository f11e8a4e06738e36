"""Structural parameters of block graphs.

Exact independence numbers via the simplicial greedy (correct on
chordal graphs), distance to cluster by bounded exhaustive search, and
the AIS / v-AIS membership tests.  The deliberately naive counterparts
live in `oracle` so the two code paths stay independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import (
    EmptyGraphError,
    TooLargeError,
    WIsInClosedNeighborhoodError,
)
from .graph import BlockGraph, decompose

DC_DEFAULT_CAP = 20


def _alpha_peel(adj, alive):
    """Greedy maximum-independent-set size on a mutable residual.

    Repeatedly takes a simplicial vertex and deletes its closed
    neighborhood; exact because the residual stays chordal.
    """
    alive = set(alive)
    count = 0
    while alive:
        simp = None
        for v in sorted(alive):
            nbrs = [w for w in adj[v] if w in alive]
            ok = True
            for i, a in enumerate(nbrs):
                row = adj[a]
                for b in nbrs[i + 1:]:
                    if b not in row:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                simp = v
                break
        if simp is None:
            raise AssertionError("chordal residual must contain a simplicial vertex")
        count += 1
        alive -= {w for w in adj[simp] if w in alive}
        alive.discard(simp)
    return count


def alpha(g: BlockGraph) -> int:
    """Size of a largest independent set."""
    return _alpha_peel(g._adj, range(g.n))


def alpha_with(g: BlockGraph, v: int) -> int:
    """Size of a largest independent set containing v."""
    g._check_vertex(v)
    return 1 + _alpha_peel(g._adj, set(range(g.n)) - g.closed_neighborhood(v))


@dataclass(frozen=True)
class AlphaMinResult:
    value: int
    witness: int


def alpha_min(g: BlockGraph) -> AlphaMinResult:
    """Minimum over vertices of alpha_with, plus a witness.

    For a connected graph with a cut vertex the minimum is attained on
    a cut vertex, so only cut vertices plus one simplicial vertex are
    scanned.  Ties break toward the smallest scanned id.
    """
    if g.n == 0:
        raise EmptyGraphError("alpha_min of the empty graph")
    deco = decompose(g)
    if g.is_connected() and deco.cut_vertices:
        candidates = sorted(deco.cut_vertices)
        simplicial = [v for v in range(g.n) if v not in deco.cut_vertices]
        if simplicial:
            candidates = sorted(candidates + [simplicial[0]])
    else:
        candidates = range(g.n)
    best = None
    witness = None
    for v in candidates:
        a = alpha_with(g, v)
        if best is None or a < best:
            best, witness = a, v
    return AlphaMinResult(best, witness)


@dataclass(frozen=True)
class DcResult:
    value: int
    dc_set: frozenset


def _is_cluster(adj, alive):
    """True when the residual is a disjoint union of cliques."""
    alive = set(alive)
    seen = set()
    for s in alive:
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w in alive and w not in comp:
                    comp.add(w)
                    stack.append(w)
        seen |= comp
        m = sum(1 for u in comp for w in adj[u] if w in comp) // 2
        k = len(comp)
        if m != k * (k - 1) // 2:
            return False
    return True


def dc_exact(g: BlockGraph, cap: int = DC_DEFAULT_CAP) -> DcResult:
    """Smallest vertex set whose removal leaves disjoint cliques.

    Increasing-size subset enumeration; first lexicographic witness.
    Raises TooLargeError above `cap` so sweeps can skip honestly.
    """
    if g.n > cap:
        raise TooLargeError(f"dc enumeration capped at {cap} vertices, got {g.n}")
    everything = set(range(g.n))
    for size in range(g.n + 1):
        for sub in combinations(range(g.n), size):
            if _is_cluster(g._adj, everything - set(sub)):
                return DcResult(size, frozenset(sub))
    raise AssertionError("deleting all vertices always yields a cluster")


def is_ais(g: BlockGraph, w: int) -> bool:
    """Whether w lies in every maximum independent set.

    An isolated vertex always does; otherwise w qualifies iff deleting
    N[w] leaves strictly more independence than deleting N[w_j] for
    every neighbor w_j.
    """
    g._check_vertex(w)
    nbrs = g.neighbors(w)
    if not nbrs:
        return True
    everything = set(range(g.n))
    a_w = _alpha_peel(g._adj, everything - g.closed_neighborhood(w))
    for u in sorted(nbrs):
        if a_w <= _alpha_peel(g._adj, everything - g.closed_neighborhood(u)):
            return False
    return True


def is_v_ais(g: BlockGraph, v: int, w: int) -> bool:
    """Whether w lies in every maximum independent set containing v."""
    g._check_vertex(v)
    g._check_vertex(w)
    if w in g.closed_neighborhood(v):
        raise WIsInClosedNeighborhoodError(f"w={w} lies in N[{v}]")
    residual, id_map = g.delete_vertices(g.closed_neighborhood(v))
    return is_ais(residual, id_map[w])


@dataclass(frozen=True)
class ParamReport:
    """All structural parameters plus the bound window they induce."""

    n: int
    alpha: int
    alpha_min: int
    alpha_min_witness: int
    omega: int
    delta: int
    dc: Optional[int]
    dc_set: Optional[frozenset]
    lower_bound: int
    window: tuple
    hs_upper: int

    def to_json_dict(self):
        return {
            "n": self.n,
            "alpha": self.alpha,
            "alpha_min": self.alpha_min,
            "alpha_min_witness": self.alpha_min_witness,
            "omega": self.omega,
            "delta": self.delta,
            "dc": self.dc,
            "dc_set": sorted(self.dc_set) if self.dc_set is not None else None,
            "lower_bound": self.lower_bound,
            "window": list(self.window),
            "hs_upper": self.hs_upper,
        }


def counting_lower_bound(n: int, amin: int, omega: int) -> int:
    """max(omega, ceil((n+1)/(alpha_min+1))), in exact integers."""
    return max(omega, -((n + 1) // -(amin + 1)))


def bounds_report(g: BlockGraph, dc_cap: int = DC_DEFAULT_CAP) -> ParamReport:
    """Fill every parameter field; dc stays absent above its cap."""
    if g.n == 0:
        raise EmptyGraphError("bounds_report of the empty graph")
    am = alpha_min(g)
    omega = decompose(g).max_block_size()
    try:
        dc = dc_exact(g, cap=dc_cap)
        dc_value, dc_set = dc.value, dc.dc_set
    except TooLargeError:
        dc_value, dc_set = None, None
    lb = counting_lower_bound(g.n, am.value, omega)
    return ParamReport(
        n=g.n,
        alpha=alpha(g),
        alpha_min=am.value,
        alpha_min_witness=am.witness,
        omega=omega,
        delta=g.max_degree(),
        dc=dc_value,
        dc_set=dc_set,
        lower_bound=lb,
        window=(lb, lb + 1),
        hs_upper=g.max_degree() + 1,
    )
