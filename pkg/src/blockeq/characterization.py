"""Constructive characterization of block graphs by alpha_min.

A connected block graph with a cut-vertex witness v of alpha_min = r
grows from the clique-star induced by N[v] through r-1 clique
attachments, each raising alpha_min by exactly one while v keeps
realizing it.  This module applies those growth operations, verifies
certificates by replay, samples random graphs with prescribed
alpha_min, and recovers a certificate for a given graph by exhaustive
reverse search.

Guard evaluation graphs are pinned clause by clause: structural guards
(cut/pendant/level/simplicial counts) are read off the pre-attachment
graph, while the two all-independent-set guards that the source result
states on the grown graph (the twin-attach root test and the extension
anchor test) are evaluated after attaching.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from . import invariants
from .errors import (
    ExhaustedRetriesError,
    NoCutVertexError,
    PreconditionViolatedError,
)
from .graph import (
    BlockGraph,
    clique_levels,
    clique_star_status,
    decompose,
)

log = logging.getLogger(__name__)


class OpKind(Enum):
    ATTACH_AT_PENDANT_CUT = 1
    ATTACH_AT_LEVEL2_K2_CUT = 2
    ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE = 3
    TWIN_ATTACH = 4
    ATTACH_AT_UNIQUE_SIMPLICIAL = 5


@dataclass(frozen=True)
class StarExtension:
    """Follow-up clique hung on the fresh end of an attached 2-block."""

    clique_index: int
    size: int


@dataclass(frozen=True)
class OpDescriptor:
    """One growth step: where to attach and how big the new blocks are.

    Sizes count whole blocks (anchor included), so every size is >= 2
    and a size-s attachment contributes s-1 fresh vertices.  A twin
    attach carries two anchors; its replay adds both cliques unless the
    root of their block becomes locked into every maximum independent
    set through v, in which case only the first is added.
    """

    kind: OpKind
    anchors: Tuple[int, ...]
    sizes: Tuple[int, ...]
    star_extension: Optional[StarExtension] = None

    def check_shape(self):
        if len(self.anchors) != len(self.sizes) or not self.anchors:
            raise PreconditionViolatedError("shape", "anchors and sizes must align")
        if any(s < 2 for s in self.sizes):
            raise PreconditionViolatedError("shape", "attached block sizes must be >= 2")
        if self.kind is OpKind.TWIN_ATTACH:
            if len(self.anchors) not in (1, 2):
                raise PreconditionViolatedError("shape", "twin attach takes 1 or 2 anchors")
        elif len(self.anchors) != 1:
            raise PreconditionViolatedError("shape", "single-anchor operation")
        if self.star_extension is not None:
            if self.star_extension.size < 2:
                raise PreconditionViolatedError("shape", "extension size must be >= 2")
            if not 0 <= self.star_extension.clique_index < len(self.anchors):
                raise PreconditionViolatedError("shape", "extension indexes an added clique")


@dataclass(frozen=True)
class CharCertificate:
    """Base clique-star, its center, and the ordered growth steps."""

    base_graph: BlockGraph
    base_vertex: int
    steps: Tuple[OpDescriptor, ...]

    @property
    def r(self):
        return len(self.steps) + 1


def _v_ais_guard(g: BlockGraph, v: int, w: int) -> bool:
    """v-AIS status extended to trivial positions of w."""
    if w == v:
        return True
    if w in g.neighbors(v):
        return False
    return invariants.is_v_ais(g, v, w)


def _block_root(g, deco, lv, qi):
    """Root of a leveled block; falls back to its smallest cut vertex
    when the block was the final residual clique."""
    z = lv.roots.get(qi)
    if z is not None:
        return z
    cuts = sorted(deco.blocks[qi] & deco.cut_vertices)
    return cuts[0] if cuts else None


def _guards_ok(g: BlockGraph, v: int, op: OpDescriptor):
    """Check every structural guard of `op` against g (the graph being
    grown).  Returns the root of the twin-attach block when relevant.
    Raises PreconditionViolatedError with the failed clause."""
    deco = decompose(g)
    lv = clique_levels(g)
    cuts = deco.cut_vertices
    anchors = op.anchors

    if op.kind is OpKind.ATTACH_AT_PENDANT_CUT:
        x = anchors[0]
        if x == v:
            raise PreconditionViolatedError("op1-anchor-is-base", f"anchor {x} equals v")
        if x not in cuts:
            raise PreconditionViolatedError("op1-anchor-not-cut", f"{x} is simplicial")
        pend = set(deco.pendant_block_indices())
        if not any(qi in pend for qi in deco.block_indices_of(x)):
            raise PreconditionViolatedError("op1-not-in-pendant", f"{x} in no pendant clique")
        return None

    if op.kind is OpKind.ATTACH_AT_LEVEL2_K2_CUT:
        x = anchors[0]
        if x not in cuts:
            raise PreconditionViolatedError("op2-anchor-not-cut", f"{x} is simplicial")
        if not any(
            lv.levels.get(qi) == 2 and len(deco.blocks[qi]) == 2
            for qi in deco.block_indices_of(x)
        ):
            raise PreconditionViolatedError("op2-no-level2-k2", f"{x} in no level-2 2-block")
        if _v_ais_guard(g, v, x):
            raise PreconditionViolatedError("op2-anchor-v-ais", f"{x} locked into v's maximum sets")
        return None

    if op.kind is OpKind.ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE:
        s = anchors[0]
        if s in cuts:
            raise PreconditionViolatedError("op3-anchor-not-simplicial", f"{s} is a cut vertex")
        qi = deco.block_indices_of(s)[0]
        level = lv.levels.get(qi)
        simps = deco.blocks[qi] - cuts
        if level in (1, 2):
            if len(simps) < 3:
                raise PreconditionViolatedError(
                    "op3-too-few-simplicial", f"block has {len(simps)} simplicial vertices"
                )
            return None
        if level == 3:
            z = _block_root(g, deco, lv, qi)
            for bj, b in enumerate(deco.blocks):
                if lv.levels.get(bj) != 2 or not (b & deco.blocks[qi]):
                    continue
                if z is not None and z in b:
                    continue
                if len(b) != 2:
                    raise PreconditionViolatedError(
                        "op3-level2-not-k2", f"level-2 block {sorted(b)} has size {len(b)}"
                    )
            return None
        raise PreconditionViolatedError("op3-level", f"block level {level} not in 1..3")

    if op.kind is OpKind.TWIN_ATTACH:
        qis = set()
        for s in anchors:
            if s in cuts:
                raise PreconditionViolatedError("op4-anchor-not-simplicial", f"{s} is a cut vertex")
            qis.add(deco.block_indices_of(s)[0])
        if len(qis) != 1:
            raise PreconditionViolatedError("op4-anchors-split", "anchors in different blocks")
        qi = qis.pop()
        if lv.levels.get(qi) not in (1, 2):
            raise PreconditionViolatedError("op4-level", f"block level {lv.levels.get(qi)}")
        simps = deco.blocks[qi] - cuts
        if len(simps) != 2:
            raise PreconditionViolatedError(
                "op4-simplicial-count", f"block has {len(simps)} simplicial vertices, need 2"
            )
        if set(anchors) - simps:
            raise PreconditionViolatedError("op4-anchor-outside", "anchor not simplicial in block")
        if len(anchors) == 2 and anchors[0] == anchors[1]:
            raise PreconditionViolatedError("op4-anchors-equal", "twin anchors must differ")
        return _block_root(g, deco, lv, qi)

    if op.kind is OpKind.ATTACH_AT_UNIQUE_SIMPLICIAL:
        s = anchors[0]
        if s in cuts:
            raise PreconditionViolatedError("op5-anchor-not-simplicial", f"{s} is a cut vertex")
        qi = deco.block_indices_of(s)[0]
        if lv.levels.get(qi) not in (1, 2):
            raise PreconditionViolatedError("op5-level", f"block level {lv.levels.get(qi)}")
        if len(deco.blocks[qi] - cuts) != 1:
            raise PreconditionViolatedError("op5-not-unique", "block has other simplicial vertices")
        return None

    raise PreconditionViolatedError("kind", f"unknown kind {op.kind}")


def _attach_cliques(g: BlockGraph, anchors, sizes):
    """g plus one fresh clique per anchor; returns the new graph and the
    fresh vertex groups in anchor order."""
    edges = list(g.edges())
    nxt = g.n
    groups = []
    for anchor, size in zip(anchors, sizes):
        fresh = list(range(nxt, nxt + size - 1))
        nxt += size - 1
        group = [anchor] + fresh
        edges.extend(
            (group[i], group[j]) for i in range(len(group)) for j in range(i + 1, len(group))
        )
        groups.append(tuple(fresh))
    return BlockGraph(nxt, edges, _validated=True), groups


def apply_operation(g: BlockGraph, v: int, op: OpDescriptor) -> BlockGraph:
    """One growth step; raises PreconditionViolatedError on any failed guard."""
    op.check_shape()
    g._check_vertex(v)
    root = _guards_ok(g, v, op)

    if op.kind is OpKind.TWIN_ATTACH and len(op.anchors) == 2:
        grown, groups = _attach_cliques(g, op.anchors, op.sizes)
        if _v_ais_guard(grown, v, root):
            # the double attach would lock the root into every maximum
            # independent set through v; fall back to a single clique
            grown, groups = _attach_cliques(g, op.anchors[:1], op.sizes[:1])
    else:
        grown, groups = _attach_cliques(g, op.anchors, op.sizes)

    ext = op.star_extension
    if ext is not None:
        if ext.clique_index >= len(groups):
            raise PreconditionViolatedError(
                "ext-clique-missing", "extension targets a clique the fallback dropped"
            )
        if op.sizes[ext.clique_index] != 2:
            raise PreconditionViolatedError("ext-not-2-block", "extension needs an attached 2-block")
        w1 = op.anchors[ext.clique_index]
        w2 = groups[ext.clique_index][0]
        if _v_ais_guard(grown, v, w1):
            raise PreconditionViolatedError("ext-anchor-v-ais", f"{w1} locked into v's maximum sets")
        grown, _ = _attach_cliques(grown, (w2,), (ext.size,))
    return grown


@dataclass(frozen=True)
class CertCheck:
    ok: bool
    reason: Optional[str] = None
    step_index: Optional[int] = None
    alpha_min_trace: Tuple[int, ...] = ()


def verify_certificate(cert: CharCertificate) -> CertCheck:
    """Replay a certificate and check base shape plus conditions (B), (C)."""
    g = cert.base_graph
    v = cert.base_vertex
    status = clique_star_status(g)
    if not status.is_star or status.center != v:
        return CertCheck(False, "base graph is not a clique-star centered at the base vertex", None)
    trace = [1]
    if invariants.alpha_min(g).value != 1 or invariants.alpha_with(g, v) != 1:
        return CertCheck(False, "clique-star base must have alpha_min = alpha(.,v) = 1", None)
    base_closed = frozenset(g.closed_neighborhood(v))
    for i, op in enumerate(cert.steps):
        try:
            g = apply_operation(g, v, op)
        except PreconditionViolatedError as e:
            return CertCheck(False, f"replay failure: {e}", i, tuple(trace))
        am = invariants.alpha_min(g).value
        trace.append(am)
        if am != i + 2:
            return CertCheck(False, f"alpha_min jumped to {am}, expected {i + 2}", i, tuple(trace))
        if invariants.alpha_with(g, v) != am:
            return CertCheck(False, "base vertex stopped realizing alpha_min", i, tuple(trace))
    if frozenset(g.closed_neighborhood(v)) != base_closed:
        return CertCheck(False, "closed neighborhood of the base vertex changed", None, tuple(trace))
    return CertCheck(True, None, None, tuple(trace))


def _candidate_ops(g: BlockGraph, v: int):
    """All structurally plausible (kind, anchors) pairs for one step."""
    deco = decompose(g)
    lv = clique_levels(g)
    cuts = deco.cut_vertices
    pend = set(deco.pendant_block_indices())
    out = []
    for x in sorted(cuts):
        if x != v and any(qi in pend for qi in deco.block_indices_of(x)):
            out.append((OpKind.ATTACH_AT_PENDANT_CUT, (x,)))
        if any(
            lv.levels.get(qi) == 2 and len(deco.blocks[qi]) == 2
            for qi in deco.block_indices_of(x)
        ) and not _v_ais_guard(g, v, x):
            out.append((OpKind.ATTACH_AT_LEVEL2_K2_CUT, (x,)))
    for qi, b in enumerate(deco.blocks):
        level = lv.levels.get(qi)
        simps = sorted(b - cuts)
        if level in (1, 2):
            if len(simps) >= 3:
                out.extend((OpKind.ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE, (s,)) for s in simps)
            elif len(simps) == 2:
                s1, s2 = simps
                out.extend(
                    [
                        (OpKind.TWIN_ATTACH, (s1, s2)),
                        (OpKind.TWIN_ATTACH, (s2, s1)),
                        (OpKind.TWIN_ATTACH, (s1,)),
                        (OpKind.TWIN_ATTACH, (s2,)),
                    ]
                )
            elif len(simps) == 1:
                out.append((OpKind.ATTACH_AT_UNIQUE_SIMPLICIAL, (simps[0],)))
        elif level == 3 and simps:
            probe = OpDescriptor(OpKind.ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE, (simps[0],), (2,))
            try:
                _guards_ok(g, v, probe)
            except PreconditionViolatedError:
                continue
            out.extend((OpKind.ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE, (s,)) for s in simps)
    return out


def generate_with_alphamin(
    r: int,
    max_clique: int = 4,
    seed: Optional[int] = None,
    retries: int = 400,
):
    """Random block graph with alpha_min exactly r, plus its certificate.

    Grows a random clique-star around vertex 0 and then applies r-1
    random legal operations, resampling any candidate that fails to
    raise alpha_min by one or to keep vertex 0 a witness.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if max_clique < 2:
        raise ValueError("max_clique must be >= 2")
    rng = random.Random(seed)
    size_pool = [2, 2] + list(range(2, max_clique + 1))

    from .families import star_of_cliques

    base = star_of_cliques([rng.choice(size_pool) for _ in range(rng.randint(2, 3))])
    g = base
    steps = []
    for i in range(1, r):
        target = i + 1
        for _ in range(retries):
            cands = _candidate_ops(g, 0)
            if not cands:
                raise ExhaustedRetriesError(f"no candidate operations at step {i}")
            kind, anchors = rng.choice(cands)
            sizes = tuple(rng.choice(size_pool) for _ in anchors)
            ext = None
            k2s = [ix for ix, s in enumerate(sizes) if s == 2]
            if k2s and rng.random() < 0.4:
                ext = StarExtension(rng.choice(k2s), rng.choice(size_pool))
            op = OpDescriptor(kind, anchors, sizes, ext)
            try:
                grown = apply_operation(g, 0, op)
            except PreconditionViolatedError:
                continue
            if (
                invariants.alpha_min(grown).value == target
                and invariants.alpha_with(grown, 0) == target
            ):
                g = grown
                steps.append(op)
                break
        else:
            raise ExhaustedRetriesError(f"no accepted operation within {retries} tries at step {i}")
    return g, CharCertificate(base, 0, tuple(steps))


# -- reverse search -------------------------------------------------------


@dataclass(frozen=True)
class _Reverse:
    """One undone step, in host-graph vertex ids."""

    kind: OpKind
    anchors: Tuple[int, ...]
    sizes: Tuple[int, ...]
    ext: Optional[StarExtension]
    groups: Tuple[Tuple[int, ...], ...]
    ext_group: Tuple[int, ...] = ()
    removed: frozenset = frozenset()


def _pendants_of(sub, invmap):
    """Pendant blocks of an induced subgraph, translated to host ids."""
    deco = decompose(sub)
    out = []
    for qi in deco.pendant_block_indices():
        b = deco.blocks[qi]
        x = next(iter(b & deco.cut_vertices))
        out.append((
            frozenset(invmap[u] for u in b),
            invmap[x],
        ))
    return out


def _reverse_candidates(g, S, v):
    """Last-step removal candidates at state S: single attach, twin
    double attach, and both with a trailing extension."""
    sub, idmap = g.induced_subgraph(sorted(S))
    invmap = {new: old for old, new in idmap.items()}
    nv = g.closed_neighborhood(v)
    pendants = _pendants_of(sub, invmap)
    cands = []

    for block, x in pendants:
        fresh = block - {x}
        if fresh & nv:
            continue
        cands.append(_Reverse(
            kind=None, anchors=(x,), sizes=(len(block),), ext=None,
            groups=(tuple(sorted(fresh)),), removed=frozenset(fresh),
        ))

    adjacency = {x: g.neighbors(x) for _, x in pendants}
    for i, (b1, x1) in enumerate(pendants):
        for b2, x2 in pendants[i + 1:]:
            if x1 == x2 or x2 not in adjacency[x1]:
                continue
            f1, f2 = b1 - {x1}, b2 - {x2}
            if (f1 | f2) & nv or (f1 & b2) or (f2 & b1):
                continue
            for a1, a2, fa, fb, s1, s2 in (
                (x1, x2, f1, f2, len(b1), len(b2)),
                (x2, x1, f2, f1, len(b2), len(b1)),
            ):
                cands.append(_Reverse(
                    kind=OpKind.TWIN_ATTACH, anchors=(a1, a2), sizes=(s1, s2), ext=None,
                    groups=(tuple(sorted(fa)), tuple(sorted(fb))),
                    removed=frozenset(fa | fb),
                ))

    # extension shapes: a pendant block E at w2 whose only other block is
    # a 2-block {w1, w2}; the step added {w2} and then E on top of it
    sub_deco = decompose(sub)
    for block, w2 in pendants:
        w2_sub = idmap[w2]
        bidx = sub_deco.block_indices_of(w2_sub)
        if len(bidx) != 2:
            continue
        others = [
            sub_deco.blocks[qi]
            for qi in bidx
            if frozenset(invmap[u] for u in sub_deco.blocks[qi]) != block
        ]
        if len(others) != 1 or len(others[0]) != 2:
            continue
        w1 = invmap[next(u for u in others[0] if u != w2_sub)]
        e_fresh = block - {w2}
        removed = frozenset(e_fresh | {w2})
        if removed & nv:
            continue
        ext = StarExtension(0, len(block))
        cands.append(_Reverse(
            kind=None, anchors=(w1,), sizes=(2,), ext=ext,
            groups=((w2,),), ext_group=tuple(sorted(e_fresh)),
            removed=removed,
        ))
        for b2, x2 in pendants:
            if x2 in (w1, w2) or b2 & removed or x2 not in g.neighbors(w1):
                continue
            f2 = b2 - {x2}
            if f2 & nv or w1 in b2:
                continue
            cands.append(_Reverse(
                kind=OpKind.TWIN_ATTACH, anchors=(w1, x2), sizes=(2, len(b2)), ext=ext,
                groups=((w2,), tuple(sorted(f2))),
                removed=frozenset(removed | f2),
            ))

    cands.sort(key=lambda c: (len(c.removed), sorted(c.removed), c.anchors, c.sizes))
    return cands


def _resolve_kind(g, T, v, cand):
    """Find a kind whose guards accept this candidate on the shrunken
    graph G[T], and run the grown-graph guards; None when no kind fits."""
    sub, idmap = g.induced_subgraph(sorted(T))
    if not sub.is_connected():
        return None
    anchors_sub = tuple(idmap[a] for a in cand.anchors)
    v_sub = idmap[v]
    kinds = (
        [OpKind.TWIN_ATTACH]
        if len(cand.anchors) == 2
        else [
            OpKind.ATTACH_AT_PENDANT_CUT,
            OpKind.ATTACH_AT_LEVEL2_K2_CUT,
            OpKind.ATTACH_AT_SIMPLICIAL_OF_RICH_CLIQUE,
            OpKind.TWIN_ATTACH,
            OpKind.ATTACH_AT_UNIQUE_SIMPLICIAL,
        ]
    )
    for kind in kinds:
        probe = OpDescriptor(kind, anchors_sub, cand.sizes, None)
        try:
            root_sub = _guards_ok(sub, v_sub, probe)
        except PreconditionViolatedError:
            continue
        if len(cand.anchors) == 2:
            # the double attach stands only if the root is not locked
            # into every maximum independent set through v afterwards
            invmap = {new: old for old, new in idmap.items()}
            root_host = invmap[root_sub]
            grown_set = (T | cand.removed) - set(cand.ext_group)
            gsub, gmap = g.induced_subgraph(sorted(grown_set))
            if _v_ais_guard(gsub, gmap[v], gmap[root_host]):
                continue
        if cand.ext is not None:
            mid_set = (T | cand.removed) - set(cand.ext_group)
            msub, mmap = g.induced_subgraph(sorted(mid_set))
            if _v_ais_guard(msub, mmap[v], mmap[cand.anchors[0]]):
                continue
        return kind
    return None


def find_decomposition(g: BlockGraph) -> Optional[CharCertificate]:
    """Recover a growth certificate for g, or None after exhausting the
    reverse search (a None on a valid input would be a counterexample
    worth logging)."""
    deco = decompose(g)
    if not deco.cut_vertices:
        raise NoCutVertexError("decomposition needs a cut vertex")
    target = invariants.alpha_min(g).value
    witnesses = [x for x in sorted(deco.cut_vertices) if invariants.alpha_with(g, x) == target]
    if not witnesses:
        raise AssertionError("some cut vertex must realize alpha_min")
    v = witnesses[0]
    base_set = frozenset(g.closed_neighborhood(v))

    if target == 1:
        if base_set != frozenset(range(g.n)):
            log.warning("alpha_min=1 graph is not its own clique-star; potential counterexample")
            return None
        return CharCertificate(g, v, ())

    failed = set()

    def search(S, am):
        if S == base_set:
            return []
        if S in failed:
            return None
        for cand in _reverse_candidates(g, S, v):
            T = S - cand.removed
            tsub, tmap = g.induced_subgraph(sorted(T))
            if not tsub.is_connected():
                continue
            if invariants.alpha_min(tsub).value != am - 1:
                continue
            if invariants.alpha_with(tsub, tmap[v]) != am - 1:
                continue
            kind = _resolve_kind(g, T, v, cand)
            if kind is None:
                continue
            rest = search(T, am - 1)
            if rest is not None:
                rec = _Reverse(
                    kind, cand.anchors, cand.sizes, cand.ext,
                    cand.groups, cand.ext_group, cand.removed,
                )
                return rest + [rec]
        failed.add(S)
        return None

    records = search(frozenset(range(g.n)), target)
    if records is None:
        log.warning("reverse search exhausted on %r; potential counterexample", g)
        return None

    base_sub, base_map = g.induced_subgraph(sorted(base_set))
    id_map = dict(base_map)
    nxt = base_sub.n
    steps = []
    for rec in records:
        anchors = tuple(id_map[a] for a in rec.anchors)
        for group in rec.groups:
            for old in group:
                id_map[old] = nxt
                nxt += 1
        for old in rec.ext_group:
            id_map[old] = nxt
            nxt += 1
        steps.append(OpDescriptor(rec.kind, anchors, rec.sizes, rec.ext))
    cert = CharCertificate(base_sub, base_map[v], tuple(steps))
    check = verify_certificate(cert)
    if not check.ok:
        raise AssertionError(f"reverse search produced an invalid certificate: {check.reason}")
    return cert
