"""Small named graph constructors used by tests, demos, and the CLI."""

from .graph import BlockGraph, from_edge_list


def complete_graph(n: int) -> BlockGraph:
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def path_graph(n: int) -> BlockGraph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star_of_cliques(sizes) -> BlockGraph:
    """Cliques of the given sizes all sharing vertex 0.

    Each size counts the whole block, so size s contributes s-1 fresh
    vertices.
    """
    edges = []
    nxt = 1
    for s in sizes:
        if s < 2:
            raise ValueError("block size must be >= 2")
        group = [0] + list(range(nxt, nxt + s - 1))
        nxt += s - 1
        edges.extend((group[i], group[j]) for i in range(len(group)) for j in range(i + 1, len(group)))
    return from_edge_list(nxt, edges)


def clique_with_pendant_cliques(k: int) -> BlockGraph:
    """K_k with k+1 pendant (k+1)-cliques hanging off each vertex.

    The family whose equitable chromatic number exceeds the counting
    lower bound by exactly one; it has k + k^2(k+1) vertices.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    nxt = k
    for u in range(k):
        for _ in range(k + 1):
            group = [u] + list(range(nxt, nxt + k))
            nxt += k
            edges.extend(
                (group[i], group[j]) for i in range(len(group)) for j in range(i + 1, len(group))
            )
    return from_edge_list(nxt, edges)


def two_triangles_sharing_a_vertex() -> BlockGraph:
    return star_of_cliques([3, 3])


def triangle_with_pendant_edge() -> BlockGraph:
    return from_edge_list(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
