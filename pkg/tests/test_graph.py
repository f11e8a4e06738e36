import pytest

from blockeq.errors import (
    DisconnectedError,
    EdgelessError,
    NotABlockGraphError,
    SelfLoopError,
    UnknownVertexError,
)
from blockeq.families import (
    complete_graph,
    path_graph,
    triangle_with_pendant_edge,
    two_triangles_sharing_a_vertex,
)
from blockeq.graph import (
    BlockGraph,
    clique_levels,
    clique_star_status,
    decompose,
    delete_closed_neighborhood,
    delete_vertices,
    from_edge_list,
    is_clique_star,
)

import brutes


class TestFromEdgeList:
    def test_triangle_is_valid(self):
        g = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        assert g.n == 3 and g.edge_count() == 3

    def test_four_cycle_rejected_with_witness(self):
        with pytest.raises(NotABlockGraphError) as exc:
            from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
        u, v = exc.value.witness
        assert u != v and {u, v} <= {0, 1, 2, 3}

    def test_triangle_plus_pendant_edge_valid(self):
        g = triangle_with_pendant_edge()
        blocks = [sorted(b) for b in decompose(g).blocks]
        assert blocks == [[0, 1, 2], [2, 3]]
        # matches the brute maximal-2-connected-subset oracle
        assert brutes.brute_blocks(g) == sorted(decompose(g).blocks, key=sorted)

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError):
            from_edge_list(2, [(0, 0)])

    def test_out_of_range_endpoint(self):
        with pytest.raises(UnknownVertexError):
            from_edge_list(2, [(0, 2)])

    def test_duplicate_edges_collapse(self):
        g = from_edge_list(2, [(0, 1), (1, 0), (0, 1)])
        assert g.edge_count() == 1


class TestDecompose:
    def test_single_triangle(self):
        deco = decompose(complete_graph(3))
        assert [sorted(b) for b in deco.blocks] == [[0, 1, 2]]
        assert not deco.cut_vertices

    def test_path4(self):
        deco = decompose(path_graph(4))
        assert [sorted(b) for b in deco.blocks] == [[0, 1], [1, 2], [2, 3]]
        assert sorted(deco.cut_vertices) == [1, 2]

    def test_triangle_pendant_cut_vertex(self):
        deco = decompose(triangle_with_pendant_edge())
        assert sorted(deco.cut_vertices) == [2]

    def test_cut_vertices_match_articulation_oracle(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            assert decompose(g).cut_vertices == frozenset(
                brutes.brute_articulation_points(g)
            ), g.edges()

    def test_every_vertex_cut_xor_simplicial(self, graphs_up_to_8):
        # simplicial exactly when not a cut vertex, for every vertex
        for g in graphs_up_to_8:
            deco = decompose(g)
            for v in range(g.n):
                nbrs = sorted(g.neighbors(v))
                simplicial = all(
                    g.adjacent(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1:]
                )
                assert simplicial == (v not in deco.cut_vertices)

    def test_block_sizes_sum_to_tree_count(self, graphs_up_to_8):
        for g in graphs_up_to_8:
            deco = decompose(g)
            assert sum(len(b) - 1 for b in deco.blocks) == g.n - 1

    def test_edges_partition_into_blocks(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            deco = decompose(g)
            for u, v in g.edges():
                homes = [b for b in deco.blocks if u in b and v in b]
                assert len(homes) == 1

    def test_two_blocks_share_at_most_one_vertex(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            deco = decompose(g)
            for i, b1 in enumerate(deco.blocks):
                for b2 in deco.blocks[i + 1:]:
                    shared = b1 & b2
                    assert len(shared) <= 1
                    if shared:
                        assert shared <= deco.cut_vertices

    def test_block_cut_incidences_form_a_forest(self, graphs_up_to_7):
        # acyclic bipartite structure: edges = nodes - components
        for g in graphs_up_to_7:
            deco = decompose(g)
            nodes = len(deco.blocks) + len(deco.cut_vertices)
            comps = len(g.connected_components())
            assert len(deco.tree_edges) == nodes - comps


class TestCliqueLevels:
    def test_star_of_two_triangles(self):
        g = two_triangles_sharing_a_vertex()
        lv = clique_levels(g)
        assert set(lv.levels.values()) == {1}
        assert lv.unleveled_singleton == 0

    def test_path5_peeling(self):
        g = path_graph(5)
        lv = clique_levels(g)
        deco = decompose(g)
        by_block = {tuple(sorted(deco.blocks[i])): l for i, l in lv.levels.items()}
        assert by_block == {(0, 1): 1, (3, 4): 1, (1, 2): 2, (2, 3): 2}
        assert lv.unleveled_singleton == 2

    def test_single_edge(self):
        g = from_edge_list(2, [(0, 1)])
        lv = clique_levels(g)
        assert list(lv.levels.values()) == [1]
        assert lv.unleveled_singleton is None

    def test_rejects_disconnected(self):
        g = from_edge_list(4, [(0, 1), (2, 3)])
        with pytest.raises(DisconnectedError):
            clique_levels(g)

    def test_rejects_edgeless(self):
        with pytest.raises(EdgelessError):
            clique_levels(BlockGraph(1, []))

    def test_level_one_blocks_are_pendant_blocks(self, graphs_up_to_8):
        for g in graphs_up_to_8:
            if g.edge_count() == 0:
                continue
            lv = clique_levels(g)
            deco = decompose(g)
            level1 = {i for i, l in lv.levels.items() if l == 1}
            pendant = set(deco.pendant_block_indices())
            if len(deco.blocks) == 1:
                assert level1 == {0}
            else:
                assert level1 == pendant

    def test_round_bound_half_diameter(self, graphs_up_to_8):
        for g in graphs_up_to_8:
            if g.edge_count() == 0:
                continue
            lv = clique_levels(g)
            diam = brutes.bfs_diameter(g)
            assert lv.rounds <= -(diam // -2) + 1


class TestCliqueStar:
    def test_two_triangles(self):
        st = clique_star_status(two_triangles_sharing_a_vertex())
        assert st.is_star and st.center == 0

    def test_path4_not_star(self):
        assert not is_clique_star(path_graph(4))

    def test_single_clique_flagged(self):
        st = clique_star_status(complete_graph(4))
        assert not st.is_star and st.single_clique

    def test_star_means_no_level_two(self, graphs_up_to_7):
        for g in graphs_up_to_7:
            if g.edge_count() == 0 or len(decompose(g).blocks) < 2:
                continue
            lv = clique_levels(g)
            assert is_clique_star(g) == (lv.max_level() < 2)


class TestSurgery:
    def test_delete_closed_neighborhood_of_path_center(self):
        g, id_map = delete_closed_neighborhood(path_graph(3), 1)
        assert g.n == 0 and id_map == {}

    def test_k4_minus_vertex(self):
        g, id_map = delete_vertices(complete_graph(4), [3])
        assert g.n == 3 and g.edge_count() == 3
        assert id_map == {0: 0, 1: 1, 2: 2}

    def test_triangle_pendant_minus_leaf(self):
        g, _ = delete_vertices(triangle_with_pendant_edge(), [3])
        assert g.n == 3 and g.edge_count() == 3

    def test_unknown_vertex(self):
        with pytest.raises(UnknownVertexError):
            delete_vertices(path_graph(3), [7])

    def test_deletion_commutes_with_decomposition(self, graphs_up_to_7):
        # induced subgraph blocks agree with the brute biconnectivity
        # oracle run on the deleted graph directly
        for g in graphs_up_to_7:
            if g.n < 2:
                continue
            sub, _ = delete_vertices(g, [g.n - 1])
            assert brutes.brute_blocks(sub) == sorted(decompose(sub).blocks, key=sorted)

    def test_labels_follow_deletion(self):
        g = from_edge_list(3, [(0, 1), (1, 2)], labels=["a", "b", "c"])
        sub, id_map = delete_vertices(g, [0])
        assert sub.labels == ("b", "c")
        assert id_map == {1: 0, 2: 1}
