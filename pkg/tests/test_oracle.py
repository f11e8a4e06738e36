import json
from pathlib import Path

import pytest

from blockeq import oracle
from blockeq.errors import (
    ColorOutOfRangeError,
    SearchBudgetExceededError,
    TooLargeError,
    UncoloredVertexError,
)
from blockeq.families import (
    clique_with_pendant_cliques,
    complete_graph,
    path_graph,
    two_triangles_sharing_a_vertex,
)
from blockeq.gls import BinPackingInstance, Coloring
from blockeq.graph import BlockGraph, from_edge_list

FIXTURES = Path(__file__).parent / "data"


def k33():
    # not a block graph; checker and exact search accept general graphs
    return BlockGraph(6, [(i, j + 3) for i in range(3) for j in range(3)], _validated=True)


class TestCheckColoring:
    def test_proper_equitable_edge(self):
        res = oracle.check_coloring(from_edge_list(2, [(0, 1)]), Coloring({0: 1, 1: 2}, 2))
        assert res.proper and res.equitable

    def test_monochromatic_edge(self):
        res = oracle.check_coloring(from_edge_list(2, [(0, 1)]), Coloring({0: 1, 1: 1}, 2))
        assert not res.proper

    def test_unbalanced_classes(self):
        res = oracle.check_coloring(path_graph(3), Coloring({0: 1, 1: 2, 2: 1}, 3))
        assert res.proper and not res.equitable

    def test_missing_vertex(self):
        with pytest.raises(UncoloredVertexError):
            oracle.check_coloring(path_graph(3), Coloring({0: 1, 1: 2}, 2))

    def test_color_out_of_range(self):
        with pytest.raises(ColorOutOfRangeError):
            oracle.check_coloring(path_graph(2), Coloring({0: 1, 1: 3}, 2))


class TestExactEquitable:
    def test_k33_two_yes_three_no(self):
        g = k33()
        assert oracle.exact_equitable_colorable(g, 2)[0]
        assert not oracle.exact_equitable_colorable(g, 3)[0]

    def test_max_degree_plus_one_always_feasible(self, graphs_up_to_7):
        for g in graphs_up_to_7[:50]:
            if g.n == 0:
                continue
            t = min(g.max_degree() + 1, g.n)
            ok, w = oracle.exact_equitable_colorable(g, t)
            assert ok
            chk = oracle.check_coloring(g, w)
            assert chk.proper and chk.equitable

    def test_witnesses_pass_checker(self, graphs_up_to_7):
        for g in graphs_up_to_7[:40]:
            for t in range(1, g.n + 1):
                ok, w = oracle.exact_equitable_colorable(g, t)
                if ok:
                    chk = oracle.check_coloring(g, w)
                    assert chk.proper and chk.equitable

    def test_budget_raises(self):
        g = clique_with_pendant_cliques(3)
        with pytest.raises(SearchBudgetExceededError):
            oracle.exact_equitable_colorable(g, 5, node_budget=3)

    def test_pendant_family_k2(self):
        g = clique_with_pendant_cliques(2)
        assert not oracle.exact_equitable_colorable(g, 3)[0]
        assert oracle.exact_equitable_colorable(g, 4)[0]


class TestSpectrum:
    def test_k33_gap(self):
        rep = oracle.spectrum(k33())
        assert sorted(rep.feasible_ts) == [2, 4, 5, 6]
        assert rep.chi_eq == 2 and rep.chi_eq_star == 4
        assert rep.gap_free is False and rep.complete

    def test_k4_needs_all_colors(self):
        rep = oracle.spectrum(complete_graph(4))
        assert sorted(rep.feasible_ts) == [4]
        assert rep.chi_eq == 4 and rep.gap_free

    def test_final_t_always_feasible(self, graphs_up_to_7):
        for g in graphs_up_to_7[:30]:
            if g.n:
                assert g.n in oracle.spectrum(g).feasible_ts

    def test_small_uniform_flower_gap_free(self):
        from blockeq.gls import build_gls

        g = build_gls(BinPackingInstance((2, 2), 1, 4)).graph
        rep = oracle.spectrum(g)
        assert rep.chi_eq == 2 and rep.gap_free


class TestBrutes:
    def test_singleton(self):
        g = BlockGraph(1, [])
        assert oracle.brute_alpha(g) == 1
        assert oracle.brute_dc(g) == 0

    def test_path4(self):
        g = path_graph(4)
        assert oracle.brute_alpha(g) == 2
        assert oracle.brute_alpha_with(g, 1) == 2
        assert oracle.brute_dc(g) == 1

    def test_star_of_triangles(self):
        g = two_triangles_sharing_a_vertex()
        assert oracle.brute_alpha(g) == 2
        assert oracle.brute_alpha_with(g, 0) == 1
        assert oracle.brute_dc(g) == 1

    def test_cap_enforced(self):
        with pytest.raises(TooLargeError):
            oracle.brute_alpha(complete_graph(6), cap=5)


class TestBinPacking:
    def test_showcase_instance_is_no(self):
        assert oracle.bin_packing_decide(BinPackingInstance((3, 3, 3, 3), 3, 4))[0] is False

    def test_even_split(self):
        yes, parts = oracle.bin_packing_decide(BinPackingInstance((2, 2, 2, 2), 2, 4))
        assert yes
        assert sorted(sum(2 for _ in p) for p in parts) == [4, 4]

    def test_mixed_items(self):
        yes, parts = oracle.bin_packing_decide(BinPackingInstance((1, 2, 3), 2, 3))
        assert yes
        sums = sorted(sum((1, 2, 3)[i] for i in p) for p in parts)
        assert sums == [3, 3]


class TestEnumerator:
    def test_counts_match_pinned_fixture(self, graphs_up_to_8):
        pinned = json.loads((FIXTURES / "block_graph_counts.json").read_text())["counts"]
        counts = {}
        for g in graphs_up_to_8:
            counts[str(g.n)] = counts.get(str(g.n), 0) + 1
        assert counts == {k: v for k, v in pinned.items() if int(k) <= 8}

    def test_tiny_listings(self):
        assert [g.n for g in oracle.enumerate_block_graphs(2)] == [1, 2]
        three = list(oracle.enumerate_block_graphs(3))
        assert sorted(g.edge_count() for g in three if g.n == 3) == [2, 3]

    def test_collision_verification_clean(self):
        list(oracle.enumerate_block_graphs(6, verify_collisions=True))

    def test_all_outputs_connected_and_distinct(self, graphs_up_to_7):
        keys = [oracle.canonical_form(g) for g in graphs_up_to_7]
        assert len(keys) == len(set(keys))
        assert all(g.is_connected() for g in graphs_up_to_7)


class TestCanonicalForm:
    def test_relabelings_agree(self):
        g1 = from_edge_list(3, [(0, 1), (1, 2), (0, 2)])
        g2 = from_edge_list(3, [(2, 1), (0, 1), (2, 0)])
        assert oracle.canonical_form(g1) == oracle.canonical_form(g2)

    def test_path_vs_star(self):
        star = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
        assert oracle.canonical_form(path_graph(4)) != oracle.canonical_form(star)

    def test_random_relabelings_of_block_graph(self, graphs_up_to_7):
        import random

        rng = random.Random(4)
        for g in graphs_up_to_7[40:70]:
            perm = list(range(g.n))
            rng.shuffle(perm)
            relabeled = from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
            assert oracle.canonical_form(g) == oracle.canonical_form(relabeled)

    def test_distinct_strings_mean_non_isomorphic(self, graphs_up_to_7):
        # spot-verify canonical separation with the explicit search
        small = [g for g in graphs_up_to_7 if g.n == 5]
        for i, g1 in enumerate(small):
            for g2 in small[i + 1:]:
                assert not oracle.isomorphic_brute(g1, g2)

    def test_disconnected_graphs(self):
        g1 = from_edge_list(4, [(0, 1), (2, 3)])
        g2 = from_edge_list(4, [(0, 2), (1, 3)])
        assert oracle.canonical_form(g1) == oracle.canonical_form(g2)


class TestFilterOracle:
    def test_small_counts_match_enumerator(self):
        for n in range(1, 6):
            assert oracle.count_block_graphs_by_filter(n) == sum(
                1 for g in oracle.enumerate_block_graphs(n) if g.n == n
            )

    def test_rejects_cycle_and_diamond(self):
        c4 = BlockGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)], _validated=True)
        assert not oracle.is_block_graph_by_filter(c4)
        diamond = BlockGraph(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], _validated=True)
        assert not oracle.is_block_graph_by_filter(diamond)
        assert oracle.is_block_graph_by_filter(path_graph(4))
