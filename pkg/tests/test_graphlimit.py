import numpy as np
import pytest

from helpers import chain_cycle, star
from sddkit import (
    BipartiteComponent,
    GraphFormatError,
    LoopGraph,
    NonBipartiteComponent,
    SForm,
    analyze_bipartition,
    incidence,
    incidence_rank,
    inf_norm,
    limit_block_constants,
    limit_closed_form,
    limit_inf_norm,
    limit_numeric,
    limit_u_route,
    load_graph,
    save_graph,
    sform_inf_norm_inverse,
    sform_inverse,
    signless_laplacian,
)
from sddkit.randmat import random_loop_graph, trial_rng

S4 = SForm(4, 2.0, 1.0)


def random_cases(count, seed, n_hi=12, p_loop=0.15):
    rng = trial_rng(seed)
    for _ in range(count):
        n = int(rng.integers(3, n_hi + 1))
        ell = float(rng.uniform(0.5, 2.0))
        alpha = (n - 2) * ell + float(rng.uniform(0.0, 2.0 * ell))
        yield SForm(n, alpha, ell), random_loop_graph(rng, n, p_edge=0.3, p_loop=p_loop)


class TestLoopGraph:
    def test_canonicalizes_and_dedupes(self):
        g = LoopGraph(4, [(2, 1), (1, 2), (3, 3)])
        assert g.edge_list == [(1, 2), (3, 3)]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            LoopGraph(3, [(1, 4)])


class TestSignlessLaplacian:
    def test_empty_graph(self):
        np.testing.assert_array_equal(signless_laplacian(LoopGraph(3)).entries, np.zeros((3, 3)))

    def test_cycle(self):
        P = signless_laplacian(chain_cycle(4)).entries
        np.testing.assert_array_equal(P.diagonal(), [2, 2, 2, 2])
        assert P[0, 1] == P[1, 2] == P[2, 3] == P[0, 3] == 1
        assert P[0, 2] == P[1, 3] == 0

    def test_self_loop(self):
        np.testing.assert_array_equal(
            signless_laplacian(LoopGraph(1, [(1, 1)])).entries, [[2.0]])

    def test_margins_are_zero_or_two(self):
        g = LoopGraph(5, [(1, 2), (2, 3), (4, 4)])
        P = signless_laplacian(g)
        from sddkit import delta
        np.testing.assert_array_equal(delta(P), [0, 0, 0, 2, 0])


class TestIncidence:
    def test_single_edge(self):
        np.testing.assert_array_equal(incidence(LoopGraph(2, [(1, 2)])), [[1.0], [1.0]])

    def test_self_loop_column(self):
        L = incidence(LoopGraph(2, [(1, 1)]))
        np.testing.assert_allclose(L, [[np.sqrt(2)], [0.0]])

    def test_factorizes_laplacian(self):
        rng = trial_rng(5)
        for _ in range(30):
            n = int(rng.integers(1, 9))
            g = random_loop_graph(rng, n, p_edge=0.4, p_loop=0.3)
            L = incidence(g)
            P = signless_laplacian(g).entries
            if any(i == j for i, j in g.edges):
                # sqrt(2)**2 is one ulp off of 2 in float arithmetic
                np.testing.assert_allclose(L @ L.T, P, atol=5e-16)
            else:
                np.testing.assert_array_equal(L @ L.T, P)


class TestAnalyzeBipartition:
    def test_even_cycle(self):
        B = analyze_bipartition(chain_cycle(4))
        assert B.r == 1 and B.s == 0 and B.gamma == 0 and B.d == 0
        comp = B.components[0]
        assert isinstance(comp, BipartiteComponent) and (comp.p, comp.q) == (2, 2)
        # ties keep the side of the lowest-indexed vertex first
        assert comp.vertices_p == (1, 3) and comp.vertices_q == (2, 4)

    def test_star(self):
        for n in (4, 6, 10):
            B = analyze_bipartition(star(n))
            comp = B.components[0]
            assert (comp.p, comp.q) == (n - 1, 1)
            assert comp.vertices_q == (1,)
            assert B.gamma == pytest.approx((n - 2) ** 2 / n)
            assert B.d == n - 2

    def test_odd_cycle(self):
        B = analyze_bipartition(chain_cycle(5))
        assert B.r == 0 and B.s == 5
        assert isinstance(B.components[0], NonBipartiteComponent)

    def test_self_loop_is_non_bipartite(self):
        B = analyze_bipartition(LoopGraph(3, [(1, 2), (3, 3)]))
        kinds = [type(c) for c in B.components]
        assert kinds == [BipartiteComponent, NonBipartiteComponent]
        assert B.r == 1 and B.s == 1

    def test_isolated_vertices_are_one_zero_components(self):
        B = analyze_bipartition(LoopGraph(3))
        assert B.r == 3 and B.gamma == 3.0 and B.d == 3.0
        assert all(c.q == 0 for c in B.components)

    def test_components_partition_vertices(self):
        rng = trial_rng(17)
        for _ in range(20):
            n = int(rng.integers(1, 12))
            g = random_loop_graph(rng, n, 0.3, 0.2)
            B = analyze_bipartition(g)
            seen = sorted(v for c in B.components for v in (
                c.vertices if isinstance(c, NonBipartiteComponent) else c.vertices))
            assert seen == list(range(1, n + 1))
            assert B.s == n - sum(c.p + c.q for c in B.bipartite_components)


class TestClosedForm:
    def test_even_cycle_alternating(self):
        N = limit_closed_form(S4, analyze_bipartition(chain_cycle(4))).entries
        expect = np.array([[(-1.0) ** (i + j) / 8 for j in range(4)] for i in range(4)])
        np.testing.assert_allclose(N, expect, atol=1e-15)

    def test_star_pattern(self):
        N = limit_closed_form(S4, analyze_bipartition(star(4))).entries
        c = 1 / 12
        expect = np.full((4, 4), c)
        expect[0, 1:] = -c
        expect[1:, 0] = -c
        np.testing.assert_allclose(N, expect, atol=1e-15)

    def test_non_bipartite_gives_zero(self):
        S5 = SForm(5, 3.0, 1.0)
        N = limit_closed_form(S5, analyze_bipartition(chain_cycle(5)))
        np.testing.assert_array_equal(N.entries, np.zeros((5, 5)))

    def test_requires_dominant_reference(self):
        with pytest.raises(ValueError):
            limit_closed_form(SForm(5, 1.0, 1.0), analyze_bipartition(chain_cycle(5)))

    def test_empty_graph_recovers_reference_inverse(self):
        B = analyze_bipartition(LoopGraph(4))
        np.testing.assert_allclose(limit_closed_form(S4, B).entries,
                                   sform_inverse(S4).entries, atol=1e-15)


class TestBlockConstants:
    def test_star_diagonal_constant(self):
        bc = limit_block_constants(S4, analyze_bipartition(star(4)))
        assert not bc.zero_limit
        assert bc.values[0, 0] == pytest.approx(1 / 12, abs=1e-15)

    def test_equal_sides_zero_cross_terms(self):
        g = LoopGraph(8, [(1, 2), (3, 4), (5, 6), (7, 8)])
        S8 = SForm(8, 6.0, 1.0)
        bc = limit_block_constants(S8, analyze_bipartition(g))
        off = bc.values[~np.eye(4, dtype=bool)]
        np.testing.assert_array_equal(off, np.zeros(12))

    def test_single_balanced_component(self):
        # one (2, 2) component: gamma = 0 so c_11 = 1/(4 alpha)
        B = analyze_bipartition(chain_cycle(4))
        for alpha in (2.0, 3.5):
            bc = limit_block_constants(SForm(4, alpha, 1.0), B)
            assert bc.values[0, 0] == pytest.approx(1 / (4 * alpha), abs=1e-15)

    def test_zero_limit_marker(self):
        bc = limit_block_constants(SForm(5, 3.0, 1.0), analyze_bipartition(chain_cycle(5)))
        assert bc.zero_limit and bc.values.shape == (0, 0)

    def test_magnitudes_match_closed_form(self):
        for S, g in random_cases(40, seed=23):
            B = analyze_bipartition(g)
            bc = limit_block_constants(S, B)
            if bc.zero_limit:
                continue
            N = limit_closed_form(S, B).entries
            bip = B.bipartite_components
            for i, ci in enumerate(bip):
                rows = [v - 1 for v in ci.vertices]
                for j, cj in enumerate(bip):
                    cols = [v - 1 for v in cj.vertices]
                    block = np.abs(N[np.ix_(rows, cols)])
                    np.testing.assert_allclose(block, abs(bc.values[i, j]), atol=1e-10)


class TestURoute:
    def test_even_cycle(self):
        B = analyze_bipartition(chain_cycle(4))
        np.testing.assert_allclose(limit_u_route(S4, B).entries,
                                   limit_closed_form(S4, B).entries, atol=1e-10)

    def test_star_n6(self):
        S6 = SForm(6, 4.0, 1.0)
        B = analyze_bipartition(star(6))
        np.testing.assert_allclose(limit_u_route(S6, B).entries,
                                   limit_closed_form(S6, B).entries, atol=1e-10)

    def test_all_non_bipartite_vanishes(self):
        g = LoopGraph(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
        S6 = SForm(6, 4.0, 1.0)
        N = limit_u_route(S6, analyze_bipartition(g))
        np.testing.assert_allclose(N.entries, np.zeros((6, 6)), atol=1e-10)


class TestNumericLimit:
    def test_cycle_at_t1(self):
        got = limit_numeric(S4, chain_cycle(4), 1.0).entries
        expect = np.array([
            [11, -4, 1, -4],
            [-4, 11, -4, 1],
            [1, -4, 11, -4],
            [-4, 1, -4, 11],
        ]) / 40.0
        np.testing.assert_allclose(got, expect, atol=1e-12)

    def test_cycle_with_chord_at_t1(self):
        g = LoopGraph(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
        got = limit_numeric(S4, g, 1.0).entries
        expect = np.array([
            [7, -2, -1, -2],
            [-2, 8, -2, 0],
            [-1, -2, 7, -2],
            [-2, 0, -2, 8],
        ]) / 32.0
        np.testing.assert_allclose(got, expect, atol=1e-12)

    def test_large_t_approaches_closed_form(self):
        g = chain_cycle(4)
        N = limit_closed_form(S4, analyze_bipartition(g)).entries
        np.testing.assert_allclose(limit_numeric(S4, g, 1e8).entries, N, atol=1e-6)

    def test_rejects_nonpositive_t(self):
        with pytest.raises(ValueError):
            limit_numeric(S4, chain_cycle(4), 0.0)


class TestLimitInfNorm:
    def test_star(self):
        assert limit_inf_norm(S4, analyze_bipartition(star(4))) == pytest.approx(1 / 3, abs=1e-15)

    def test_even_cycle(self):
        assert limit_inf_norm(S4, analyze_bipartition(chain_cycle(4))) == pytest.approx(0.5, abs=1e-15)

    def test_non_bipartite_zero(self):
        assert limit_inf_norm(SForm(5, 3.0, 1.0), analyze_bipartition(chain_cycle(5))) == 0.0

    def test_matches_matrix_norm(self):
        for S, g in random_cases(60, seed=29):
            B = analyze_bipartition(g)
            closed = limit_inf_norm(S, B)
            direct = inf_norm(limit_closed_form(S, B))
            assert abs(closed - direct) <= 1e-10


class TestRouteAgreementProperties:
    def test_three_routes_and_kernel(self):
        for S, g in random_cases(80, seed=31):
            B = analyze_bipartition(g)
            N = limit_closed_form(S, B)
            np.testing.assert_allclose(limit_u_route(S, B).entries, N.entries, atol=1e-9)
            np.testing.assert_allclose(limit_numeric(S, g, 1e8).entries, N.entries,
                                       atol=1e-5)
            L = incidence(g)
            if L.shape[1]:
                np.testing.assert_allclose(N.entries @ L, 0.0, atol=1e-9)

    def test_edge_columns_alternate(self):
        for S, g in random_cases(30, seed=37):
            N = limit_closed_form(S, analyze_bipartition(g)).entries
            for i, j in g.edge_list:
                if i == j:
                    np.testing.assert_allclose(N[:, i - 1], 0.0, atol=1e-12)
                else:
                    np.testing.assert_allclose(N[:, i - 1], -N[:, j - 1], atol=1e-12)

    def test_extremal_gap(self):
        for S, g in random_cases(50, seed=41):
            gap = sform_inf_norm_inverse(S) - limit_inf_norm(S, analyze_bipartition(g))
            if g.num_edges == 0:
                assert abs(gap) <= 1e-14
            else:
                assert gap > 0

    def test_norm_monotone_below_reference_for_finite_t(self):
        for S, g in random_cases(15, seed=43):
            if g.num_edges == 0:
                continue
            ref = sform_inf_norm_inverse(S)
            for t in (0.01, 1.0, 100.0, 1e4):
                assert inf_norm(limit_numeric(S, g, t)) < ref


class TestIncidenceRank:
    def test_single_edge(self):
        assert incidence_rank(LoopGraph(2, [(1, 2)])) == 1

    def test_odd_cycle_full_rank(self):
        assert incidence_rank(chain_cycle(5)) == 5

    def test_even_cycle_rank_deficient(self):
        assert incidence_rank(chain_cycle(4)) == 3

    def test_counts_bipartite_components(self):
        rng = trial_rng(47)
        for _ in range(30):
            n = int(rng.integers(1, 11))
            g = random_loop_graph(rng, n, 0.3, 0.2)
            B = analyze_bipartition(g)
            assert incidence_rank(g) == n - B.r


class TestGraphIO:
    def test_roundtrip(self, tmp_path):
        g = LoopGraph(5, [(1, 2), (4, 4), (2, 5)])
        path = tmp_path / "g.edges"
        save_graph(g, path)
        assert load_graph(path).edges == g.edges

    def test_cycle_file(self, tmp_path):
        path = tmp_path / "cycle4.edges"
        path.write_text("4\n1 2\n2 3\n3 4\n1 4\n")
        g = load_graph(path)
        assert g.num_edges == 4 and g.n == 4

    def test_bad_edge_line(self, tmp_path):
        path = tmp_path / "bad.edges"
        path.write_text("3\n1 2\n2 9\n")
        with pytest.raises(GraphFormatError) as err:
            load_graph(path)
        assert err.value.line == 3
