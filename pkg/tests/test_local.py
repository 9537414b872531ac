import math

import numpy as np
import pytest

from rnlab import (
    GraphError,
    LocalRule,
    RuleIncomplete,
    build_graph,
    canonicalize_decorated,
    draw_vertex_bits,
    estimate_matching,
    exact_matching,
    exact_stats,
    exact_weighted_mis,
    extract_ball_with_map,
    gen_cycle,
    gen_grid,
    gen_path,
    gen_random_regular,
    is_independent,
    local_independent_set,
    rank_rule,
    run_local_rule,
    table_rule,
    tv,
)
from helpers import GIRTH8_CUBIC_EDGES, GIRTH8_CUBIC_N, random_bounded_graph

LN2 = math.log(2.0)


class TestVertexBits:
    def test_deterministic(self):
        assert draw_vertex_bits(20, 16, seed=7) == draw_vertex_bits(20, 16, seed=7)

    def test_seed_changes_bits(self):
        assert draw_vertex_bits(20, 16, seed=7) != draw_vertex_bits(20, 16, seed=8)

    def test_bit_width(self):
        for b in draw_vertex_bits(100, 5, seed=0):
            assert 0 <= b < 32

    def test_per_vertex_streams_are_stable(self):
        # vertex v's bits do not depend on how many other vertices exist
        short = draw_vertex_bits(5, 32, seed=3)
        long = draw_vertex_bits(50, 32, seed=3)
        assert long[:5] == short


class TestRankRule:
    def test_output_independent(self):
        rule = rank_rule()
        for G in (gen_cycle(6), gen_path(9), gen_grid(4, 4)):
            for seed in range(5):
                S = run_local_rule(G, rule, t=2, seed=seed)
                assert is_independent(G, S)
                assert len(S) > 0

    def test_deterministic_in_seed(self, c6_uniform):
        rule = rank_rule()
        a = run_local_rule(c6_uniform, rule, t=2, seed=11)
        b = run_local_rule(c6_uniform, rule, t=2, seed=11)
        assert a == b

    def test_explicit_bits_pick_local_maxima(self, c6_uniform):
        rule = rank_rule()
        bits = [5, 1, 3, 0, 4, 2]
        S = run_local_rule(c6_uniform, rule, t=2, seed=0, bits=bits)
        # 5 beats neighbors 1 and 2; 4 beats 0 and 2; 3 beats 1 and 0
        assert S == frozenset({0, 2, 4})

    def test_anonymity_under_relabeling(self, rng):
        # apply a vertex permutation to graph and bits; members must map along
        rule = rank_rule()
        G = random_bounded_graph(rng, 14, 3, 2.0, edge_factor=1.3)
        bits = draw_vertex_bits(G.n, 32, seed=5)
        perm = [int(v) for v in rng.permutation(G.n)]
        edges_p = sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in G.edges()
        )
        lw_p = [0.0] * G.n
        bits_p = [0] * G.n
        for v in range(G.n):
            lw_p[perm[v]] = float(G.log_weights[v])
            bits_p[perm[v]] = bits[v]
        H = build_graph(edges_p, lw_p, d=G.d, K=G.K)
        S_G = run_local_rule(G, rule, t=2, seed=0, bits=bits)
        S_H = run_local_rule(H, rule, t=2, seed=0, bits=bits_p)
        assert S_H == frozenset(perm[v] for v in S_G)


class TestTableRule:
    def test_manual_built_from_graph(self, c6_uniform):
        # record the rank rule's decisions, then replay them from the table
        base = rank_rule()
        bits = draw_vertex_bits(c6_uniform.n, 32, seed=9)
        table = {}
        for v in range(c6_uniform.n):
            ball, vmap = extract_ball_with_map(c6_uniform, v, 1, 2)
            dec = canonicalize_decorated(ball, [bits[u] for u in vmap])
            table[dec.key] = base.decide(dec)
        replay = table_rule(1, 32, table)
        assert run_local_rule(c6_uniform, replay, t=2, seed=0, bits=bits) == \
            run_local_rule(c6_uniform, base, t=2, seed=0, bits=bits)

    def test_unknown_ball_is_an_error(self, p3_uniform):
        empty = table_rule(1, 1, {})
        with pytest.raises(RuleIncomplete):
            run_local_rule(p3_uniform, empty, t=2, seed=0)

    def test_rule_record_fields(self):
        rule = rank_rule(radius=2, bits_per_vertex=8)
        assert isinstance(rule, LocalRule)
        assert rule.radius == 2 and rule.bits_per_vertex == 8


class TestLocalIndependentSet:
    def test_single_vertex(self):
        G = build_graph([], [0.0], d=2, K=1.0)
        S, val = local_independent_set(G, 0.5)
        assert S == frozenset({0}) and val == 1.0

    def test_path_exact_at_final_rung(self):
        G = gen_path(4)
        S, val = local_independent_set(G, 0.3)
        assert val == pytest.approx(0.5)
        assert is_independent(G, S)

    def test_heavy_star(self):
        lw = [math.log(6.0), 0.0, 0.0, 0.0, 0.0]
        G = build_graph([(0, i) for i in range(1, 5)], lw, d=4, K=6.0)
        S, val = local_independent_set(G, 0.2)
        assert S == frozenset({0})
        assert val == pytest.approx(0.6)

    def test_cycle(self):
        G = gen_cycle(12)
        S, val = local_independent_set(G, 0.25)
        assert val == pytest.approx(0.5)

    def test_error_bound_on_random_instances(self, rng):
        eps = 0.2
        for _ in range(10):
            G = random_bounded_graph(rng, 36, 3, 2.0, edge_factor=1.2)
            S, val = local_independent_set(G, eps, seed=3)
            _, exact = exact_weighted_mis(G)
            assert val <= exact + 1e-9
            assert val >= exact - eps / 2 - 1e-9
            assert is_independent(G, S)

    def test_expander_falls_back_with_warning(self):
        G = gen_random_regular(60, 3, seed=1)
        with pytest.warns(UserWarning, match="greedy"):
            S, val = local_independent_set(G, 0.3, seed=2)
        assert is_independent(G, S)
        assert val > 0.0


class TestEstimateMatching:
    def test_single_edge(self):
        assert estimate_matching(gen_path(2), 0.5) == 0.5

    def test_long_path(self):
        est = estimate_matching(gen_path(50), 0.2)
        assert est <= 0.5 + 1e-12
        assert est >= 0.5 - 0.1 - 1e-9

    def test_grid(self):
        est = estimate_matching(gen_grid(10, 10), 0.5)
        assert est <= 0.5 + 1e-12
        assert est >= 0.5 - 0.25 - 1e-9

    def test_long_cycle(self):
        est = estimate_matching(gen_cycle(1000), 0.1)
        assert est <= 0.5 + 1e-12
        assert est >= 0.5 - 0.05 - 1e-9

    def test_estimates_never_exceed_truth(self, rng):
        for _ in range(8):
            G = random_bounded_graph(rng, 30, 3, 1.0, uniform=True)
            est = estimate_matching(G, 0.4)
            assert est <= exact_matching(G) + 1e-12

    def test_rejects_weighted_graphs(self, weighted_p3):
        with pytest.raises(GraphError):
            estimate_matching(weighted_p3, 0.2)


class TestIndistinguishablePair:
    """Two cubic graphs whose radius-3 neighborhoods are statistically
    identical while their independence ratios differ by 1/20: any estimator
    reading only radius-3 ball statistics must err on one of them."""

    def _pair(self):
        n = GIRTH8_CUBIC_N
        G = build_graph(GIRTH8_CUBIC_EDGES, [0.0] * n, d=3, K=1.0)
        cover_edges = sorted(
            e for u, v in GIRTH8_CUBIC_EDGES for e in ((u, n + v), (v, n + u))
        )
        H = build_graph(cover_edges, [0.0] * (2 * n), d=3, K=1.0)
        return G, H

    def test_ball_statistics_agree_up_to_radius_three(self):
        G, H = self._pair()
        for r in (1, 2, 3):
            assert tv(exact_stats(G, r, 2), exact_stats(H, r, 2)) < 1e-12

    def test_independence_ratios_differ(self):
        G, H = self._pair()
        _, alpha_g = exact_weighted_mis(G)
        _, alpha_h = exact_weighted_mis(H)
        assert alpha_g == pytest.approx(0.45)
        assert alpha_h == pytest.approx(0.50)
