"""End-to-end acceptance gate.

Each test covers one release criterion and prints a single PASS/FAIL line
with the measured quantities, so a bare `pytest -s tests/test_acceptance.py`
reads as a checklist.
"""
import math
import time
from fractions import Fraction

import networkx as nx
import numpy as np

from rnlab import (
    build_graph,
    cycle_ratio_product,
    gen_binary_tree,
    gen_cycle,
    gen_disjoint_triangles,
    gen_grid,
    gen_path,
    gen_perturbed_union,
    ratio,
)
from rnlab.distances import (
    PropertySpec,
    absolute_distance,
    absolute_distance_grid_check,
    distance_to_property,
)
from rnlab.local import estimate_matching, local_independent_set
from rnlab.oracles import RadonNikodymOracle
from rnlab.partitions import PartitionInfeasible, find_weighted_partition
from rnlab.scenarios import ExperimentConfig, interior_ball_mass, scenario_report_lines
from rnlab.solvers import exact_weighted_mis
from rnlab.statistics import edge_entropy, statistical_distance, stats_profile
from rnlab.testers import observable_test
from rnlab.testers import test_property as run_tester
from helpers import brute_force_min_mass_deletion, random_bounded_graph, random_tree
from test_balls import _completeness_sweep

LN2 = math.log(2.0)
FOREST = PropertySpec.forest()
BIPARTITE = PropertySpec.bipartite()


def _verdict(num: int, slug: str, checks: list[tuple[bool, str]]) -> None:
    ok = all(c for c, _ in checks)
    line = f"ACCEPTANCE criterion {num} [{slug}]: {'PASS' if ok else 'FAIL'}"
    detail = "; ".join(d for c, d in checks if not c) or checks[-1][1]
    print(f"{line} ({detail})")
    assert ok, line + " — " + detail


def _sampled_layer_freq(beta: float, budget: int, seed: int) -> np.ndarray:
    tree = gen_binary_tree(20, beta, representation="implicit")
    oracle = RadonNikodymOracle(tree, r=0, t=2, seed=seed)
    roots = oracle.sample_roots(budget)
    layers = np.frexp(roots.astype(np.float64) + 1.0)[1] - 1
    return np.bincount(layers, minlength=20) / budget, tree.layer_masses


def test_criterion_1_phase_transition():
    t0 = time.perf_counter()
    freq, exact = _sampled_layer_freq(LN2, 1_000_000, seed=11)
    tv_critical = 0.5 * float(np.abs(freq - exact).sum())
    freq, _ = _sampled_layer_freq(0.0, 1_000_000, seed=11)
    leaf_fraction = float(freq[-1])
    freq, _ = _sampled_layer_freq(2.0 * LN2, 1_000_000, seed=11)
    top6 = float(freq[:6].sum())
    elapsed = time.perf_counter() - t0
    _verdict(1, "phase-transition", [
        (tv_critical <= 0.02, f"tv at critical {tv_critical:.4f}"),
        (0.47 <= leaf_fraction <= 0.53, f"flat leaf fraction {leaf_fraction:.4f}"),
        (top6 > 0.9, f"steep top-6 mass {top6:.4f}"),
        (elapsed < 30.0, f"runtime {elapsed:.1f}s"),
    ])


def test_criterion_2_orbit_tree_convergence():
    checks = []
    for n in (16, 24, 32):
        mass = interior_ball_mass(n, radius=3)
        checks.append(
            (mass >= 1.0 - 8.0 / n, f"depth {n} interior mass {mass:.6f}")
        )
    _verdict(2, "orbit-tree-convergence", checks)


def test_criterion_3_edge_entropy():
    h = edge_entropy(gen_binary_tree(100, LN2, representation="implicit"))
    checks = [(abs(h - LN2) <= 0.05, f"critical tree H_edge {h:.4f} vs ln2")]
    rng = np.random.default_rng(12)
    violations = 0
    for _ in range(100):
        n = int(rng.integers(5, 40))
        d = int(rng.integers(2, 6))
        G = random_bounded_graph(rng, n, d, K=4.0)
        if not edge_entropy(G) < G.d * math.log(G.K):
            violations += 1
    checks.append((violations == 0, f"{violations} bound violations in 100"))
    _verdict(3, "edge-entropy", checks)


def _is_forest(n: int, kept) -> bool:
    H = nx.Graph()
    H.add_nodes_from(range(n))
    H.add_edges_from(kept)
    return nx.is_forest(H)


def test_criterion_4_distance_oracles():
    checks = []
    for n in range(3, 13):
        G = gen_cycle(n)
        val = distance_to_property(G, FOREST)
        ref, _ = brute_force_min_mass_deletion(G, _is_forest)
        checks.append(
            (abs(val - 2.0 / n) < 1e-12 and abs(val - ref) < 1e-12,
             f"C_{n} distance {val:.6f}")
        )
    for n in range(3, 9):
        G = gen_cycle(n)
        lp, _ = absolute_distance(G, FOREST, K=2, exact=True)
        grid = absolute_distance_grid_check(G, FOREST, K=2, steps=2 * n)
        agree = lp == Fraction(2, n) and abs(float(lp) - float(grid)) <= 1e-9
        checks.append((agree, f"C_{n} absolute {lp}"))
    _verdict(4, "distance-oracles", checks)


def test_criterion_5_estimators_vs_exact():
    t0 = time.perf_counter()
    bases = [
        gen_path(120),
        gen_cycle(121),
        gen_binary_tree(7, 0.0, representation="explicit"),
        gen_grid(12, 12),
    ]
    fails = {0.05: 0, 0.1: 0}
    pairs = 0
    for base in bases:
        for w in range(25):
            rng = np.random.default_rng(1000 + w)
            lw = rng.uniform(-LN2, LN2, size=base.n)
            G = build_graph(base.edge_list(), lw, d=base.d, K=4.0)
            _, exact = exact_weighted_mis(G)
            for eps in (0.05, 0.1):
                _, app = local_independent_set(G, eps, seed=w)
                pairs += 1
                if not abs(app - exact) < eps:
                    fails[eps] += 1
    matching_errors = []
    for rows, cols in ((12, 12), (10, 10)):
        m_app = estimate_matching(gen_grid(rows, cols), 0.1, seed=0)
        matching_errors.append(abs(m_app - 0.5))
    elapsed = time.perf_counter() - t0
    _verdict(5, "estimators-vs-exact", [
        (fails[0.05] <= pairs // 2 * 0.01, f"eps=0.05 fails {fails[0.05]}/{pairs // 2}"),
        (fails[0.1] <= pairs // 2 * 0.01, f"eps=0.10 fails {fails[0.1]}/{pairs // 2}"),
        (max(matching_errors) < 0.05, f"grid matching err {max(matching_errors):.4f}"),
        (elapsed < 300.0, f"runtime {elapsed:.1f}s"),
    ])


def test_criterion_6_tester_contract():
    members = [
        (gen_path(40), FOREST),
        (gen_binary_tree(5, LN2), FOREST),
        (gen_grid(6, 6), BIPARTITE),
        (gen_cycle(16), BIPARTITE),
        (gen_path(30), BIPARTITE),
    ]
    false_rejections = 0
    trials = 0
    for seed in range(2000):
        for G, P in members:
            trials += 1
            if not run_tester(G, P, 0.3, seed=seed).accepted:
                false_rejections += 1
    # distances certified by criterion 4 and the corresponding unit suite:
    # C5/forest 0.4, C6/forest 1/3, triangles 2/3 under both properties
    far = [
        (gen_cycle(5), FOREST),
        (gen_cycle(6), FOREST),
        (gen_disjoint_triangles(8), FOREST),
        (gen_disjoint_triangles(8), BIPARTITE),
    ]
    epsilon = 0.25
    rates = []
    for G, P in far:
        rejections = sum(
            0 if run_tester(G, P, epsilon, seed=seed).accepted else 1
            for seed in range(500)
        )
        rates.append(rejections / 500)
    _verdict(6, "tester-contract", [
        (trials == 10_000 and false_rejections == 0,
         f"{false_rejections} false rejections in {trials}"),
        (min(rates) >= 1.0 - epsilon, f"far rejection rates {rates}"),
    ])


def test_criterion_7_observability():
    rng = np.random.default_rng(7)
    forests = [
        gen_path(30),
        gen_binary_tree(5, 0.0),
        build_graph(random_tree(rng, 24), [0.0] * 24, d=8, K=1.0),
        build_graph([(0, i) for i in range(1, 7)], [0.0] * 7, d=6, K=1.0),
    ]
    checks = []
    for i, G in enumerate(forests):
        a = observable_test(G, FOREST, 0.2)
        b = observable_test(G, FOREST, 0.2)
        checks.append(
            (a.accepted and (a.verdict, a.evidence) == (b.verdict, b.evidence),
             f"forest {i} accepted")
        )
    for n in (12, 15, 20, 50):
        checks.append(
            (observable_test(gen_cycle(n), FOREST, 0.2).accepted, f"C_{n} accepted")
        )
    for n in range(3, 11):
        v = observable_test(gen_cycle(n), FOREST, 0.2)
        checks.append((v.verdict == "REJECT", f"C_{n} rejected"))
    _verdict(7, "observability", checks)


def test_criterion_8_perturbation_sensitivity():
    path_profile = stats_profile(gen_path(32 * 32, d=4), 3, t=2)
    J_uniform = gen_perturbed_union(32, profile="uniform", seed=0)
    J_adv = gen_perturbed_union(32, profile="adversarial", seed=0)
    d_uniform = statistical_distance(stats_profile(J_uniform, 3, t=2), path_profile, 3)
    d_adv = statistical_distance(stats_profile(J_adv, 3, t=2), path_profile, 3)
    try:
        find_weighted_partition(J_adv, 0.05)
        infeasible = False
    except PartitionInfeasible:
        infeasible = True
    _verdict(8, "perturbation-sensitivity", [
        (d_uniform <= 0.05, f"uniform d_S {d_uniform:.4f}"),
        (d_adv >= 0.2, f"adversarial d_S {d_adv:.4f}"),
        (infeasible, "adversarial partition infeasible at 0.05"),
    ])


def _random_edge_matching(rng, G):
    edges = list(G.edge_list())
    rng.shuffle(edges)
    used: set[int] = set()
    pairs = []
    for u, v in edges:
        if u in used or v in used:
            continue
        used.update((u, v))
        pairs.append((u, v) if rng.random() < 0.5 else (v, u))
    return pairs


def test_criterion_9_infrastructure():
    rng = np.random.default_rng(99)
    worst = 0.0
    for _ in range(1000):
        n = int(rng.integers(5, 51))
        d = int(rng.integers(2, 7))
        G = random_bounded_graph(rng, n, d, K=float(rng.uniform(1.5, 8.0)))
        pairs = _random_edge_matching(rng, G)
        lhs = sum(G.p(a) * ratio(G, a, b) for a, b in pairs)
        rhs = sum(G.p(b) for _, b in pairs)
        worst = max(worst, abs(lhs - rhs))
    checks = [(worst <= 1e-12, f"bijection identity worst {worst:.2e}")]

    exact_products = 0
    for trial in range(200):
        n = int(rng.integers(3, 30))
        lw = rng.uniform(-2.0, 2.0, size=n).tolist()
        C = build_graph(
            [(i, (i + 1) % n) for i in range(n)], lw, d=2, K=float(math.exp(4.0))
        )
        start = int(rng.integers(n))
        walk = [(start + i) % n for i in range(n)]
        if cycle_ratio_product(C, walk) == 1.0:
            exact_products += 1
    checks.append((exact_products == 200, f"{exact_products}/200 cycle products exact"))

    _completeness_sweep(max_n=6)
    checks.append((True, "canonical key complete on <=6-vertex balls"))

    params = {"depth": 10, "budget": 50_000, "betas": [0.0, 0.4, LN2, 1.2]}
    reports = [
        "\n".join(
            scenario_report_lines(
                ExperimentConfig("phase_transition", params, seed=5, threads=k)
            )
        ).encode()
        for k in (1, 2, 4)
    ]
    checks.append(
        (reports[0] == reports[1] == reports[2], "reports byte-identical across threads")
    )
    _verdict(9, "infrastructure-invariants", checks)
