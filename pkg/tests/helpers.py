"""Shared brute-force oracles and graph factories for the test suite.

Everything here is deliberately naive: permutation search for isomorphism,
subset enumeration for optima.  Slow and obviously correct beats fast.
"""
from __future__ import annotations

import math
from itertools import combinations, permutations

import numpy as np

from rnlab import build_graph
from rnlab.balls import FixedPointLabel, LabeledBall

LN2 = math.log(2.0)

GIRTH8_CUBIC_EDGES = [
    (0, 5), (0, 10), (0, 25), (1, 6), (1, 28), (1, 38), (2, 11), (2, 23),
    (2, 39), (3, 28), (3, 33), (3, 37), (4, 10), (4, 14), (4, 37), (5, 8),
    (5, 9), (6, 18), (6, 25), (7, 14), (7, 27), (7, 32), (8, 11), (8, 35),
    (9, 29), (9, 32), (10, 21), (11, 28), (12, 19), (12, 20), (12, 37),
    (13, 21), (13, 31), (13, 38), (14, 39), (15, 20), (15, 29), (15, 38),
    (16, 18), (16, 34), (16, 39), (17, 22), (17, 26), (17, 32), (18, 26),
    (19, 26), (19, 35), (20, 36), (21, 22), (22, 23), (23, 36), (24, 25),
    (24, 27), (24, 36), (27, 30), (29, 34), (30, 31), (30, 33), (31, 35),
    (33, 34),
]
GIRTH8_CUBIC_N = 40


def ball_from_parts(n, edges, root, labels) -> LabeledBall:
    """Build a LabeledBall over an arbitrary connected graph: BFS depths from
    the root, vertices renumbered in BFS order, labels carried along."""
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    pos = {root: 0}
    order = [root]
    depths = [0]
    head = 0
    while head < len(order):
        v = order[head]
        head += 1
        for w in sorted(adj[v]):
            if w not in pos:
                pos[w] = len(order)
                order.append(w)
                depths.append(depths[pos[v]] + 1)
    assert len(order) == n, "ball graphs must be connected"
    new_edges = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in edges
    )
    return LabeledBall(
        radius=max(depths),
        depths=tuple(depths),
        edges=tuple(new_edges),
        labels=tuple(labels[v] for v in order),
    )


def permuted_ball(ball: LabeledBall, perm) -> LabeledBall:
    """Relabel non-root vertices by perm (perm[0] must be 0)."""
    assert perm[0] == 0
    n = ball.n
    depths = [0] * n
    labels = [None] * n
    for old in range(n):
        depths[perm[old]] = ball.depths[old]
        labels[perm[old]] = ball.labels[old]
    edges = sorted(
        (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
        for u, v in ball.edges
    )
    return LabeledBall(
        radius=ball.radius,
        depths=tuple(depths),
        edges=tuple(edges),
        labels=tuple(labels),
    )


def balls_isomorphic(a: LabeledBall, b: LabeledBall) -> bool:
    """Root-, label-, and adjacency-preserving isomorphism by backtracking."""
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    n = a.n
    adj_a = [set() for _ in range(n)]
    adj_b = [set() for _ in range(n)]
    for u, v in a.edges:
        adj_a[u].add(v)
        adj_a[v].add(u)
    for u, v in b.edges:
        adj_b[u].add(v)
        adj_b[v].add(u)
    sig_a = [(a.depths[v], a.labels[v], len(adj_a[v])) for v in range(n)]
    sig_b = [(b.depths[v], b.labels[v], len(adj_b[v])) for v in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return False
    mapping = [-1] * n
    used = [False] * n

    def extend(v: int) -> bool:
        if v == n:
            return True
        for w in range(n):
            if used[w] or sig_a[v] != sig_b[w]:
                continue
            ok = True
            for u in range(v):
                if (u in adj_a[v]) != (mapping[u] in adj_b[w]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    if a.depths[0] != b.depths[0] or a.labels[0] != b.labels[0]:
        return False
    mapping[0] = 0
    used[0] = True
    return extend(1)


def unlabeled_isomorphic(n, edges_a, edges_b) -> bool:
    """Plain graph isomorphism on a shared vertex count, by permutations."""
    set_a = {tuple(sorted(e)) for e in edges_a}
    set_b = {tuple(sorted(e)) for e in edges_b}
    if len(set_a) != len(set_b):
        return False
    for perm in permutations(range(n)):
        mapped = {tuple(sorted((perm[u], perm[v]))) for u, v in set_a}
        if mapped == set_b:
            return True
    return False


def random_bounded_graph(rng: np.random.Generator, n: int, d: int, K: float,
                         edge_factor: float = 1.2, uniform: bool = False):
    """Random simple graph with max degree d and weights valid for K.

    Log-weights are drawn inside an interval of width ln K, so every edge
    satisfies the ratio bound no matter where it lands.
    """
    target = int(edge_factor * n)
    degree = [0] * n
    edges = set()
    tries = 0
    while len(edges) < target and tries < 20 * target:
        tries += 1
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in edges or degree[u] >= d or degree[v] >= d:
            continue
        edges.add(e)
        degree[u] += 1
        degree[v] += 1
    if uniform:
        lw = [0.0] * n
    else:
        lw = rng.uniform(0.0, math.log(K), size=n).tolist() if K > 1 else [0.0] * n
    return build_graph(sorted(edges), lw, d=d, K=K)


def random_tree(rng: np.random.Generator, n: int, d: int = 4):
    """Random labeled tree with degree cap d (falls back to a path edge)."""
    edges = []
    degree = [0] * n
    for v in range(1, n):
        while True:
            u = int(rng.integers(v))
            if degree[u] < d - 1 or (u == 0 and degree[u] < d):
                break
        edges.append((u, v))
        degree[u] += 1
        degree[v] += 1
    return edges


def reweighted(G, rng: np.random.Generator, K: float):
    """Same topology, fresh random weights valid for K."""
    lw = rng.uniform(0.0, math.log(K), size=G.n).tolist()
    return build_graph(G.edge_list(), lw, d=G.d, K=K)


def brute_force_min_deletion(n, edges, holds) -> frozenset:
    """Smallest edge set whose removal satisfies the predicate (by size)."""
    edges = [tuple(sorted(e)) for e in edges]
    for k in range(len(edges) + 1):
        for drop in combinations(edges, k):
            kept = [e for e in edges if e not in set(drop)]
            if holds(n, kept):
                return frozenset(drop)
    raise AssertionError("property unreachable by deletions")


def brute_force_min_mass_deletion(G, holds):
    """Cheapest deletion set by endpoint mass, over all edge subsets."""
    edges = G.edge_list()
    best, best_set = None, None
    for k in range(len(edges) + 1):
        for drop in combinations(edges, k):
            kept = [e for e in edges if e not in set(drop)]
            if holds(G.n, kept):
                mass = sum(G.p(u) + G.p(v) for u, v in drop)
                if best is None or mass < best:
                    best, best_set = mass, frozenset(drop)
    return best, best_set


def petersen_edges():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return outer + spokes + inner
