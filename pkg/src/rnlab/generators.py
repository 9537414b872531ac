"""Graph families used throughout the lab.

All generators emit graphs that pass build_graph validation, record the
minimal valid ratio bound K, and are bit-reproducible given a seed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graphs import (
    GraphError,
    Disconnected,
    LayeredBinaryTree,
    WeightedGraph,
    build_graph,
)

LN2 = math.log(2.0)


class InvalidSize(GraphError):
    pass


# Depth at which gen_binary_tree switches to the implicit representation.
MATERIALIZE_DEPTH = 16


def gen_binary_tree(depth: int, beta: float, representation: str = "auto"):
    """Binary tree with depth layers; a layer-k vertex weighs exp(-beta*k).

    Layer k holds 2^k vertices, so layer mass is proportional to
    exp(k*(ln 2 - beta)): the distribution is uniform across layers exactly
    at beta = ln 2, leaf-heavy below it and root-heavy above it.  Returns an
    explicit WeightedGraph for small depths and an implicit
    LayeredBinaryTree beyond MATERIALIZE_DEPTH (or per the representation
    argument).  Both expose the same query surface.
    """
    if depth < 1:
        raise InvalidSize(f"depth must be positive, got {depth}")
    tree = LayeredBinaryTree(depth, beta)
    if representation == "implicit":
        return tree
    if representation == "explicit":
        return tree.materialize()
    if representation != "auto":
        raise ValueError(f"unknown representation {representation!r}")
    return tree.materialize() if depth <= MATERIALIZE_DEPTH else tree


def gen_orbit_tree(depth: int) -> WeightedGraph:
    """Truncated 3-regular tree whose weights realize a boundary flow.

    Every internal vertex sees exactly one neighbor at weight ratio 2 and
    two at ratio 1/2; log-weights are ln 2 times a level function that
    decreases along a distinguished ray from the root.  The truncation keeps
    vertices within graph distance `depth` of the root, so the root's
    radius-`depth` ball is untruncated.
    """
    if depth < 1:
        raise InvalidSize(f"depth must be positive, got {depth}")
    levels = [0]
    edges: list[tuple[int, int]] = []
    queue: list[tuple[int, int, int, str]] = [(0, 0, 0, "root")]
    head = 0
    while head < len(queue):
        v, level, dist, kind = queue[head]
        head += 1
        if dist >= depth:
            continue
        if kind in ("root", "chain"):
            chain = len(levels)
            levels.append(level - 1)
            edges.append((v, chain))
            queue.append((chain, level - 1, dist + 1, "chain"))
            down_count = 2 if kind == "root" else 1
        else:
            down_count = 2
        for _ in range(down_count):
            w = len(levels)
            levels.append(level + 1)
            edges.append((v, w))
            queue.append((w, level + 1, dist + 1, "down"))
    lw = [-LN2 * lev for lev in levels]
    return build_graph(edges, lw, d=3, K=2.0)


def gen_path(n: int, d: int = 2) -> WeightedGraph:
    if n < 1:
        raise InvalidSize(f"path needs at least 1 vertex, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)]
    return build_graph(edges, [0.0] * n, d=d, K=1.0)


def gen_cycle(n: int, d: int = 2) -> WeightedGraph:
    if n < 3:
        raise InvalidSize(f"cycle needs at least 3 vertices, got {n}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    return build_graph(edges, [0.0] * n, d=d, K=1.0)


def gen_grid(rows: int, cols: int) -> WeightedGraph:
    if rows < 1 or cols < 1:
        raise InvalidSize(f"grid needs positive dimensions, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return build_graph(edges, [0.0] * (rows * cols), d=4, K=1.0)


def gen_disjoint_triangles(k: int, d: int = 2) -> WeightedGraph:
    """k disjoint triangles, uniform weights: every ball of every radius sees
    a cycle, so the graph is maximally far from forests locally."""
    if k < 1:
        raise InvalidSize(f"need at least 1 triangle, got {k}")
    edges = []
    for i in range(k):
        a = 3 * i
        edges.extend([(a, a + 1), (a + 1, a + 2), (a, a + 2)])
    return build_graph(edges, [0.0] * (3 * k), d=d, K=1.0)


def gen_theta_graph(arm_lengths: tuple[int, int, int] = (2, 3, 4)) -> WeightedGraph:
    """Two hub vertices joined by three internally disjoint paths."""
    edges = []
    counter = 2
    for length in arm_lengths:
        if length < 1:
            raise InvalidSize("theta arms need at least one edge segment")
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, counter))
            prev = counter
            counter += 1
        edges.append((prev, 1))
    return build_graph(edges, [0.0] * counter, d=3, K=1.0)


def gen_lcf(n: int, shifts: list[int], reps: int) -> WeightedGraph:
    """Hamiltonian cycle plus chords given in LCF notation (uniform weights)."""
    if len(shifts) * reps != n:
        raise InvalidSize("LCF pattern length times repetitions must equal n")
    edge_set = {(i, (i + 1) % n) if i < (i + 1) % n else ((i + 1) % n, i) for i in range(n)}
    for i in range(n):
        s = shifts[i % len(shifts)]
        j = (i + s) % n
        edge_set.add((i, j) if i < j else (j, i))
    return build_graph(sorted(edge_set), [0.0] * n, d=3, K=1.0)


def algebraic_connectivity(G: WeightedGraph) -> float:
    """Second-smallest eigenvalue of the graph Laplacian (dense, n <= 3000)."""
    n = G.n
    if n > 3000:
        raise GraphError("algebraic connectivity check is dense-only (n <= 3000)")
    L = np.zeros((n, n))
    for u, v in G.edges():
        L[u, u] += 1
        L[v, v] += 1
        L[u, v] -= 1
        L[v, u] -= 1
    eigs = np.linalg.eigvalsh(L)
    return float(eigs[1])


def gen_random_regular(
    n: int,
    d: int,
    seed: int,
    gap_threshold: float = 0.1,
    max_tries: int = 300,
) -> WeightedGraph:
    """Random d-regular graph via the pairing model, resampled until simple
    and until the Laplacian spectral gap exceeds gap_threshold."""
    if n * d % 2 != 0:
        raise InvalidSize(f"n*d must be even, got n={n}, d={d}")
    if d >= n:
        raise InvalidSize(f"regular degree {d} needs more than {n} vertices")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        stubs = np.repeat(np.arange(n), d)
        rng.shuffle(stubs)
        pairs = stubs.reshape(-1, 2)
        edge_set: set[tuple[int, int]] = set()
        ok = True
        for a, b in pairs:
            a, b = int(a), int(b)
            if a == b:
                ok = False
                break
            e = (a, b) if a < b else (b, a)
            if e in edge_set:
                ok = False
                break
            edge_set.add(e)
        if not ok:
            continue
        G = build_graph(sorted(edge_set), [0.0] * n, d=d, K=1.0)
        if not _connected(G):
            continue
        if algebraic_connectivity(G) > gap_threshold:
            return G
    raise GraphError(
        f"no {d}-regular graph on {n} vertices with spectral gap > {gap_threshold} "
        f"found in {max_tries} tries"
    )


def _connected(G: WeightedGraph) -> bool:
    if G.n == 0:
        return True
    seen = np.zeros(G.n, dtype=bool)
    stack = [0]
    seen[0] = True
    count = 1
    while stack:
        v = stack.pop()
        for w in G.neighbors(v):
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(int(w))
    return count == G.n


def gen_perturbed_union(n: int, profile: str = "uniform", seed: int = 0) -> WeightedGraph:
    """Path on n^2 vertices joined to a random 3-regular graph on n vertices
    by a single bridge edge.

    Profiles: "uniform" spreads mass evenly; "adversarial" puts half of the
    total mass on the dense part, uniformly within it, which forces the
    recorded ratio bound up to K = n (the bridge edge carries the jump).
    """
    if n < 4:
        raise InvalidSize(f"need n >= 4, got {n}")
    H = gen_random_regular(n, 3, seed=seed)
    n_path = n * n
    edges = [(i, i + 1) for i in range(n_path - 1)]
    for u, v in H.edges():
        edges.append((n_path + u, n_path + v))
    edges.append((n_path - 1, n_path))
    total = n_path + n
    if profile == "uniform":
        lw = [0.0] * total
        K = 1.0
    elif profile == "adversarial":
        lw = [0.0] * n_path + [math.log(n)] * n
        K = float(n)
    else:
        raise ValueError(f"unknown profile {profile!r}")
    return build_graph(edges, lw, d=4, K=K)


def perturbed_union_parts(n: int) -> tuple[range, range]:
    """Vertex ranges (path part, dense part) of gen_perturbed_union(n)."""
    return range(n * n), range(n * n, n * n + n)


def gen_layered_weights(G: WeightedGraph, root: int, mode: str, beta: float = 0.0) -> WeightedGraph:
    """Replace weights by a function of BFS distance from the root.

    Modes: "exp_beta" gives a layer-k vertex weight exp(-beta*k);
    "inverse_sphere" gives weight 1/|S_k| where S_k is the k-th BFS sphere,
    so every sphere carries equal mass.  The ratio bound is recomputed as
    the minimal valid one.  Raises Disconnected when some vertex is
    unreachable from the root.
    """
    n = G.n
    dist = np.full(n, -1, dtype=np.int64)
    dist[root] = 0
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in G.neighbors(v):
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    nxt.append(int(w))
        frontier = nxt
    if int(dist.min()) < 0:
        raise Disconnected("layered weights need every vertex reachable from the root")
    if mode == "exp_beta":
        lw = (-beta * dist).astype(np.float64)
    elif mode == "inverse_sphere":
        sizes = np.bincount(dist)
        lw = -np.log(sizes[dist].astype(np.float64))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    edges = G.edge_list()
    max_diff = 0.0
    for u, v in edges:
        max_diff = max(max_diff, abs(float(lw[u]) - float(lw[v])))
    return build_graph(edges, lw, d=G.d, K=max(math.exp(max_diff), 1.0))


@dataclass
class GeneratorSpec:
    """Declarative request for a generated graph, used by the CLI."""

    family: str
    params: dict = field(default_factory=dict)
    seed: Optional[int] = None


def build_from_spec(spec: GeneratorSpec):
    p = dict(spec.params)
    fam = spec.family
    if fam == "binary_tree":
        return gen_binary_tree(int(p["depth"]), float(p.get("beta", LN2)),
                               representation=p.get("representation", "auto"))
    if fam == "orbit_tree":
        return gen_orbit_tree(int(p["depth"]))
    if fam == "path":
        return gen_path(int(p["n"]), d=int(p.get("d", 2)))
    if fam == "cycle":
        return gen_cycle(int(p["n"]), d=int(p.get("d", 2)))
    if fam == "grid":
        return gen_grid(int(p["rows"]), int(p["cols"]))
    if fam == "random_regular":
        if spec.seed is None:
            raise ValueError("random_regular requires a seed")
        return gen_random_regular(int(p["n"]), int(p.get("d", 3)), seed=spec.seed)
    if fam == "perturbed_union":
        return gen_perturbed_union(int(p["n"]), profile=p.get("profile", "uniform"),
                                   seed=spec.seed or 0)
    if fam == "disjoint_triangles":
        return gen_disjoint_triangles(int(p["k"]), d=int(p.get("d", 2)))
    if fam == "theta":
        arms = p.get("arms", [2, 3, 4])
        return gen_theta_graph(tuple(int(a) for a in arms))
    raise ValueError(f"unknown generator family {fam!r}")
