"""Sampling and observation oracles.

The relative-weight oracle samples a root by the hidden vertex distribution
and returns its radius-r ball with truncated relative labels.  Query i always
draws from a fixed 4-word block of a counter-based random stream, so batches
can be produced in parallel or replayed one index at a time with identical
results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from collections import deque
from typing import Optional

import numpy as np

from .balls import FixedPointLabel, LabeledBall, extract_ball, truncate_label, unrooted_key
from .graphs import GraphError, LayeredBinaryTree, WeightedGraph

WORDS_PER_QUERY = 4
_TWO64 = float(2**64)


class BudgetExceeded(GraphError):
    pass


@dataclass
class OracleConfig:
    radius: int
    depth: int = 2
    query_budget: int = 1000
    seed: int = 0


class AliasSampler:
    """Walker alias table over a finite distribution, fed by raw 64-bit words."""

    def __init__(self, probs: np.ndarray):
        probs = np.asarray(probs, dtype=np.float64)
        n = len(probs)
        scaled = probs * (n / probs.sum())
        self.prob = np.ones(n)
        self.alias = np.arange(n)
        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        scaled = scaled.copy()
        while small and large:
            s = small.pop()
            l = large.pop()
            self.prob[s] = scaled[s]
            self.alias[s] = l
            scaled[l] = scaled[l] - (1.0 - scaled[s])
            (small if scaled[l] < 1.0 else large).append(l)
        self.n = n

    def pick(self, word_index: np.ndarray, word_coin: np.ndarray) -> np.ndarray:
        u = word_index / _TWO64
        idx = np.minimum((u * self.n).astype(np.int64), self.n - 1)
        coin = word_coin / _TWO64
        return np.where(coin < self.prob[idx], idx, self.alias[idx])


def _raw_words(seed: int, start_query: int, count: int) -> np.ndarray:
    bg = np.random.Philox(key=seed)
    # Philox.advance counts 4-word counter blocks, not words
    bg.advance(WORDS_PER_QUERY * start_query // 4)
    return bg.random_raw(WORDS_PER_QUERY * count)


class RadonNikodymOracle:
    """Samples roots by the vertex distribution and serves labeled balls.

    Works on explicit graphs (alias table over all vertices) and on
    implicitly represented layered trees (alias table over layers plus a
    uniform index within the layer).
    """

    def __init__(self, G, r: int, t: int, seed: int = 0):
        self.G = G
        self.r = int(r)
        self.t = int(t)
        self.seed = int(seed)
        self._ball_cache: dict = {}
        if isinstance(G, LayeredBinaryTree):
            self._layer_alias = AliasSampler(G.layer_masses)
            self._mode = "layered"
            if G.n >= 2**62:
                raise GraphError("sampling supports at most 2^62 vertices")
        else:
            self._vertex_alias = AliasSampler(G.probabilities)
            self._mode = "explicit"

    def sample_roots(self, count: int, start_query: int = 0) -> np.ndarray:
        """Roots for queries [start_query, start_query + count)."""
        words = _raw_words(self.seed, start_query, count)
        w0 = words[0::WORDS_PER_QUERY]
        w1 = words[1::WORDS_PER_QUERY]
        if self._mode == "explicit":
            return self._vertex_alias.pick(w0, w1)
        layers = self._layer_alias.pick(w0, w1)
        w2 = words[2::WORDS_PER_QUERY]
        sizes = (np.int64(1) << layers.astype(np.int64))
        offsets = (w2 % sizes.astype(np.uint64)).astype(np.int64)
        return (sizes - 1) + offsets

    def query(self, index: int) -> LabeledBall:
        root = int(self.sample_roots(1, start_query=index)[0])
        return self.ball_at(root)

    def ball_at(self, root: int) -> LabeledBall:
        cache_key = self.G.orbit_of(root) if hasattr(self.G, "orbit_of") else None
        if cache_key is None:
            cache_key = ("v", root)
        ball = self._ball_cache.get(cache_key)
        if ball is None:
            ball = extract_ball(self.G, root, self.r, self.t)
            self._ball_cache[cache_key] = ball
        return ball


def rn_query(G, r: int, t: int, rng: np.random.Generator) -> LabeledBall:
    """One-off query drawing two uniforms from the caller's generator."""
    sampler = getattr(G, "_rnlab_alias", None)
    if sampler is None or sampler.n != getattr(G, "n", -1):
        if isinstance(G, LayeredBinaryTree):
            sampler = AliasSampler(G.layer_masses)
        else:
            sampler = AliasSampler(G.probabilities)
        try:
            G._rnlab_alias = sampler
        except AttributeError:
            pass
    w = rng.integers(0, 2**64, size=3, dtype=np.uint64)
    if isinstance(G, LayeredBinaryTree):
        layer = int(sampler.pick(w[0:1], w[1:2])[0])
        size = 1 << layer
        root = (size - 1) + int(w[2] % size)
    else:
        root = int(sampler.pick(w[0:1], w[1:2])[0])
    return extract_ball(G, root, r, t)


def uniform_query(G, r: int, rng: np.random.Generator, t: int = 2) -> LabeledBall:
    """Classical oracle: uniform root, all labels forced to 1.00."""
    n = G.n
    if n >= 2**62:
        raise GraphError("sampling supports at most 2^62 vertices")
    root = int(rng.integers(0, n))
    ball = extract_ball(G, root, r, t)
    unit = truncate_label(1.0, t)
    return LabeledBall(
        radius=ball.radius,
        depths=ball.depths,
        edges=ball.edges,
        labels=(unit,) * ball.n,
    )


# ---------------------------------------------------------------------------
# Observation tables: which connected graphs with at most s vertices occur as
# induced subgraphs.
# ---------------------------------------------------------------------------


@dataclass
class ObservationTable:
    depth: int
    degree_bound: int
    entries: dict[str, bool]
    scope: str = "all"

    def query(self, key_hex: str) -> bool:
        return self.entries[key_hex]

    def positives(self) -> set[str]:
        return {k for k, v in self.entries.items() if v}


def path_key(k: int) -> str:
    return unrooted_key(k, [(i, i + 1) for i in range(k - 1)]).hex()


def cycle_key(k: int) -> str:
    return unrooted_key(k, [(i, (i + 1) % k) for i in range(k)]).hex()


def enumerate_connected_classes(s: int, d: int, cap: int = 20_000) -> dict[bytes, tuple[int, tuple]]:
    """All isomorphism classes of connected graphs with <= s vertices and max
    degree <= d, found by growing graphs one vertex or one edge at a time and
    deduplicating on canonical keys."""
    if s < 1:
        raise ValueError("depth must be at least 1")
    start = (1, ())
    seen: dict[bytes, tuple[int, tuple]] = {unrooted_key(1, []): start}
    frontier = [start]
    while frontier:
        nxt = []
        for n, edges in frontier:
            deg = [0] * n
            for u, v in edges:
                deg[u] += 1
                deg[v] += 1
            children = []
            if n < s:
                for mask in range(1, 1 << n):
                    t = [v for v in range(n) if mask >> v & 1]
                    if len(t) > d or any(deg[v] + 1 > d for v in t):
                        continue
                    children.append((n + 1, tuple(sorted(edges + tuple((v, n) for v in t)))))
            es = set(edges)
            for u in range(n):
                for v in range(u + 1, n):
                    if (u, v) not in es and deg[u] < d and deg[v] < d:
                        children.append((n, tuple(sorted(edges + ((u, v),)))))
            for child in children:
                key = unrooted_key(child[0], list(child[1]))
                if key not in seen:
                    if len(seen) >= cap:
                        raise BudgetExceeded(
                            f"more than {cap} connected classes at depth {s}"
                        )
                    seen[key] = child
                    nxt.append(child)
        frontier = nxt
    return seen


def _connected_induced_keys(G, s: int, subset_cap: int = 500_000) -> set[bytes]:
    found: set[bytes] = set()
    visited: set[frozenset] = set()
    n = G.n
    queue: deque[frozenset] = deque()
    for v in range(n):
        fs = frozenset((v,))
        visited.add(fs)
        queue.append(fs)
    while queue:
        S = queue.popleft()
        verts = sorted(S)
        pos = {v: i for i, v in enumerate(verts)}
        edges = [
            (pos[u], pos[v])
            for u in verts
            for v in G.neighbors(u)
            if int(v) in S and u < int(v)
        ]
        found.add(unrooted_key(len(verts), edges))
        if len(S) < s:
            for u in verts:
                for w in G.neighbors(u):
                    w = int(w)
                    if w not in S:
                        S2 = S | {w}
                        if S2 not in visited:
                            if len(visited) >= subset_cap:
                                raise BudgetExceeded(
                                    "induced subgraph enumeration exceeded its cap"
                                )
                            visited.add(S2)
                            queue.append(S2)
    return found


def observe(G, s: int, class_cap: int = 20_000) -> ObservationTable:
    """Exact observing oracle: for every connected class H with <= s vertices
    and max degree <= d, report whether H occurs in G as an induced subgraph."""
    d_eff = min(G.d, s - 1) if s > 1 else 0
    classes = enumerate_connected_classes(s, d_eff, cap=class_cap)
    present = _connected_induced_keys(G, s)
    entries = {key.hex(): key in present for key in classes}
    return ObservationTable(depth=s, degree_bound=G.d, entries=entries)


# ---------------------------------------------------------------------------
# Exact cycle observations.
# ---------------------------------------------------------------------------


def girth(G) -> float:
    """Length of the shortest cycle, or inf for forests.  BFS from every
    vertex; the minimum candidate over all roots is exact."""
    best = math.inf
    n = G.n
    for root in range(n):
        depth = {root: 0}
        parent = {root: -1}
        dq = deque([root])
        while dq:
            v = dq.popleft()
            if 2 * depth[v] >= best:
                continue
            for w in G.neighbors(v):
                w = int(w)
                if w not in depth:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    dq.append(w)
                elif w != parent[v]:
                    best = min(best, depth[v] + depth[w] + 1)
    return best


def odd_girth(G) -> float:
    """Length of the shortest odd cycle, or inf when bipartite.  Exact via
    shortest paths in the bipartite double cover."""
    best = math.inf
    n = G.n
    for root in range(n):
        dist = {(root, 0): 0}
        dq = deque([(root, 0)])
        while dq:
            v, side = dq.popleft()
            dcur = dist[(v, side)]
            if dcur >= best:
                continue
            for w in G.neighbors(v):
                state = (int(w), side ^ 1)
                if state not in dist:
                    dist[state] = dcur + 1
                    dq.append(state)
        if (root, 1) in dist:
            best = min(best, dist[(root, 1)])
    return best


def induced_cycle_lengths(G, s: int, step_cap: int = 2_000_000) -> set[int]:
    """Lengths (<= s) of induced cycles in G, by DFS over induced paths.

    The minimal vertex of each cycle anchors the search and the orientation
    is fixed by requiring the second path vertex to be smaller than the
    closing vertex, so each cycle is found once.
    """
    if girth(G) > s:
        return set()
    adj = {v: set(int(w) for w in G.neighbors(v)) for v in range(G.n)}
    lengths: set[int] = set()
    steps = 0

    def extend(path: list[int], banned: set[int]) -> None:
        nonlocal steps
        steps += 1
        if steps > step_cap:
            raise BudgetExceeded("induced cycle search exceeded its step cap")
        last = path[-1]
        root = path[0]
        for u in sorted(adj[last]):
            if u <= root or u in banned:
                continue
            if len(path) == 1:
                extend(path + [u], banned | {u})
                continue
            if any(x in adj[u] for x in path[1:-1]):
                continue
            if root in adj[u]:
                if path[1] < u:
                    lengths.add(len(path) + 1)
                continue
            if len(path) + 1 < s:
                extend(path + [u], banned | {u})

    for v in range(G.n):
        extend([v], {v})
    return lengths
