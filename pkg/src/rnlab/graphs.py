"""Bounded-degree graphs carrying vertex log-weights with a bounded edge ratio.

A weighted graph here is a finite simple graph with maximum degree at most d
together with a probability distribution on its vertices, stored as
unnormalized log-weights.  The distribution is constrained so that the ratio
p(u)/p(v) across every edge {u, v} lies in [1/K, K].  Probabilities are always
derived from the log-weights through a log-sum-exp normalizer, so graphs with
astronomically many vertices stay representable as long as the weights have a
closed form.
"""
from __future__ import annotations

import json
import math
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

# Multiplicative slack used when validating edge ratios.  Log-weights are
# floats, so a ratio intended to sit exactly at the bound K can land one or
# two ulps above it.
RATIO_SLACK = 1e-9


class GraphError(ValueError):
    """Base class for graph construction and query errors."""


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class DegreeExceeded(GraphError):
    pass


class RatioBoundViolated(GraphError):
    pass


class NotAdjacent(GraphError):
    pass


class Disconnected(GraphError):
    pass


class TooLarge(GraphError):
    """An operation was asked to materialize or search beyond its size cap."""


def _log_sum_exp(values: np.ndarray) -> float:
    m = float(np.max(values))
    return m + math.log(float(np.sum(np.exp(values - m))))


class WeightedGraph:
    """Explicit graph in CSR form with per-vertex log-weights.

    Instances are immutable; build them through :func:`build_graph` which
    validates degrees, simplicity and the edge ratio bound.
    """

    def __init__(
        self,
        indptr: np.ndarray,
        indices: np.ndarray,
        log_weights: np.ndarray,
        degree_bound: int,
        ratio_bound: float,
        orbit_labels: Optional[np.ndarray] = None,
    ):
        self._indptr = indptr
        self._indices = indices
        self.log_weights = log_weights
        self.d = int(degree_bound)
        self.K = float(ratio_bound)
        self._orbit_labels = orbit_labels
        for arr in (self._indptr, self._indices, self.log_weights):
            arr.setflags(write=False)
        self._log_z: Optional[float] = None
        self._probs: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return len(self.log_weights)

    @property
    def edge_count(self) -> int:
        return len(self._indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self._indices[self._indptr[v] : self._indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def log_weight(self, v: int) -> float:
        return float(self.log_weights[v])

    @property
    def log_z(self) -> float:
        if self._log_z is None:
            self._log_z = _log_sum_exp(self.log_weights)
        return self._log_z

    @property
    def probabilities(self) -> np.ndarray:
        """Vertex distribution as a dense array summing to 1 up to float error."""
        if self._probs is None:
            p = np.exp(self.log_weights - self.log_z)
            p.setflags(write=False)
            self._probs = p
        return self._probs

    def p(self, v: int) -> float:
        return float(self.probabilities[v])

    def adjacent(self, x: int, y: int) -> bool:
        return bool(np.any(self.neighbors(x) == y))

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in self.neighbors(u):
                if u < v:
                    yield (u, int(v))

    def edge_list(self) -> list[tuple[int, int]]:
        return list(self.edges())

    # Vertex orbits under weight-preserving automorphisms, when the
    # constructor knows them.  Statistics use these to collapse identical
    # neighborhoods; correctness is cross-checked against the generic path.
    def orbit_reps(self) -> Optional[list[tuple[int, float]]]:
        if self._orbit_labels is None:
            return None
        reps: dict[int, int] = {}
        masses: dict[int, float] = {}
        p = self.probabilities
        for v, lab in enumerate(self._orbit_labels):
            lab = int(lab)
            reps.setdefault(lab, v)
            masses[lab] = masses.get(lab, 0.0) + float(p[v])
        return [(reps[lab], masses[lab]) for lab in sorted(reps)]

    def orbit_of(self, v: int) -> Optional[int]:
        if self._orbit_labels is None:
            return None
        return int(self._orbit_labels[v])

    def structurally_equal(self, other: "WeightedGraph") -> bool:
        return (
            self.n == other.n
            and self.d == other.d
            and self.K == other.K
            and np.array_equal(self._indptr, other._indptr)
            and np.array_equal(self._indices, other._indices)
            and np.array_equal(self.log_weights, other.log_weights)
        )

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "K": self.K,
            "edges": [[u, v] for u, v in self.edges()],
            "log_weights": [float(w) for w in self.log_weights],
        }

    def __repr__(self) -> str:
        return f"WeightedGraph(n={self.n}, d={self.d}, K={self.K}, m={self.edge_count})"


def build_graph(
    edge_list: Iterable[Sequence[int]],
    log_weights: Sequence[float],
    d: int,
    K: float,
    orbit_labels: Optional[np.ndarray] = None,
) -> WeightedGraph:
    """Validate and assemble a WeightedGraph.

    Raises SelfLoop, DuplicateEdge, DegreeExceeded or RatioBoundViolated when
    the input breaks the corresponding constraint.  K = 1 is accepted and
    means the distribution is constant across every connected component.
    """
    lw = np.asarray(log_weights, dtype=np.float64)
    n = len(lw)
    if d < 1:
        raise GraphError(f"degree bound must be positive, got {d}")
    if K < 1.0:
        raise GraphError(f"ratio bound must be at least 1, got {K}")
    if not np.all(np.isfinite(lw)):
        raise GraphError("log-weights must be finite")

    seen: set[tuple[int, int]] = set()
    us: list[int] = []
    vs: list[int] = []
    log_k = math.log(K) * (1.0 + RATIO_SLACK) + RATIO_SLACK
    for e in edge_list:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) references a vertex outside [0, {n})")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} appears twice")
        seen.add(key)
        diff = abs(float(lw[u]) - float(lw[v]))
        if diff > log_k:
            raise RatioBoundViolated(
                f"edge {key} has weight ratio exp({diff:.6g}) > K={K}"
            )
        us.append(u)
        vs.append(v)

    deg = np.zeros(n, dtype=np.int64)
    for u, v in zip(us, vs):
        deg[u] += 1
        deg[v] += 1
    if n and int(deg.max(initial=0)) > d:
        worst = int(np.argmax(deg))
        raise DegreeExceeded(f"vertex {worst} has degree {int(deg[worst])} > d={d}")

    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg, out=indptr[1:])
    indices = np.zeros(len(us) * 2, dtype=np.int64)
    fill = indptr[:-1].copy()
    for u, v in zip(us, vs):
        indices[fill[u]] = v
        fill[u] += 1
        indices[fill[v]] = u
        fill[v] += 1
    for v in range(n):
        seg = indices[indptr[v] : indptr[v + 1]]
        seg.sort()
    return WeightedGraph(indptr, indices, lw, d, K, orbit_labels=orbit_labels)


def ratio(G, x: int, y: int) -> float:
    """Discrete derivative p(y)/p(x) across the edge {x, y}."""
    nbrs = G.neighbors(x)
    adjacent = any(int(w) == y for w in nbrs) if not isinstance(nbrs, np.ndarray) else bool(np.any(nbrs == y))
    if not adjacent:
        raise NotAdjacent(f"vertices {x} and {y} are not adjacent")
    return math.exp(G.log_weight(y) - G.log_weight(x))


def walk_log_ratio(G, walk, closed: bool = False) -> float:
    """Log of the edge-label product along a walk; closed appends the wrap
    edge from the last vertex back to the first.

    Heads and tails of a closed walk carry the same log-weight multiset, so
    summing both sides in sorted order cancels bit-exactly: the label product
    around any cycle is exactly one, not merely close to it.
    """
    walk = [int(v) for v in walk]
    if len(walk) < 2:
        return 0.0
    pairs = list(zip(walk, walk[1:]))
    if closed:
        pairs.append((walk[-1], walk[0]))
    for x, y in pairs:
        if not G.adjacent(x, y):
            raise NotAdjacent(f"walk step {x} -> {y} is not an edge")
    heads = sorted(G.log_weight(y) for _, y in pairs)
    tails = sorted(G.log_weight(x) for x, _ in pairs)
    return sum(heads) - sum(tails)


def cycle_ratio_product(G, cycle) -> float:
    """Product of directed edge labels around a cycle; exactly 1.0."""
    return math.exp(walk_log_ratio(G, cycle, closed=True))


class LayeredBinaryTree:
    """Complete binary tree with per-layer weights, stored implicitly.

    Vertices use heap indexing: root 0, children of v are 2v+1 and 2v+2,
    layer k occupies [2^k - 1, 2^(k+1) - 1).  Weight of a layer-k vertex is
    exp(-beta * k).  Supports the same query surface as WeightedGraph
    (neighbors, log_weight, log_z, probabilities via layers) without
    materializing the vertex set, so depth 100 is fine.
    """

    def __init__(self, depth: int, beta: float):
        if depth < 1:
            raise GraphError(f"depth must be positive, got {depth}")
        self.depth = int(depth)
        self.beta = float(beta)
        self.n = (1 << self.depth) - 1
        self.d = 3
        self.K = max(math.exp(abs(self.beta)), 1.0)
        ks = np.arange(self.depth, dtype=np.float64)
        layer_log_mass = ks * math.log(2.0) - self.beta * ks
        self.log_z = _log_sum_exp(layer_log_mass)
        masses = np.exp(layer_log_mass - self.log_z)
        masses.setflags(write=False)
        self.layer_masses = masses

    @property
    def edge_count(self) -> int:
        return self.n - 1

    def layer(self, v: int) -> int:
        return (v + 1).bit_length() - 1

    def layer_start(self, k: int) -> int:
        return (1 << k) - 1

    def layer_size(self, k: int) -> int:
        return 1 << k

    def neighbors(self, v: int) -> list[int]:
        out = []
        if v > 0:
            out.append((v - 1) // 2)
        if self.layer(v) < self.depth - 1:
            out.extend((2 * v + 1, 2 * v + 2))
        return out

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def log_weight(self, v: int) -> float:
        return -self.beta * self.layer(v)

    def p(self, v: int) -> float:
        return math.exp(self.log_weight(v) - self.log_z)

    def adjacent(self, x: int, y: int) -> bool:
        return y in self.neighbors(x)

    def orbit_reps(self) -> list[tuple[int, float]]:
        return [(self.layer_start(k), float(self.layer_masses[k])) for k in range(self.depth)]

    def orbit_of(self, v: int) -> int:
        return self.layer(v)

    def materialize(self) -> WeightedGraph:
        """Explicit copy for small depths; primarily used to cross-check."""
        if self.depth > 22:
            raise TooLarge(f"refusing to materialize 2^{self.depth} - 1 vertices")
        edges = []
        for v in range(self.n):
            if 2 * v + 1 < self.n:
                edges.append((v, 2 * v + 1))
                edges.append((v, 2 * v + 2))
        lw = [-self.beta * self.layer(v) for v in range(self.n)]
        orbits = np.array([self.layer(v) for v in range(self.n)], dtype=np.int64)
        return build_graph(edges, lw, d=3, K=self.K, orbit_labels=orbits)

    def __repr__(self) -> str:
        return f"LayeredBinaryTree(depth={self.depth}, beta={self.beta})"


def graph_to_json(G: WeightedGraph) -> str:
    return json.dumps(G.to_json_dict(), sort_keys=True)


def graph_from_json_dict(obj: dict) -> WeightedGraph:
    n = int(obj["n"])
    lw = obj["log_weights"]
    if len(lw) != n:
        raise GraphError(f"n={n} but {len(lw)} log-weights")
    return build_graph(obj["edges"], lw, d=int(obj["d"]), K=float(obj["K"]))


def graph_from_json(text: str) -> WeightedGraph:
    return graph_from_json_dict(json.loads(text))


def save_graph(G: WeightedGraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(graph_to_json(G))


def load_graph(path) -> WeightedGraph:
    with open(path) as fh:
        return graph_from_json(fh.read())
