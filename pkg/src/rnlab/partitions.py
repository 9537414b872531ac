"""Removal certificates that break a graph into small components.

Constructors are heuristic (sphere cutting) and verifiers are exact and
independent, so a certificate is trusted only after re-checking the mass and
component bounds from scratch.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graphs import GraphError, WeightedGraph

MASS_SLACK = 1e-9


class PartitionInfeasible(GraphError):
    pass


class UnsupportedFamily(GraphError):
    pass


@dataclass
class PartitionCertificate:
    removed: frozenset
    epsilon: float
    component_bound: int
    component_sizes: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        return {
            "removed": sorted(self.removed),
            "epsilon": self.epsilon,
            "component_bound": self.component_bound,
            "component_sizes": list(self.component_sizes),
        }


@dataclass
class UniformCoverCertificate:
    covers: tuple[frozenset, ...]
    epsilon: float
    component_bound: int

    @property
    def length(self) -> int:
        return len(self.covers)

    def to_json_dict(self) -> dict:
        return {
            "covers": [sorted(c) for c in self.covers],
            "epsilon": self.epsilon,
            "component_bound": self.component_bound,
        }


def _component_sizes_without(G, removed: frozenset) -> list[int]:
    seen = [False] * G.n
    sizes = []
    for s in range(G.n):
        if seen[s] or s in removed:
            continue
        count = 0
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            count += 1
            for w in G.neighbors(v):
                w = int(w)
                if not seen[w] and w not in removed:
                    seen[w] = True
                    stack.append(w)
        sizes.append(count)
    return sizes


def removed_mass(G, removed) -> float:
    if not removed:
        return 0.0
    probs = G.probabilities
    return float(sum(probs[v] for v in removed))


def verify_weighted_partition(G, cert: PartitionCertificate) -> bool:
    """Exact re-check: mass of the removed set and all component sizes."""
    mass = removed_mass(G, cert.removed)
    if mass > cert.epsilon * (1.0 + MASS_SLACK) + 1e-15:
        return False
    sizes = _component_sizes_without(G, cert.removed)
    return all(s <= cert.component_bound for s in sizes)


def verify_uniform_cover(G, cert: UniformCoverCertificate) -> bool:
    """The three defining conditions: every cover is small in counting
    measure, every residual component is bounded, every vertex is covered
    rarely."""
    n = G.n
    L = len(cert.covers)
    if L == 0:
        return False
    frequency = [0] * n
    for cover in cert.covers:
        if len(cover) >= cert.epsilon * n and len(cover) > 0:
            return False
        sizes = _component_sizes_without(G, frozenset(cover))
        if any(s > cert.component_bound for s in sizes):
            return False
        for v in cover:
            frequency[v] += 1
    return all(f < cert.epsilon * L for f in frequency)


SEED_TRIES = 4


def find_weighted_partition(G, epsilon: float, K_target: int = None) -> PartitionCertificate:
    """Sphere-cutting heuristic.

    Grow a BFS region from a seed inside an oversized component; among layer
    prefixes of at most K_target vertices, cut the bounding sphere with the
    smallest mass relative to the region it seals off.  Accepted cuts keep
    the running removed mass below epsilon because sealed regions are
    disjoint: sum p(S_i) <= epsilon * sum p(R_i) <= epsilon.

    K_target is a hint bounding how far a region may grow, not a promise
    about the result; the certificate records the bound actually achieved.
    The default ceil(1/epsilon) suits paths and mass-balanced trees.  Flat
    cycles need regions of about 2/epsilon vertices and grid interiors about
    8/epsilon^2, so pass a larger hint there; expanders fail at every hint
    small enough to be meaningful, which is the point.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    if K_target is None:
        K_target = math.ceil(1.0 / epsilon)
    if K_target < 1:
        raise ValueError("component bound must be positive")
    n = G.n
    probs = G.probabilities
    removed: set[int] = set()
    assigned = [False] * n
    component_sizes: list[int] = []

    # initial entries: the heaviest vertex of each component
    entries: list[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        best, stack = s, [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            if probs[v] > probs[best]:
                best = v
            for w in G.neighbors(v):
                w = int(w)
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        entries.append(best)

    def explore(seed: int):
        """BFS layers from seed until the prefix exceeds K_target or the
        component is exhausted.  Returns (layers, exhausted)."""
        layers = [[seed]]
        visited = {seed}
        total = 1
        while True:
            frontier = []
            for v in layers[-1]:
                for w in G.neighbors(v):
                    w = int(w)
                    if w not in visited and not assigned[w] and w not in removed:
                        visited.add(w)
                        frontier.append(w)
            if not frontier:
                return layers, True
            layers.append(frontier)
            total += len(frontier)
            if total > K_target:
                return layers, False

    def carve(seed: int) -> bool:
        layers, exhausted = explore(seed)
        if exhausted:
            comp = [v for layer in layers for v in layer]
            for v in comp:
                assigned[v] = True
            component_sizes.append(len(comp))
            return True
        best_ratio, best_rho = None, None
        region_mass, region_size = 0.0, 0
        for rho in range(len(layers) - 1):
            region_mass += float(sum(probs[v] for v in layers[rho]))
            region_size += len(layers[rho])
            if region_size > K_target:
                break
            sphere_mass = float(sum(probs[v] for v in layers[rho + 1]))
            ratio = sphere_mass / region_mass if region_mass > 0 else math.inf
            if best_ratio is None or ratio < best_ratio:
                best_ratio, best_rho = ratio, rho
        if best_ratio is None or best_ratio > epsilon:
            return False
        region = [v for lay in layers[: best_rho + 1] for v in lay]
        sphere = layers[best_rho + 1]
        for v in region:
            assigned[v] = True
        for v in sphere:
            removed.add(v)
            assigned[v] = True
        component_sizes.append(len(region))
        for v in sphere:
            for w in G.neighbors(v):
                w = int(w)
                if not assigned[w]:
                    entries.append(w)
        return True

    while entries:
        e = entries.pop()
        if assigned[e]:
            continue
        if carve(e):
            continue
        # retry from the heaviest vertices of the sampled ball
        layers, _ = explore(e)
        pool = sorted(
            (v for lay in layers for v in lay), key=lambda v: -probs[v]
        )[:SEED_TRIES]
        if not any(v != e and carve(v) for v in pool):
            raise PartitionInfeasible(
                f"no sphere of relative mass <= {epsilon} around vertex {e} "
                f"with regions of <= {K_target} vertices"
            )
    return PartitionCertificate(
        removed=frozenset(removed),
        epsilon=epsilon,
        component_bound=max(component_sizes, default=0),
        component_sizes=tuple(sorted(component_sizes)),
    )


def _degree_profile(G) -> list[int]:
    return [G.degree(v) for v in range(G.n)]


def _walk_order_path(G) -> list[int]:
    degs = _degree_profile(G)
    ends = [v for v in range(G.n) if degs[v] == 1]
    start = min(ends)
    order = [start]
    prev = -1
    while len(order) < G.n:
        nxt = [int(w) for w in G.neighbors(order[-1]) if int(w) != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _walk_order_cycle(G) -> list[int]:
    start = 0
    order = [start]
    prev = -1
    while len(order) < G.n:
        nxt = [int(w) for w in G.neighbors(order[-1]) if int(w) != prev]
        prev = order[-1]
        order.append(min(nxt) if len(order) == 1 else nxt[0])
    return order


def _detect_family(G) -> str:
    degs = _degree_profile(G)
    comps = _component_sizes_without(G, frozenset())
    if G.n == 1:
        return "single"
    if len(comps) != 1:
        raise UnsupportedFamily("cover construction needs a connected graph")
    if all(d <= 2 for d in degs):
        if degs.count(1) == 2:
            return "path"
        if all(d == 2 for d in degs):
            return "cycle"
    raise UnsupportedFamily(
        "cover construction supports paths, cycles, and grids (pass grid_dims)"
    )


def build_uniform_cover(G, epsilon: float, grid_dims: tuple = None) -> UniformCoverCertificate:
    """Shift construction: with spacing m = ceil(2/epsilon), cover j removes
    positions congruent to j mod m along a traversal; grids use both axes."""
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    m = math.ceil(2.0 / epsilon - 1e-9)
    if grid_dims is not None:
        rows, cols = grid_dims
        if rows * cols != G.n:
            raise UnsupportedFamily("grid dimensions do not match the graph")
        covers = []
        for j1 in range(m):
            for j2 in range(m):
                cov = frozenset(
                    r * cols + c
                    for r in range(rows)
                    for c in range(cols)
                    if r % m == j1 or c % m == j2
                )
                covers.append(cov)
        bound = (m - 1) * (m - 1)
        cert = UniformCoverCertificate(
            covers=tuple(covers), epsilon=epsilon, component_bound=bound
        )
    else:
        family = _detect_family(G)
        if family == "single":
            return UniformCoverCertificate(
                covers=(frozenset(),), epsilon=epsilon, component_bound=1
            )
        order = _walk_order_path(G) if family == "path" else _walk_order_cycle(G)
        covers = tuple(
            frozenset(order[pos] for pos in range(G.n) if pos % m == j)
            for j in range(m)
        )
        bound = 0
        for cov in covers:
            sizes = _component_sizes_without(G, cov)
            bound = max(bound, max(sizes, default=0))
        cert = UniformCoverCertificate(
            covers=covers, epsilon=epsilon, component_bound=bound
        )
    if not verify_uniform_cover(G, cert):
        raise UnsupportedFamily(
            "shift construction failed its own verifier at this size/epsilon"
        )
    return cert
