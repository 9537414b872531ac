"""One-shot local rules and the partition-based estimators built on them.

Every vertex sees its decorated ball (truncated labels plus private random
bits) and decides membership from the canonical form alone, so outputs are
anonymous: isomorphic inputs with matching bit assignments give isomorphic
outputs.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .balls import CanonicalDecoratedBall, canonicalize_decorated, extract_ball_with_map
from .graphs import GraphError
from .partitions import PartitionInfeasible, find_weighted_partition
from .solvers import (
    TooLarge,
    component_mwis,
    is_independent,
    matching_size,
)


class RuleIncomplete(GraphError):
    pass


@dataclass(frozen=True)
class LocalRule:
    radius: int
    bits_per_vertex: int
    decide: Callable[[CanonicalDecoratedBall], bool]


def table_rule(radius: int, bits_per_vertex: int, table: dict[bytes, bool]) -> LocalRule:
    """Rule backed by an explicit manual; unknown decorated balls are errors."""

    def decide(ball: CanonicalDecoratedBall) -> bool:
        try:
            return table[ball.key]
        except KeyError:
            raise RuleIncomplete(
                f"no manual entry for decorated ball {ball.key.hex()}"
            ) from None

    return LocalRule(radius=radius, bits_per_vertex=bits_per_vertex, decide=decide)


def rank_rule(radius: int = 1, bits_per_vertex: int = 32) -> LocalRule:
    """Member iff the root's bit-string strictly beats every neighbor's.

    Adjacent winners are impossible, so the output is always independent.
    """

    def decide(ball: CanonicalDecoratedBall) -> bool:
        mine = ball.bits[0]
        return all(ball.bits[v] < mine for v in ball.root_neighbors())

    return LocalRule(radius=radius, bits_per_vertex=bits_per_vertex, decide=decide)


def draw_vertex_bits(n: int, k: int, seed: int) -> list[int]:
    """Private k-bit strings, one per vertex, from per-vertex counter streams."""
    mask = (1 << k) - 1
    out = []
    for v in range(n):
        bg = np.random.Philox(key=[seed & (2**64 - 1), v])
        out.append(int(bg.random_raw(1)[0]) & mask)
    return out


def run_local_rule(G, rule: LocalRule, t: int, seed: int, bits=None) -> frozenset:
    """Simultaneous one-round application of the rule at every vertex."""
    if bits is None:
        bits = draw_vertex_bits(G.n, rule.bits_per_vertex, seed)
    members = []
    for v in range(G.n):
        ball, vertex_map = extract_ball_with_map(G, v, rule.radius, t)
        local_bits = [bits[u] for u in vertex_map]
        decorated = canonicalize_decorated(ball, local_bits)
        if rule.decide(decorated):
            members.append(v)
    return frozenset(members)


def _components_excluding(G, removed: frozenset) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s] or s in removed:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in G.neighbors(v):
                w = int(w)
                if not seen[w] and w not in removed:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _escalating_targets(n: int, epsilon: float) -> list[int]:
    targets = []
    k = math.ceil(2.0 / epsilon)
    while k < n:
        targets.append(k)
        k *= 2
    targets.append(n)
    return targets


def local_independent_set(G, epsilon: float, seed: int = 0) -> tuple[frozenset, float]:
    """Independent set whose mass approximates the weighted independence
    number within epsilon whenever a partition certificate exists.

    Partition at epsilon/2, solve each small component exactly, take the
    union.  Components only shrink an optimal solution by the removed mass,
    so the defect is at most epsilon/2.  Component bounds escalate until the
    per-component solvers give out; after that a seeded greedy pass runs with
    an explicit warning and no accuracy claim.
    """
    probs = G.probabilities
    for K_target in _escalating_targets(G.n, epsilon):
        try:
            cert = find_weighted_partition(G, epsilon / 2.0, K_target)
        except PartitionInfeasible:
            continue
        adj = {
            v: [int(u) for u in G.neighbors(v) if int(u) not in cert.removed]
            for v in range(G.n)
            if v not in cert.removed
        }
        w = {v: float(probs[v]) for v in adj}
        chosen: list[int] = []
        try:
            for comp in _components_excluding(G, cert.removed):
                chosen.extend(component_mwis(comp, adj, w))
        except TooLarge:
            continue
        J = frozenset(chosen)
        if not is_independent(G, J):
            raise AssertionError("component union is not independent")
        return J, float(sum(probs[v] for v in J))
    warnings.warn(
        "partitioning failed at every component bound; "
        "greedy fallback carries no accuracy guarantee",
        stacklevel=2,
    )
    rng = np.random.default_rng(seed)
    order = rng.permutation(G.n)
    taken: set[int] = set()
    blocked: set[int] = set()
    for v in order:
        v = int(v)
        if v in blocked:
            continue
        taken.add(v)
        blocked.add(v)
        for u in G.neighbors(v):
            blocked.add(int(u))
    J = frozenset(taken)
    return J, float(sum(probs[v] for v in J))


UNIFORM_TOLERANCE = 1e-9


def estimate_matching(G, epsilon: float, seed: int = 0) -> float:
    """Matching ratio estimate on uniform-weight graphs: partition at
    epsilon/2, match each component exactly, add up."""
    lw = G.log_weights
    if float(lw.max() - lw.min()) > UNIFORM_TOLERANCE:
        raise GraphError("matching estimation expects uniform weights")
    last_error = None
    for K_target in _escalating_targets(G.n, epsilon):
        try:
            cert = find_weighted_partition(G, epsilon / 2.0, K_target)
        except PartitionInfeasible as e:
            last_error = e
            continue
        total = 0
        try:
            for comp in _components_excluding(G, cert.removed):
                pos = {v: i for i, v in enumerate(comp)}
                adj = [
                    [pos[int(u)] for u in G.neighbors(v) if int(u) in pos]
                    for v in comp
                ]
                total += matching_size(len(comp), adj)
        except TooLarge as e:
            last_error = e
            continue
        return total / G.n
    raise PartitionInfeasible(
        f"no usable partition at any component bound: {last_error}"
    )
