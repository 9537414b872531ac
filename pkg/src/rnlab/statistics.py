"""Distributions over labeled balls, their distances, and entropies.

A statistic maps canonical ball keys to probability mass.  Exact statistics
walk every vertex (or one representative per orbit, which is what makes
astronomically large layered trees tractable); empirical statistics count
oracle queries.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .balls import CanonicalBallKey, canonicalize, extract_ball
from .graphs import GraphError, WeightedGraph
from .oracles import OracleConfig, RadonNikodymOracle


class ParamMismatch(GraphError):
    pass


@dataclass
class BallStatistics:
    radius: int
    digits: int
    degree_bound: int
    ratio_bound: float
    weights: dict[CanonicalBallKey, float]
    total_queries: int = 0

    def mass(self, key: CanonicalBallKey) -> float:
        return self.weights.get(key, 0.0)

    def support_size(self) -> int:
        return len(self.weights)

    def check_compatible(self, other: "BallStatistics") -> None:
        if (self.radius, self.digits, self.degree_bound) != (
            other.radius,
            other.digits,
            other.degree_bound,
        ):
            raise ParamMismatch(
                "statistics computed with different radius/digits/degree"
            )

    def to_json_dict(self) -> dict:
        return {
            "radius": self.radius,
            "digits": self.digits,
            "degree_bound": self.degree_bound,
            "ratio_bound": self.ratio_bound,
            "total_queries": self.total_queries,
            "weights": {k.hex(): v for k, v in sorted(self.weights.items())},
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "BallStatistics":
        return cls(
            radius=int(obj["radius"]),
            digits=int(obj["digits"]),
            degree_bound=int(obj["degree_bound"]),
            ratio_bound=float(obj["ratio_bound"]),
            weights={
                CanonicalBallKey(bytes.fromhex(k)): float(v)
                for k, v in obj["weights"].items()
            },
            total_queries=int(obj.get("total_queries", 0)),
        )


MAX_EXACT_SWEEP = 5_000_000


def exact_stats(G, r: int, t: int, use_orbits: bool = True) -> BallStatistics:
    """Exact ball statistic by full sweep, or by orbit representatives when
    the graph carries an orbit labeling."""
    weights: dict[bytes, float] = {}
    ball_memo: dict = {}

    def key_of(root: int):
        ball = extract_ball(G, root, r, t)
        raw = (ball.depths, ball.edges, ball.labels)
        key = ball_memo.get(raw)
        if key is None:
            key = canonicalize(ball)
            ball_memo[raw] = key
        return key

    reps = G.orbit_reps() if use_orbits else None
    if reps is not None:
        for rep, mass in reps:
            key = key_of(rep)
            weights[key] = weights.get(key, 0.0) + mass
    else:
        if G.n > MAX_EXACT_SWEEP:
            raise GraphError(
                f"exact sweep over {G.n} vertices refused; provide orbits"
            )
        probs = G.probabilities if isinstance(G, WeightedGraph) else None
        for v in range(G.n):
            key = key_of(v)
            mass = float(probs[v]) if probs is not None else G.p(v)
            weights[key] = weights.get(key, 0.0) + mass
    return BallStatistics(
        radius=r,
        digits=t,
        degree_bound=G.d,
        ratio_bound=G.K,
        weights=weights,
        total_queries=0,
    )


def empirical_stats(G, config: OracleConfig) -> BallStatistics:
    """Sampled ball statistic through the relative-weight oracle."""
    oracle = RadonNikodymOracle(G, config.radius, config.depth, seed=config.seed)
    roots = oracle.sample_roots(config.query_budget)
    weights: dict[bytes, float] = {}
    key_memo: dict = {}
    uniq, counts = np.unique(roots, return_counts=True)
    inv_budget = 1.0 / config.query_budget
    for root, count in zip(uniq.tolist(), counts.tolist()):
        cache = G.orbit_of(root) if hasattr(G, "orbit_of") else None
        if cache is None:
            cache = ("v", root)
        key = key_memo.get(cache)
        if key is None:
            key = canonicalize(oracle.ball_at(root))
            key_memo[cache] = key
        weights[key] = weights.get(key, 0.0) + count * inv_budget
    return BallStatistics(
        radius=config.radius,
        digits=config.depth,
        degree_bound=G.d,
        ratio_bound=G.K,
        weights=weights,
        total_queries=config.query_budget,
    )


def tv(a: BallStatistics, b: BallStatistics) -> float:
    """Total variation distance between two ball statistics."""
    a.check_compatible(b)
    keys = set(a.weights) | set(b.weights)
    return 0.5 * sum(abs(a.mass(k) - b.mass(k)) for k in keys)


def statistical_distance(
    stats_a: dict[int, BallStatistics],
    stats_b: dict[int, BallStatistics],
    r_max: int,
) -> float:
    """Sum over radii r of 2^-r times the TV distance at radius r."""
    total = 0.0
    for r in range(1, r_max + 1):
        if r not in stats_a or r not in stats_b:
            raise ParamMismatch(f"missing radius {r} in statistics profile")
        total += 2.0 ** (-r) * tv(stats_a[r], stats_b[r])
    return total


def stats_profile(G, r_max: int, t: int) -> dict[int, BallStatistics]:
    return {r: exact_stats(G, r, t) for r in range(1, r_max + 1)}


def empirical_profile(
    G, r_max: int, t: int, budget: int, seed: int = 0
) -> dict[int, BallStatistics]:
    return {
        r: empirical_stats(
            G, OracleConfig(radius=r, depth=t, query_budget=budget, seed=seed)
        )
        for r in range(1, r_max + 1)
    }


def vertex_entropy(G) -> float:
    """Shannon entropy of the vertex distribution, in nats."""
    reps = G.orbit_reps()
    if reps is not None:
        total = 0.0
        for rep, mass in reps:
            if mass > 0.0:
                pv = G.p(rep)
                total -= mass * math.log(pv)
        return total
    p = G.probabilities
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())


def edge_entropy(G) -> float:
    """Expected log-ratio sum over the neighbors of a random vertex:
    sum_v p(v) * sum_{y ~ v} log(p(v)/p(y)).  Bounded by d*log(K)."""
    reps = G.orbit_reps()
    if reps is not None:
        total = 0.0
        for rep, mass in reps:
            lw_v = G.log_weight(rep)
            s = sum(lw_v - G.log_weight(int(y)) for y in G.neighbors(rep))
            total += mass * s
        return total
    lw = G.log_weights
    counts = np.diff(G._indptr)
    src = np.repeat(np.arange(G.n), counts)
    contrib = lw[src] - lw[G._indices]
    return float((G.probabilities[src] * contrib).sum())


def truncation_stability(G, r: int, t: int, threshold: float = 0.01):
    """Mass of balls whose t-digit labels disagree with their (t+1)-digit
    labels coarsened by one digit.  Such balls sit on a truncation boundary
    and their keys are unreliable at depth t.

    Returns (stable, boundary_mass).
    """
    boundary_mass = 0.0
    reps = G.orbit_reps()
    items = reps if reps is not None else None
    if items is None:
        if G.n > MAX_EXACT_SWEEP:
            raise GraphError("stability sweep too large; provide orbits")
        probs = G.probabilities
        items = [(v, float(probs[v])) for v in range(G.n)]
    for rep, mass in items:
        coarse = extract_ball(G, rep, r, t)
        fine = extract_ball(G, rep, r, t + 1)
        risky = any(
            c.scaled_value != f.scaled_value // 10
            for c, f in zip(coarse.labels, fine.labels)
        )
        if risky:
            boundary_mass += mass
    return boundary_mass <= threshold, boundary_mass


def save_stats(stats: BallStatistics, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(stats.to_json_dict(), fh, indent=1, sort_keys=True)


def load_stats(path: str) -> BallStatistics:
    with open(path) as fh:
        return BallStatistics.from_json_dict(json.load(fh))
