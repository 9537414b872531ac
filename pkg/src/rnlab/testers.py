"""Property testers: sampled violation-mass testing and the deterministic
observation-based decision.

The sampled tester is one-sided by construction: a violating ball is a
forbidden configuration sitting wholly inside the sampled radius, and members
of a subgraph-closed property contain none, ever.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .balls import canonicalize
from .distances import PropertySpec, UnsupportedProperty, _has_subgraph_copy, _is_bipartite, _is_k_colorable
from .oracles import RadonNikodymOracle, cycle_key, induced_cycle_lengths


@dataclass
class TestVerdict:
    verdict: str
    epsilon: float
    params: dict
    violating_fraction: float = 0.0
    evidence: dict = field(default_factory=dict)

    @property
    def accepted(self) -> bool:
        return self.verdict == "ACCEPT"

    def recompute(self) -> str:
        """Re-derive the verdict from stored evidence alone."""
        if self.params.get("mode") == "observable":
            reject = any(self.evidence.values())
            return "REJECT" if reject else "ACCEPT"
        budget = self.params["budget"]
        bad = sum(c for c, flag in self.evidence.values() if flag)
        frac = bad / budget
        return "REJECT" if frac > self.params["threshold"] else "ACCEPT"


def ball_violates(P: PropertySpec, n: int, edges) -> bool:
    """Does this ball contain a forbidden configuration for P?"""
    if P.id == "forest":
        return len(edges) >= n  # connected, so any extra edge closes a cycle
    if P.id == "bipartite":
        return not _is_bipartite(n, edges)
    if P.id == "h_free":
        hn, hedges = P.forbidden
        return _has_subgraph_copy(n, edges, hn, hedges)
    if P.id == "k_colorable":
        return not _is_k_colorable(n, edges, P.colors)
    raise UnsupportedProperty(P.id)


def default_radius(epsilon: float) -> int:
    return min(math.ceil(4.0 / epsilon - 1e-9), 6)


def default_budget(epsilon: float) -> int:
    return max(400, min(4000, math.ceil(8.0 / epsilon**2)))


def test_property(
    G,
    P: PropertySpec,
    epsilon: float,
    K: float = None,
    seed: int = 0,
    budget: int = None,
    radius: int = None,
    t: int = 2,
) -> TestVerdict:
    """Sampled one-sided tester.

    REJECT iff the sampled fraction of violating balls exceeds epsilon/4.
    Members never produce a violating ball (subgraph-closed property, and the
    ball is an induced subgraph), so acceptance of members is certain.
    """
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    if K is None:
        K = G.K
    r = radius if radius is not None else default_radius(epsilon)
    c = budget if budget is not None else default_budget(epsilon)
    tau = epsilon / 4.0
    oracle = RadonNikodymOracle(G, r, t, seed=seed)
    roots = oracle.sample_roots(c)
    uniq, counts = np.unique(roots, return_counts=True)
    flag_memo: dict = {}
    key_memo: dict = {}
    evidence: dict[str, list] = {}
    bad = 0
    for root, count in zip(uniq.tolist(), counts.tolist()):
        cache = G.orbit_of(root) if hasattr(G, "orbit_of") else None
        if cache is None:
            cache = ("v", root)
        if cache not in flag_memo:
            ball = oracle.ball_at(root)
            flag_memo[cache] = ball_violates(P, ball.n, ball.edges)
            key_memo[cache] = canonicalize(ball).hex()
        flag = flag_memo[cache]
        key = key_memo[cache]
        if key not in evidence:
            evidence[key] = [0, flag]
        evidence[key][0] += count
        if flag:
            bad += count
    frac = bad / c
    verdict = "REJECT" if frac > tau else "ACCEPT"
    return TestVerdict(
        verdict=verdict,
        epsilon=epsilon,
        params={
            "mode": "sampled",
            "property": P.id,
            "K": K,
            "radius": r,
            "t": t,
            "budget": c,
            "threshold": tau,
            "seed": seed,
        },
        violating_fraction=frac,
        evidence={k: tuple(v) for k, v in sorted(evidence.items())},
    )


def observation_depth(epsilon: float) -> int:
    return math.ceil(2.0 / epsilon - 1e-9) + 1


def observable_test(G, P: PropertySpec, epsilon: float) -> TestVerdict:
    """Deterministic decision from induced-cycle observations at depth s.

    Any graph whose every cycle is longer than s is within 2/(s-1) <= epsilon
    of forests for every bounded distribution (each long cycle has a cheap
    edge), so cycle observations up to s decide closeness in the
    distribution-free sense.
    """
    if P.id not in ("forest", "bipartite"):
        raise UnsupportedProperty(
            "observation-based testing covers forest and bipartite"
        )
    if not (0.0 < epsilon < 1.0):
        raise ValueError("epsilon must lie in (0, 1)")
    s = observation_depth(epsilon)
    lengths = induced_cycle_lengths(G, s)
    entries = {}
    for k in range(3, s + 1):
        present = k in lengths
        if P.id == "bipartite" and k % 2 == 0:
            continue
        entries[cycle_key(k)] = present
    reject = any(entries.values())
    return TestVerdict(
        verdict="REJECT" if reject else "ACCEPT",
        epsilon=epsilon,
        params={"mode": "observable", "property": P.id, "depth": s},
        violating_fraction=0.0,
        evidence=entries,
    )
