"""Labeled balls around a root vertex and their canonical forms.

A ball of radius r around x is the subgraph induced on all vertices within
graph distance r of x, with each vertex y carrying the relative weight
p(y)/p(x) truncated to t decimal digits.  Truncation is floor, never
rounding: pi at depth 2 becomes 3.14.  Canonical keys are byte strings such
that two balls get equal keys exactly when a root-preserving,
label-preserving isomorphism exists between them.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

# Relative slack applied before flooring.  Ratios are evaluated through
# exp() of float log-weight differences, so a ratio that is exactly 2 in
# exact arithmetic can arrive as 1.9999999999999984; without the slack the
# truncated label would oscillate between 1.99 and 2.00 across otherwise
# identical vertices.  Values genuinely below a decimal boundary by more
# than ~1e-12 relative are unaffected.
TRUNCATION_GUARD = 1e-12


class FixedPointLabel(NamedTuple):
    scaled_value: int
    scale_digits: int

    @property
    def value(self) -> float:
        return self.scaled_value / (10 ** self.scale_digits)

    def as_text(self) -> str:
        s = 10 ** self.scale_digits
        whole, frac = divmod(self.scaled_value, s)
        if self.scale_digits == 0:
            return str(whole)
        return f"{whole}.{frac:0{self.scale_digits}d}"


def truncate_label(value: float, t: int) -> FixedPointLabel:
    """Floor a nonnegative ratio to t decimal digits."""
    if t < 0:
        raise ValueError(f"digit count must be nonnegative, got {t}")
    if not (value >= 0.0 and math.isfinite(value)):
        raise ValueError(f"ratio must be finite and nonnegative, got {value}")
    scaled = value * (10 ** t)
    return FixedPointLabel(math.floor(scaled + scaled * TRUNCATION_GUARD + TRUNCATION_GUARD), t)


@dataclass(frozen=True)
class LabeledBall:
    """Rooted labeled ball with local vertex ids 0..n-1, root = 0."""

    radius: int
    depths: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[FixedPointLabel, ...]

    @property
    def n(self) -> int:
        return len(self.depths)

    @property
    def root(self) -> int:
        return 0

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for row in adj:
            row.sort()
        return adj

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1


def extract_ball(G, x: int, r: int, t: int) -> LabeledBall:
    """BFS ball of radius r around x with floor-truncated relative labels.

    Labels come from exp of log-weight differences against the root, so the
    root label is exactly 1.  Works on any graph object exposing neighbors()
    and log_weight(), including implicitly represented ones.
    """
    return extract_ball_with_map(G, x, r, t)[0]


def extract_ball_with_map(G, x: int, r: int, t: int) -> tuple[LabeledBall, tuple]:
    """extract_ball plus the original vertex ids in ball order (root first)."""
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    local: dict[int, int] = {x: 0}
    order = [x]
    depths = [0]
    dq = deque([(x, 0)])
    while dq:
        v, dist = dq.popleft()
        if dist == r:
            continue
        for w in G.neighbors(v):
            w = int(w)
            if w not in local:
                local[w] = len(order)
                order.append(w)
                depths.append(dist + 1)
                dq.append((w, dist + 1))
    edges = []
    for v in order:
        iv = local[v]
        for w in G.neighbors(v):
            w = int(w)
            iw = local.get(w)
            if iw is not None and iv < iw:
                edges.append((iv, iw))
    edges.sort()
    lw_root = G.log_weight(x)
    labels = tuple(truncate_label(math.exp(G.log_weight(v) - lw_root), t) for v in order)
    ball = LabeledBall(radius=r, depths=tuple(depths), edges=tuple(edges), labels=labels)
    return ball, tuple(order)


@dataclass(frozen=True)
class CanonicalBallKey:
    data: bytes

    def hex(self) -> str:
        return self.data.hex()

    def __lt__(self, other: "CanonicalBallKey") -> bool:
        return self.data < other.data


# ---------------------------------------------------------------------------
# Canonical ordering machinery.
#
# Tree-shaped balls use the classic sorted-subtree encoding, which is linear
# and immune to the large automorphism groups of regular trees.  Balls with
# cycles go through iterative partition refinement seeded by
# (depth, degree, label) followed by a backtracking search that takes the
# lexicographically least encoding over all discrete refinements.  Both
# routes are complete invariants on their domain, and the tree test is
# itself isomorphism-invariant, so keys remain well defined.
# ---------------------------------------------------------------------------


def _encode_ordered(n: int, perm: Sequence[int], depths, edges, decorations) -> bytes:
    """Serialize a ball under the vertex order old id -> perm[old id]."""
    pos = perm
    out = [b"%d" % n]
    ordered_deco: list = [None] * n
    for old, new in enumerate(pos):
        ordered_deco[new] = decorations[old]
    for deco in ordered_deco:
        out.append(b"|" + deco)
    new_edges = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in edges
    )
    for u, v in new_edges:
        out.append(b";%d,%d" % (u, v))
    return b"".join(out)


def _tree_children(n: int, depths, adj) -> list[list[int]]:
    children: list[list[int]] = [[] for _ in range(n)]
    for v in range(n):
        for w in adj[v]:
            if depths[w] == depths[v] + 1:
                children[v].append(w)
    return children


def _tree_perm(n: int, depths, adj, decorations) -> list[int]:
    """Canonical order for a tree ball: preorder with children sorted by
    their recursively computed subtree certificates."""
    children = _tree_children(n, depths, adj)
    cert: list[Optional[bytes]] = [None] * n
    # Process vertices deepest-first so child certificates exist.
    order = sorted(range(n), key=lambda v: -depths[v])
    for v in order:
        parts = sorted(cert[c] for c in children[v])
        cert[v] = b"(" + decorations[v] + b"".join(parts) + b")"
    perm = [0] * n
    counter = 0
    stack = [0]
    while stack:
        v = stack.pop()
        perm[v] = counter
        counter += 1
        for c in sorted(children[v], key=lambda c: cert[c], reverse=True):
            stack.append(c)
    return perm


class _RefinementSearch:
    """Individualization-refinement search for the minimum encoding."""

    MAX_LEAVES = 200_000

    def __init__(self, n, depths, edges, adj, decorations):
        self.n = n
        self.depths = depths
        self.edges = edges
        self.adj = adj
        self.deco = decorations
        self.best: Optional[bytes] = None
        self.best_perm: Optional[list[int]] = None
        self.leaves = 0

    def _refine(self, colors: list[int]) -> list[int]:
        n = self.n
        while True:
            sig = [
                (colors[v], tuple(sorted(colors[w] for w in self.adj[v])))
                for v in range(n)
            ]
            palette = sorted(set(sig))
            if len(palette) == len(set(colors)):
                remap = {s: i for i, s in enumerate(palette)}
                return [remap[s] for s in sig]
            remap = {s: i for i, s in enumerate(palette)}
            colors = [remap[s] for s in sig]

    def run(self) -> bytes:
        initial = [(self.depths[v], len(self.adj[v]), self.deco[v]) for v in range(self.n)]
        palette = sorted(set(initial))
        remap = {s: i for i, s in enumerate(palette)}
        self._descend(self._refine([remap[s] for s in initial]))
        assert self.best is not None
        return self.best

    def _descend(self, colors: list[int]) -> None:
        n = self.n
        cells: dict[int, list[int]] = {}
        for v in range(n):
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            self.leaves += 1
            if self.leaves > self.MAX_LEAVES:
                raise RuntimeError("canonical search exceeded its leaf budget")
            rank = sorted(range(n), key=lambda v: colors[v])
            perm = [0] * n
            for newid, v in enumerate(rank):
                perm[v] = newid
            code = _encode_ordered(n, perm, self.depths, self.edges, self.deco)
            if self.best is None or code < self.best:
                self.best = code
                self.best_perm = perm
            return
        fresh = max(colors) + 1
        for v in target:
            child = list(colors)
            child[v] = fresh
            self._descend(self._refine(child))


def _canonical_perm(ball: LabeledBall, decorations: list[bytes]) -> tuple[list[int], bytes]:
    adj = ball.adjacency()
    if ball.is_tree():
        perm = _tree_perm(ball.n, ball.depths, adj, decorations)
        return perm, _encode_ordered(ball.n, perm, ball.depths, ball.edges, decorations)
    search = _RefinementSearch(ball.n, ball.depths, ball.edges, adj, decorations)
    code = search.run()
    return list(search.best_perm), code


def _label_bytes(lab: FixedPointLabel) -> bytes:
    return b"%d/%d" % (lab.scaled_value, lab.scale_digits)


def canonicalize(ball: LabeledBall) -> CanonicalBallKey:
    deco = [_label_bytes(lab) for lab in ball.labels]
    _, code = _canonical_perm(ball, deco)
    prefix = b"T" if ball.is_tree() else b"G"
    return CanonicalBallKey(prefix + code)


@dataclass(frozen=True)
class CanonicalDecoratedBall:
    """A ball plus per-vertex bit-strings, relabeled into canonical order.

    Local rules receive this object; vertex 0 is the root and every field is
    invariant under isomorphisms of the decorated input, so a rule reading it
    cannot depend on vertex identity.
    """

    depths: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    labels: tuple[FixedPointLabel, ...]
    bits: tuple[int, ...]
    key: CanonicalBallKey

    @property
    def n(self) -> int:
        return len(self.depths)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def root_neighbors(self) -> list[int]:
        return self.adjacency()[0]


def canonicalize_decorated(ball: LabeledBall, bits: Sequence[int]) -> CanonicalDecoratedBall:
    if len(bits) != ball.n:
        raise ValueError("one bit-string per ball vertex required")
    deco = [
        _label_bytes(lab) + b"#%d" % bits[i] for i, lab in enumerate(ball.labels)
    ]
    perm, code = _canonical_perm(ball, deco)
    n = ball.n
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    new_edges = tuple(
        sorted(
            (perm[u], perm[v]) if perm[u] < perm[v] else (perm[v], perm[u])
            for u, v in ball.edges
        )
    )
    prefix = b"T" if ball.is_tree() else b"G"
    return CanonicalDecoratedBall(
        depths=tuple(ball.depths[inv[i]] for i in range(n)),
        edges=new_edges,
        labels=tuple(ball.labels[inv[i]] for i in range(n)),
        bits=tuple(int(bits[inv[i]]) for i in range(n)),
        key=CanonicalBallKey(prefix + code),
    )


_UNIT = FixedPointLabel(1, 0)


def rooted_ball_view(n: int, edges: Sequence[tuple[int, int]], root: int) -> LabeledBall:
    """Treat a connected unlabeled graph as a ball rooted at the given vertex."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    order = [root]
    depths = [0]
    pos = {root: 0}
    dq = deque([(root, 0)])
    while dq:
        v, dist = dq.popleft()
        for w in sorted(adj[v]):
            if w not in pos:
                pos[w] = len(order)
                order.append(w)
                depths.append(dist + 1)
                dq.append((w, dist + 1))
    if len(order) != n:
        raise ValueError("rooted_ball_view requires a connected graph")
    new_edges = sorted(
        (pos[u], pos[v]) if pos[u] < pos[v] else (pos[v], pos[u]) for u, v in edges
    )
    return LabeledBall(
        radius=max(depths),
        depths=tuple(depths),
        edges=tuple(new_edges),
        labels=(_UNIT,) * n,
    )


def unrooted_key(n: int, edges: Sequence[tuple[int, int]]) -> bytes:
    """Canonical key of an unlabeled connected graph: minimum over root
    choices of the rooted key with unit labels.  Used by observation tables."""
    best: Optional[bytes] = None
    for root in range(n):
        key = canonicalize(rooted_ball_view(n, edges, root)).data
        if best is None or key < best:
            best = key
    assert best is not None
    return b"U" + best
