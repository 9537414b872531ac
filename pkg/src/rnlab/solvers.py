"""Exact combinatorial solvers used as ground truth and inside estimators.

Maximum matching is the classic augmenting-path algorithm with blossom
contraction.  Maximum-weight independent set dispatches per component:
dynamic programs on forests and cycles, a minimum-cut reduction on bipartite
components, and branch-and-bound for small general components.
"""
from __future__ import annotations

import math
from collections import deque

import numpy as np

from .graphs import TooLarge

MAX_MATCHING_VERTICES = 200
MAX_BRANCH_VERTICES = 45
BRANCH_NODE_CAP = 2_000_000


# ---------------------------------------------------------------------------
# Maximum matching with blossom contraction.
# ---------------------------------------------------------------------------


def maximum_matching(n: int, adj: list[list[int]]) -> list[int]:
    """match[v] = partner of v or -1; exact for n <= 200."""
    if n > MAX_MATCHING_VERTICES:
        raise TooLarge(f"matching solver limited to {MAX_MATCHING_VERTICES} vertices")
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))
    inqueue = [False] * n

    def lca(a: int, b: int) -> int:
        marked = [False] * n
        while True:
            a = base[a]
            marked[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if marked[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != b:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting(root: int) -> int:
        nonlocal parent, base, inqueue
        parent = [-1] * n
        base = list(range(n))
        inqueue = [False] * n
        queue = deque([root])
        inqueue[root] = True
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # odd cycle: contract the blossom
                    b = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, b, to, in_blossom)
                    mark_path(to, b, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = b
                            if not inqueue[i]:
                                inqueue[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    if not inqueue[match[to]]:
                        inqueue[match[to]] = True
                        queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] != -1:
            continue
        to = find_augmenting(v)
        while to != -1:
            pv = parent[to]
            nxt = match[pv]
            match[to] = pv
            match[pv] = to
            to = nxt
    return match


def matching_size(n: int, adj: list[list[int]]) -> int:
    match = maximum_matching(n, adj)
    return sum(1 for v in range(n) if match[v] != -1) // 2


def exact_matching(G) -> float:
    """Matching ratio |M| / n."""
    adj = [[int(w) for w in G.neighbors(v)] for v in range(G.n)]
    return matching_size(G.n, adj) / G.n


# ---------------------------------------------------------------------------
# Maximum-weight independent set, per-component dispatch.
# ---------------------------------------------------------------------------


def _components(n: int, adj) -> list[list[int]]:
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        out.append(sorted(comp))
    return out


def _path_mwis(weights: list[float]) -> tuple[float, list[int]]:
    """DP along a path given weights in path order; returns chosen indices."""
    k = len(weights)
    if k == 0:
        return 0.0, []
    take = [0.0] * k
    skip = [0.0] * k
    take[0] = weights[0]
    for i in range(1, k):
        take[i] = weights[i] + skip[i - 1]
        skip[i] = max(take[i - 1], skip[i - 1])
    chosen = []
    i = k - 1
    taking = take[i] > skip[i]
    while i >= 0:
        if taking:
            chosen.append(i)
            i -= 1
            taking = False
        else:
            if i > 0:
                taking = take[i - 1] > skip[i - 1]
            i -= 1
    return max(take[k - 1], skip[k - 1]), chosen


def _forest_mwis(verts: list[int], adj, w) -> list[int]:
    chosen: list[int] = []
    seen = set()
    for root in verts:
        if root in seen:
            continue
        order = [root]
        par = {root: -1}
        seen.add(root)
        i = 0
        while i < len(order):
            v = order[i]
            i += 1
            for u in adj[v]:
                if u not in par:
                    par[u] = v
                    seen.add(u)
                    order.append(u)
        dp_in = {v: w[v] for v in order}
        dp_out = {v: 0.0 for v in order}
        for v in reversed(order):
            if par[v] != -1:
                dp_in[par[v]] += dp_out[v]
                dp_out[par[v]] += max(dp_in[v], dp_out[v])
        stack = [(root, dp_in[root] > dp_out[root])]
        while stack:
            v, inside = stack.pop()
            if inside:
                chosen.append(v)
            for u in adj[v]:
                if par.get(u) != v:
                    continue
                if inside:
                    stack.append((u, False))
                else:
                    stack.append((u, dp_in[u] > dp_out[u]))
    return chosen


def _cycle_order(verts: list[int], adj) -> list[int]:
    start = verts[0]
    order = [start]
    prev = -1
    while len(order) < len(verts):
        nxt = [u for u in adj[order[-1]] if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _cycle_mwis(verts: list[int], adj, w) -> list[int]:
    order = _cycle_order(verts, adj)
    k = len(order)
    # case A: exclude order[0]
    val_a, idx_a = _path_mwis([w[v] for v in order[1:]])
    pick_a = [order[1 + i] for i in idx_a]
    # case B: include order[0], exclude its two cycle neighbors
    val_b, idx_b = _path_mwis([w[v] for v in order[2 : k - 1]])
    pick_b = [order[0]] + [order[2 + i] for i in idx_b]
    val_b += w[order[0]]
    return pick_b if val_b > val_a else pick_a


def _two_color(verts: list[int], adj) -> dict | None:
    color = {verts[0]: 0}
    dq = deque([verts[0]])
    while dq:
        v = dq.popleft()
        for u in adj[v]:
            if u not in color:
                color[u] = color[v] ^ 1
                dq.append(u)
            elif color[u] == color[v]:
                return None
    return color


WEIGHT_SCALE = 10**12


class _Dinic:
    """Blocking-flow max flow over Python integers, so capacities built from
    WEIGHT_SCALE never overflow.  Blocking flows found iteratively to keep
    long level graphs off the recursion stack."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def _levels(self, s: int, t: int):
        level = [-1] * self.n
        level[s] = 0
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for e in self.head[v]:
                u = self.to[e]
                if self.cap[e] > 0 and level[u] < 0:
                    level[u] = level[v] + 1
                    dq.append(u)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            it = [0] * self.n
            path: list[int] = []  # edge ids along the current partial path
            v = s
            while True:
                if v == t:
                    pushed = min(self.cap[e] for e in path)
                    total += pushed
                    retreat = None
                    for i, e in enumerate(path):
                        self.cap[e] -= pushed
                        self.cap[e ^ 1] += pushed
                        if self.cap[e] == 0 and retreat is None:
                            retreat = i
                    del path[retreat:]
                    v = s if not path else self.to[path[-1]]
                    continue
                advanced = False
                while it[v] < len(self.head[v]):
                    e = self.head[v][it[v]]
                    u = self.to[e]
                    if self.cap[e] > 0 and level[u] == level[v] + 1:
                        path.append(e)
                        v = u
                        advanced = True
                        break
                    it[v] += 1
                if advanced:
                    continue
                if v == s:
                    break
                level[v] = -1  # dead end; prune from this phase
                v = self.to[path.pop() ^ 1]

    def reachable(self, s: int) -> list[bool]:
        reach = [False] * self.n
        reach[s] = True
        dq = deque([s])
        while dq:
            v = dq.popleft()
            for e in self.head[v]:
                u = self.to[e]
                if self.cap[e] > 0 and not reach[u]:
                    reach[u] = True
                    dq.append(u)
        return reach


def _bipartite_mwis(verts: list[int], adj, w, color) -> list[int]:
    """Min vertex cover via maximum flow on integer-scaled weights."""
    pos = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    source, sink = k, k + 1
    big = WEIGHT_SCALE * (k + 2)
    net = _Dinic(k + 2)
    for v in verts:
        scaled = max(1, int(round(w[v] * WEIGHT_SCALE)))
        if color[v] == 0:
            net.add_edge(source, pos[v], scaled)
        else:
            net.add_edge(pos[v], sink, scaled)
    for v in verts:
        if color[v] == 0:
            for u in adj[v]:
                net.add_edge(pos[v], pos[u], big)
    net.max_flow(source, sink)
    reach = net.reachable(source)
    chosen = []
    for v in verts:
        if color[v] == 0 and reach[pos[v]]:
            chosen.append(v)
        elif color[v] == 1 and not reach[pos[v]]:
            chosen.append(v)
    return chosen


def _branch_mwis(verts: list[int], adj, w) -> list[int]:
    """Branch on a maximum-degree vertex; split connected parts and finish
    degree-<=2 remainders (disjoint paths and cycles) by the path DP."""
    k = len(verts)
    if k > MAX_BRANCH_VERTICES:
        raise TooLarge(f"branch and bound limited to {MAX_BRANCH_VERTICES} vertices")
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * k
    for v in verts:
        for u in adj[v]:
            masks[pos[v]] |= 1 << pos[u]
    weights = [w[v] for v in verts]
    nodes = 0

    def sparse_solve(cmask: int) -> tuple[float, int]:
        """Connected mask whose vertices all have degree <= 2 inside it."""
        bits = []
        m = cmask
        while m:
            bits.append((m & -m).bit_length() - 1)
            m &= m - 1
        start = None
        for i in bits:
            if (masks[i] & cmask).bit_count() <= 1:
                start = i
                break
        cyclic = start is None
        if cyclic:
            start = bits[0]
        order = [start]
        prev = -1
        while True:
            nxt = masks[order[-1]] & cmask
            if prev >= 0:
                nxt &= ~(1 << prev)
            if order[0] != order[-1]:
                nxt &= ~(1 << order[0])
            if nxt == 0 or len(order) == len(bits):
                break
            prev = order[-1]
            order.append((nxt & -nxt).bit_length() - 1)
        if not cyclic:
            val, idx = _path_mwis([weights[i] for i in order])
            chosen_mask = 0
            for j in idx:
                chosen_mask |= 1 << order[j]
            return val, chosen_mask
        val_a, idx_a = _path_mwis([weights[i] for i in order[1:]])
        mask_a = 0
        for j in idx_a:
            mask_a |= 1 << order[1 + j]
        val_b, idx_b = _path_mwis([weights[i] for i in order[2 : len(order) - 1]])
        mask_b = 1 << order[0]
        for j in idx_b:
            mask_b |= 1 << order[2 + j]
        val_b += weights[order[0]]
        return (val_b, mask_b) if val_b > val_a else (val_a, mask_a)

    def solve(mask: int) -> tuple[float, int]:
        nonlocal nodes
        if mask == 0:
            return 0.0, 0
        nodes += 1
        if nodes > BRANCH_NODE_CAP:
            raise TooLarge("branch and bound node cap exceeded")
        comp = mask & -mask
        frontier = comp
        while frontier:
            grow = 0
            m = frontier
            while m:
                i = (m & -m).bit_length() - 1
                m &= m - 1
                grow |= masks[i] & mask & ~comp
            comp |= grow
            frontier = grow
        if comp != mask:
            val_a, set_a = solve(comp)
            val_b, set_b = solve(mask ^ comp)
            return val_a + val_b, set_a | set_b
        pivot = -1
        maxdeg = -1
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            m &= m - 1
            deg = (masks[i] & mask).bit_count()
            if deg > maxdeg:
                maxdeg, pivot = deg, i
        if maxdeg <= 2:
            return sparse_solve(mask)
        take_val, take_set = solve(mask & ~(masks[pivot] | (1 << pivot)))
        take_val += weights[pivot]
        take_set |= 1 << pivot
        skip_val, skip_set = solve(mask & ~(1 << pivot))
        if take_val >= skip_val:
            return take_val, take_set
        return skip_val, skip_set

    _, best_set = solve((1 << k) - 1)
    return [verts[i] for i in range(k) if best_set >> i & 1]


def exhaustive_mwis(verts: list[int], adj, w) -> list[int]:
    """Reference enumerator over all subsets, for cross-checking (<= 16)."""
    k = len(verts)
    if k > 16:
        raise TooLarge("exhaustive enumeration limited to 16 vertices")
    pos = {v: i for i, v in enumerate(verts)}
    masks = [0] * k
    for v in verts:
        for u in adj[v]:
            masks[pos[v]] |= 1 << pos[u]
    best_val, best_mask = -1.0, 0
    for mask in range(1 << k):
        ok = True
        val = 0.0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            if masks[i] & mask:
                ok = False
                break
            val += w[verts[i]]
            m &= m - 1
        if ok and val > best_val:
            best_val, best_mask = val, mask
    return [verts[i] for i in range(k) if best_mask >> i & 1]


def component_mwis(verts: list[int], adj, w) -> list[int]:
    """Exact solver for one connected component."""
    k = len(verts)
    edge_count = sum(len(adj[v]) for v in verts) // 2
    if edge_count == 0:
        return list(verts)
    if edge_count == k - 1:
        return _forest_mwis(verts, adj, w)
    if edge_count == k and all(len(adj[v]) == 2 for v in verts):
        return _cycle_mwis(verts, adj, w)
    color = _two_color(verts, adj)
    if color is not None:
        return _bipartite_mwis(verts, adj, w, color)
    return _branch_mwis(verts, adj, w)


def exact_weighted_mis(G) -> tuple[frozenset, float]:
    """Maximum-probability-weight independent set, exact.

    Splits into components and dispatches: forests and single cycles by
    dynamic programming, bipartite components by minimum cut, anything else
    by branch and bound up to 45 vertices.
    """
    n = G.n
    probs = G.probabilities
    adj = {v: [int(u) for u in G.neighbors(v)] for v in range(n)}
    w = {v: float(probs[v]) for v in range(n)}
    chosen: list[int] = []
    for comp in _components(n, adj):
        chosen.extend(component_mwis(comp, adj, w))
    chosen_set = frozenset(chosen)
    for v in chosen_set:
        for u in adj[v]:
            if u in chosen_set:
                raise AssertionError("solver produced a dependent set")
    return chosen_set, float(sum(w[v] for v in chosen_set))


def independent_set_weight(G, S) -> float:
    probs = G.probabilities
    return float(sum(probs[v] for v in S))


def is_independent(G, S) -> bool:
    S = set(S)
    for v in S:
        for u in G.neighbors(v):
            if int(u) in S:
                return False
    return True
