"""Highest-label preflow-push maximum flow."""
from __future__ import annotations

EPS = 1e-12


class FlowNetwork:
    """Directed network on nodes ``0..n-1`` with paired residual arcs.

    Arc ``k`` and arc ``k ^ 1`` are mutual reverses; the reverse of an added
    arc starts with zero capacity.
    """

    def __init__(self, n: int):
        self.n = n
        self.head: list[int] = []
        self.cap: list[float] = []
        self.out: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, tail: int, head: int, capacity: float) -> None:
        if capacity < 0:
            raise ValueError("negative capacity")
        for node, other, c in ((tail, head, capacity), (head, tail, 0.0)):
            self.out[node].append(len(self.head))
            self.head.append(other)
            self.cap.append(c)

    def add_edge(self, u: int, v: int, capacity: float) -> None:
        """Undirected edge: both directions carry ``capacity``."""
        self.add_arc(u, v, capacity)
        self.add_arc(v, u, capacity)

    def arcs(self):
        for k in range(0, len(self.head), 2):
            yield self.head[k ^ 1], self.head[k], self.cap[k]


def max_flow_min_cut(net: FlowNetwork, s: int, t: int) -> tuple[float, set[int]]:
    """Maximum s-t flow value and the source side of a minimum cut.

    Single-phase Goldberg-Tarjan push-relabel that always discharges an active
    node of largest label; labels may rise above ``n`` so excess that cannot
    reach ``t`` drains back to ``s``. The returned source side is the set of
    nodes reachable from ``s`` in the final residual network, i.e. the
    inclusion-minimal minimum cut.
    """
    if s == t:
        raise ValueError("source and sink coincide")
    n = net.n
    head = net.head
    res = list(net.cap)
    out = net.out
    height = [0] * n
    excess = [0.0] * n
    current = [0] * n
    height[s] = n
    buckets: list[list[int]] = [[] for _ in range(2 * n + 1)]
    top = 0

    def activate(v):
        nonlocal top
        while height[v] >= len(buckets):
            buckets.append([])
        buckets[height[v]].append(v)
        if height[v] > top:
            top = height[v]

    for k in out[s]:
        delta = res[k]
        if delta > EPS:
            v = head[k]
            res[k] -= delta
            res[k ^ 1] += delta
            was = excess[v]
            excess[v] += delta
            if v != t and v != s and was <= EPS:
                activate(v)

    while top >= 0:
        if not buckets[top]:
            top -= 1
            continue
        u = buckets[top].pop()
        arcs = out[u]
        while excess[u] > EPS:
            if current[u] == len(arcs):
                lowest = min((height[head[k]] for k in arcs if res[k] > EPS), default=None)
                if lowest is None:
                    break  # only dust left; nothing can carry it
                height[u] = lowest + 1
                current[u] = 0
                continue
            k = arcs[current[u]]
            v = head[k]
            if res[k] > EPS and height[u] == height[v] + 1:
                delta = min(excess[u], res[k])
                res[k] -= delta
                res[k ^ 1] += delta
                excess[u] -= delta
                was = excess[v]
                excess[v] += delta
                if v != s and v != t and was <= EPS:
                    activate(v)
            else:
                current[u] += 1

    side = {s}
    stack = [s]
    while stack:
        u = stack.pop()
        for k in out[u]:
            v = head[k]
            if res[k] > EPS and v not in side:
                side.add(v)
                stack.append(v)
    return excess[t], side
