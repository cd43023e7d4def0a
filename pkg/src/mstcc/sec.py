"""Subtour elimination separation.

For integral points the chosen edges are split into components with a DFS.
For fractional points the most violated SEC containing a given vertex is a
minimum cut: with ``b(v) = 1 - x(delta(v)) / 2``,

    |S| - x(E(S)) = sum(b(v) for v in S) + x(delta(S)) / 2,

so a network with arcs of capacity ``x_e / 2`` in both directions, ``v -> t``
arcs carrying positive ``b(v)`` and ``s -> v`` arcs carrying ``-b(v)``
prices every vertex set ``S`` at ``|S| - x(E(S))`` plus a constant. An SEC is
violated exactly when that price drops below 1. Rooting at vertex 1 and
forcing vertex ``k`` into S while vertices ``1..k-1`` stay out covers every
candidate set with ``n - 1`` max-flow computations.
"""
from __future__ import annotations

from typing import Sequence

from .cuts import Cut, sec_cut
from .flow import FlowNetwork, max_flow_min_cut
from .graphs import components
from .instance_io import Instance

CUT_TOL = 1e-5
ZERO_CAP = 1e-9


def separate_sec_integral(inst: Instance, x: Sequence[float], tol: float = CUT_TOL) -> list[Cut]:
    """SECs for components of the chosen edges that contain a cycle."""
    chosen = {k: inst.edges[k][:2] for k in range(inst.m) if x[k] > 0.5}
    comps = components(range(1, inst.n + 1), chosen)
    if len(comps) == 1:
        return []
    cuts = []
    for comp in comps:
        cut = sec_cut(inst, comp, x)
        if cut.violation > tol:
            cuts.append(cut)
    return cuts


def _sec_network(inst: Instance, x: Sequence[float]):
    n = inst.n
    s, t = n, n + 1
    pair_cap: dict[tuple[int, int], float] = {}
    degree = [0.0] * n
    for k, (u, v, _) in enumerate(inst.edges):
        xv = float(x[k])
        degree[u - 1] += xv
        degree[v - 1] += xv
        key = (min(u, v) - 1, max(u, v) - 1)
        pair_cap[key] = pair_cap.get(key, 0.0) + xv / 2
    net = FlowNetwork(n + 2)
    for (a, b), c in sorted(pair_cap.items()):
        if c > ZERO_CAP:
            net.add_edge(a, b, c)
    offset = 0.0
    for v in range(n):
        bv = 1.0 - degree[v] / 2
        if bv > ZERO_CAP:
            net.add_arc(v, t, bv)
        elif bv < -ZERO_CAP:
            net.add_arc(s, v, -bv)
            offset += -bv
    big = 2.0 * (sum(degree) + n + 1)
    return net, s, t, offset, big


def separate_sec_fractional(inst: Instance, x: Sequence[float], tol: float = CUT_TOL) -> list[Cut]:
    """Every SEC found by the ``n - 1`` rooted min-cut computations, deduplicated."""
    n = inst.n
    cuts: list[Cut] = []
    seen: set[tuple[int, ...]] = set()
    for k in range(n - 1):
        net, s, t, offset, big = _sec_network(inst, x)
        net.add_arc(s, k, big)
        for j in range(k):
            net.add_arc(j, t, big)
        value, side = max_flow_min_cut(net, s, t)
        if value - offset >= 1.0 - tol:
            continue
        vertex_set = tuple(sorted(v + 1 for v in side if v < n))
        if len(vertex_set) < 2 or vertex_set in seen:
            continue
        seen.add(vertex_set)
        cut = sec_cut(inst, vertex_set, x)
        if cut.violation > tol:
            cuts.append(cut)
    return cuts


def is_integral(x: Sequence[float], tol: float = CUT_TOL) -> bool:
    return all(min(abs(v), abs(1.0 - v)) <= tol for v in x)


def separate_sec(inst: Instance, x: Sequence[float], tol: float = CUT_TOL) -> list[Cut]:
    if is_integral(x, tol):
        return separate_sec_integral(inst, x, tol)
    return separate_sec_fractional(inst, x, tol)
