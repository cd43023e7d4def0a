"""Odd-cycle inequality separation on the conflict graph.

Each fractional conflict node ``u`` is split into ``u+`` and ``u-``; every
conflict ``{u, v}`` becomes the two edges ``{u+, v-}`` and ``{u-, v+}`` of
weight ``(1 - x_u - x_v) / 2``. A ``u+ -> u-`` path has odd length and
projects to an odd closed walk through ``u``. For an odd cycle ``U`` the
weight is ``|U|/2 - x(U)``, so its inequality is violated iff the weight is
below 1/2.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .cliques import ConflictGraph
from .cuts import Cut, CutKind

EPSILON = 1e-6
INT_TOL = 1e-5
CUT_TOL = 1e-5
ZERO_WEIGHT = 1e-9


@dataclass(frozen=True)
class AuxiliaryGraph:
    """Bipartite double cover of the fractional part of the conflict graph.

    ``retained[i]`` owns nodes ``2*i`` (plus copy) and ``2*i + 1`` (minus
    copy).
    """

    retained: tuple[int, ...]
    adj: tuple[tuple[tuple[int, float], ...], ...]

    @property
    def n_nodes(self) -> int:
        return len(self.adj)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def node_of(self, h: int) -> int:
        return self.retained[h // 2]


def build_auxiliary(cg: ConflictGraph, x: Sequence[float], eps: float = EPSILON,
                    int_tol: float = INT_TOL) -> AuxiliaryGraph:
    retained = tuple(u for u in range(cg.n_nodes)
                     if cg.adj[u] and int_tol < x[u] < 1.0 - int_tol)
    index = {u: i for i, u in enumerate(retained)}
    adj: list[list[tuple[int, float]]] = [[] for _ in range(2 * len(retained))]
    for u in retained:
        for v in sorted(cg.adj[u]):
            if v <= u or v not in index:
                continue
            w = (1.0 - x[u] - x[v]) / 2
            if w < ZERO_WEIGHT:
                w = eps
            iu, iv = index[u], index[v]
            for a, b in ((2 * iu, 2 * iv + 1), (2 * iu + 1, 2 * iv)):
                adj[a].append((b, w))
                adj[b].append((a, w))
    return AuxiliaryGraph(retained, tuple(tuple(a) for a in adj))


def _shortest_path(aux: AuxiliaryGraph, src: int, dst: int) -> list[int] | None:
    """Dijkstra from ``src``, stopped once ``dst`` is settled."""
    dist = {src: 0.0}
    prev: dict[int, int] = {}
    done = set()
    heap = [(0.0, src)]
    while heap:
        d, h = heapq.heappop(heap)
        if h in done:
            continue
        done.add(h)
        if h == dst:
            path = [h]
            while h != src:
                h = prev[h]
                path.append(h)
            return path[::-1]
        for g, w in aux.adj[h]:
            nd = d + w
            if g not in done and nd < dist.get(g, float("inf")):
                dist[g] = nd
                prev[g] = h
                heapq.heappush(heap, (nd, g))
    return None


def odd_cycle_from_walk(walk: Sequence[int]) -> list[int] | None:
    """First simple odd cycle found while excising repeats from a closed walk.

    Scanning left to right, a repeated node closes a sub-walk; an odd one of
    length >= 3 is returned, an even one is cut out and the scan continues.
    """
    stack: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            i = pos[v]
            loop = stack[i:]
            if len(loop) % 2 == 1 and len(loop) >= 3:
                return loop
            for w in stack[i + 1:]:
                del pos[w]
            del stack[i + 1:]
        else:
            pos[v] = len(stack)
            stack.append(v)
    return None


def canonical_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    k = cycle.index(min(cycle))
    fwd = list(cycle[k:]) + list(cycle[:k])
    back = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, back))


def separate_odd_cycles(cg: ConflictGraph, x: Sequence[float], tol: float = CUT_TOL,
                        eps: float = EPSILON, int_tol: float = INT_TOL) -> list[Cut]:
    aux = build_auxiliary(cg, x, eps, int_tol)
    cuts: list[Cut] = []
    seen: set[tuple[int, ...]] = set()
    for i, u in enumerate(aux.retained):
        path = _shortest_path(aux, 2 * i, 2 * i + 1)
        if path is None:
            continue
        cycle = odd_cycle_from_walk([aux.node_of(h) for h in path])
        if cycle is None:
            continue
        key = tuple(sorted(cycle))
        if key in seen:
            continue
        rhs = (len(cycle) - 1) / 2
        violation = sum(x[v] for v in cycle) - rhs
        if violation > tol:
            seen.add(key)
            cuts.append(Cut(CutKind.ODD_CYCLE, key, rhs, violation, canonical_cycle(cycle)))
    return cuts
