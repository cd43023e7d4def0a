"""Small multigraph routines shared by preprocessing and separation."""
from __future__ import annotations

from typing import Iterable, Mapping


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, items: Iterable[int] = ()):
        self.parent = {v: v for v in items}

    def add(self, v):
        self.parent.setdefault(v, v)

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller label wins so roots are deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _adjacency(vertices, edges: Mapping[int, tuple[int, int]]):
    adj = {v: [] for v in vertices}
    for eid in sorted(edges):
        u, v = edges[eid]
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    return adj


def components(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    verts = sorted(vertices)
    adj = _adjacency(verts, edges)
    seen = set()
    comps = []
    for s in verts:
        if s in seen:
            continue
        seen.add(s)
        comp, stack = [s], [s]
        while stack:
            for w, _ in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> bool:
    verts = list(vertices)
    return len(verts) <= 1 or len(components(verts, edges)) == 1


def bridges(vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]) -> set[int]:
    """Edge ids whose removal disconnects their component.

    Iterative DFS with discovery / low-point labels. The tree edge into a
    vertex is skipped by id, not by endpoint, so parallel edges are never
    reported.
    """
    verts = sorted(vertices)
    adj = _adjacency(verts, edges)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found: set[int] = set()
    clock = 0
    for root in verts:
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, via, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == via:
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    found.add(via)
    return found
