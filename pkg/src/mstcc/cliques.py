"""Maximal clique enumeration on the conflict graph."""
from __future__ import annotations

from dataclasses import dataclass

from .cuts import Cut, CutKind
from .instance_io import Instance


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ConflictGraph:
    """Nodes are edge ids of the original graph, adjacency = conflicts."""

    n_nodes: int
    adj: tuple[frozenset[int], ...]

    @classmethod
    def from_pairs(cls, n_nodes: int, pairs) -> "ConflictGraph":
        adj: list[set[int]] = [set() for _ in range(n_nodes)]
        for a, b in pairs:
            if a == b:
                raise ValueError(f"self-conflict on node {a}")
            adj[a].add(b)
            adj[b].add(a)
        return cls(n_nodes, tuple(frozenset(s) for s in adj))

    @classmethod
    def from_instance(cls, inst: Instance) -> "ConflictGraph":
        return cls.from_pairs(inst.m, inst.conflicts)

    def pairs(self):
        for a in range(self.n_nodes):
            for b in sorted(self.adj[a]):
                if a < b:
                    yield a, b


def maximal_cliques(cg: ConflictGraph, cap: int | None = None) -> list[frozenset[int]]:
    """Every maximal clique with two or more nodes, each exactly once.

    Bron-Kerbosch with Tomita pivoting: the pivot is the node of P | X with the
    most neighbours in P. Raises CapExceeded once more than ``cap`` cliques
    have been produced.
    """
    adj = cg.adj
    found: list[frozenset[int]] = []
    active = [v for v in range(cg.n_nodes) if adj[v]]
    # explicit stack of (R, P, X)
    stack = [(frozenset(), set(active), set())]
    while stack:
        r, p, x = stack.pop()
        if not p:
            if not x:
                found.append(r)
                if cap is not None and len(found) > cap:
                    raise CapExceeded(f"more than {cap} maximal cliques")
            continue
        pivot = max(sorted(p | x), key=lambda u: len(p & adj[u]))
        branch = sorted(p - adj[pivot], reverse=True)
        children = []
        for v in reversed(branch):
            children.append((r | {v}, p & adj[v], x & adj[v]))
            p.discard(v)
            x.add(v)
        stack.extend(reversed(children))
    return [c for c in found if len(c) >= 2]


def default_cap(inst: Instance) -> int:
    return max(inst.p, 10000)


def initial_stable_constraints(inst: Instance, cap: int | None = None) -> list[Cut]:
    """Clique rows for the conflict graph, or edge rows if there are too many cliques."""
    if cap is None:
        cap = default_cap(inst)
    try:
        cliques = maximal_cliques(ConflictGraph.from_instance(inst), cap)
    except CapExceeded:
        return edge_inequalities(inst)
    cuts = [Cut(CutKind.CLIQUE, tuple(q), 1.0, members=tuple(sorted(q))) for q in cliques]
    return sorted(cuts, key=lambda c: c.support)


def edge_inequalities(inst: Instance) -> list[Cut]:
    return [Cut(CutKind.EDGE_PAIR, (a, b), 1.0, members=(a, b)) for a, b in sorted(inst.conflicts)]
