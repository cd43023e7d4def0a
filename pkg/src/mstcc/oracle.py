"""Brute-force reference answers for tests.

Nothing here reuses the solver's graph routines; the enumerations are kept
naive on purpose so they can serve as independent cross-checks.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .instance_io import Instance
from .lp import EQ, LE, LpModel


class TooLarge(ValueError):
    pass


class Disconnected(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    status: str  # "Optimal" or "Infeasible"
    cost: int | None
    tree: tuple[int, ...] | None
    trees_enumerated: int


def _root(parent, v):
    while parent[v] != v:
        v = parent[v]
    return v


def _reaches_all(n, edge_list, allowed):
    adj = {v: [] for v in range(1, n + 1)}
    for k in allowed:
        u, v = edge_list[k][0], edge_list[k][1]
        adj[u].append(v)
        adj[v].append(u)
    seen, todo = {1}, [1]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == n


def spanning_trees(inst: Instance):
    """Yield every spanning tree of ``inst`` as a sorted tuple of edge ids.

    Include/exclude recursion over edges in index order; a branch dies as soon
    as an inclusion closes a cycle or the edges still available cannot connect
    the graph.
    """
    n, edges = inst.n, inst.edges
    if n > 12:
        raise TooLarge(f"n={n} exceeds the enumeration guard of 12")
    m = len(edges)
    chosen: list[int] = []

    def rec(k, parent, excluded):
        if len(chosen) == n - 1:
            yield tuple(chosen)
            return
        if k == m or m - k < n - 1 - len(chosen):
            return
        available = [i for i in range(m) if i not in excluded]
        if not _reaches_all(n, edges, available):
            return
        u, v = edges[k][0], edges[k][1]
        ru, rv = _root(parent, u), _root(parent, v)
        if ru != rv:
            child = dict(parent)
            child[ru] = rv
            chosen.append(k)
            yield from rec(k + 1, child, excluded)
            chosen.pop()
        yield from rec(k + 1, parent, excluded | {k})

    yield from rec(0, {v: v for v in range(1, n + 1)}, frozenset())


def feasible_trees(inst: Instance):
    for tree in spanning_trees(inst):
        picked = set(tree)
        if not any(a in picked and b in picked for a, b in inst.conflicts):
            yield tree


def brute_force_solve(inst: Instance) -> OracleResult:
    best = None
    count = 0
    for tree in spanning_trees(inst):
        count += 1
        picked = set(tree)
        if any(a in picked and b in picked for a, b in inst.conflicts):
            continue
        cost = sum(inst.edges[k][2] for k in tree)
        if best is None or cost < best[0]:
            best = (cost, tree)
    if best is None:
        return OracleResult("Infeasible", None, None, count)
    return OracleResult("Optimal", best[0], best[1], count)


def kruskal_mst(inst: Instance) -> tuple[int, tuple[int, ...]]:
    parent = {v: v for v in range(1, inst.n + 1)}
    tree = []
    for k in sorted(range(inst.m), key=lambda k: (inst.edges[k][2], k)):
        ru, rv = _root(parent, inst.edges[k][0]), _root(parent, inst.edges[k][1])
        if ru != rv:
            parent[ru] = rv
            tree.append(k)
    if len(tree) != inst.n - 1:
        raise Disconnected(f"graph {inst.name} is not connected")
    return sum(inst.edges[k][2] for k in tree), tuple(sorted(tree))


def naive_sec_violation(inst: Instance, x, tol: float = 1e-5):
    """Most violated subtour constraint over every vertex set with |S| >= 2.

    Returns ``(violation, S)`` or None.
    """
    if inst.n > 10:
        raise TooLarge(f"n={inst.n} exceeds the subset-scan guard of 10")
    best = None
    verts = range(1, inst.n + 1)
    for size in range(2, inst.n + 1):
        for subset in combinations(verts, size):
            s = set(subset)
            inside = sum(x[k] for k, (u, v, _) in enumerate(inst.edges) if u in s and v in s)
            viol = inside - (size - 1)
            if viol > tol and (best is None or viol > best[0] + 1e-12):
                best = (viol, frozenset(s))
    return best


def _simple_cycles(adj):
    """Node sequences of simple cycles (length >= 3), each listed once.

    A cycle is reported from its smallest node, in the direction whose second
    node is smaller than its last.
    """
    nodes = sorted(adj)
    for s in nodes:
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            w = next(stack[-1], None)
            if w is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if w in on_path:
                continue
            path.append(w)
            on_path.add(w)
            if len(path) >= 3 and s in adj[w] and path[1] < w:
                yield list(path)
            stack.append(iter(sorted(v for v in adj[w] if v > s)))


def naive_odd_cycle_violation(n_nodes: int, pairs, x, tol: float = 1e-5):
    """Most violated odd-cycle inequality by enumerating all simple odd cycles.

    Returns ``(violation, cycle)`` or None; ``cycle`` is a node sequence.
    """
    if n_nodes > 12:
        raise TooLarge(f"{n_nodes} nodes exceeds the cycle-enumeration guard of 12")
    adj = {v: set() for v in range(n_nodes)}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    best = None
    for cyc in _simple_cycles(adj):
        if len(cyc) % 2 == 0:
            continue
        viol = sum(x[v] for v in cyc) - (len(cyc) - 1) / 2
        if viol > tol and (best is None or viol > best[0] + 1e-12):
            best = (viol, cyc)
    return best


def naive_maximal_cliques(n_nodes: int, pairs) -> set[frozenset[int]]:
    """All maximal cliques with at least two nodes, by scanning every subset."""
    nbr = [0] * n_nodes
    for a, b in pairs:
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    clique = [False] * (1 << n_nodes)
    clique[0] = True
    for mask in range(1, 1 << n_nodes):
        low = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << low)
        clique[mask] = clique[rest] and (nbr[low] & rest) == rest
    out = set()
    for mask in range(1, 1 << n_nodes):
        if not clique[mask] or bin(mask).count("1") < 2:
            continue
        if any(not mask >> v & 1 and (nbr[v] & mask) == mask for v in range(n_nodes)):
            continue
        out.add(frozenset(v for v in range(n_nodes) if mask >> v & 1))
    return out


def naive_min_cut(n: int, arcs, s: int, t: int) -> float:
    """Minimum s-t cut capacity by enumerating all 2^(n-2) bipartitions."""
    others = [v for v in range(n) if v not in (s, t)]
    best = None
    for size in range(len(others) + 1):
        for extra in combinations(others, size):
            side = {s, *extra}
            cap = sum(c for a, b, c in arcs if a in side and b not in side)
            if best is None or cap < best:
                best = cap
    return best


def brute_force_lp(model: LpModel, lower=None, upper=None):
    """Optimum by enumerating basic solutions; tiny models only.

    Every vertex fixes each variable either at a bound or as part of a basis
    of tight rows. For each choice of rows-held-tight and variables-at-bound
    that leaves a square nonsingular system, solve and keep feasible points.
    """
    lower = model.lower if lower is None else np.asarray(lower, dtype=float)
    upper = model.upper if upper is None else np.asarray(upper, dtype=float)
    a, b, senses = model.dense()
    n = model.n_vars
    m = len(b)
    eq = []
    for i in range(m):
        # dependent equalities are implied or contradictory; the final check catches both
        if senses[i] == EQ and np.linalg.matrix_rank(a[eq + [i]]) == len(eq) + 1:
            eq.append(i)
    le = [i for i in range(m) if senses[i] == LE]
    best = None
    for k in range(0, min(n, m) + 1):
        for tight_le in combinations(le, max(0, k - len(eq))):
            tight = eq + list(tight_le)
            if len(tight) != k:
                continue
            for free in combinations(range(n), k):
                fixed = [j for j in range(n) if j not in free]
                for choice in product((0, 1), repeat=len(fixed)):
                    x = np.zeros(n)
                    for j, side in zip(fixed, choice):
                        x[j] = upper[j] if side else lower[j]
                    if k:
                        sub = a[np.ix_(tight, free)]
                        if abs(np.linalg.det(sub)) < 1e-10:
                            continue
                        rhs = b[tight] - a[np.ix_(tight, fixed)] @ x[fixed]
                        x[list(free)] = np.linalg.solve(sub, rhs)
                    if np.any(x < lower - 1e-9) or np.any(x > upper + 1e-9):
                        continue
                    lhs = a @ x
                    if any(lhs[i] > b[i] + 1e-9 if senses[i] == LE else abs(lhs[i] - b[i]) > 1e-9
                           for i in range(m)):
                        continue
                    val = float(model.objective @ x)
                    if best is None or val < best - 1e-12:
                        best = val
    return best
