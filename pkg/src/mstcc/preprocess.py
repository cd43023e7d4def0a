"""Iterative instance reduction by bridge contraction and probing.

Phase 1 contracts bridges, Phase 2 probes single edges for inclusion and
deletes those whose inclusion forces a disconnection, Phase 3 probes edge
pairs and records a new conflict whenever a pair cannot coexist. After an
update, Phase 2 falls back to Phase 1 and Phase 3 falls back to Phase 2.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .graphs import UnionFind, bridges, is_connected
from .instance_io import Instance


class ForcedConflict(ValueError):
    pass


class Verdict(str, Enum):
    CONNECTED = "Connected"
    DISCONNECTED = "Disconnected"


class PreStatus(str, Enum):
    REDUCED = "Reduced"
    INFEASIBLE = "Infeasible"
    SOLVED_OPTIMAL = "SolvedOptimal"


@dataclass(frozen=True)
class ProbeResult:
    verdict: Verdict
    implied_ones: frozenset[int]
    implied_zeros: frozenset[int]


@dataclass(frozen=True)
class PreprocessOutcome:
    """Result of :func:`preprocess`.

    Edge ids in every list refer to the original instance; ``edge_map[k]`` is
    the original id of edge ``k`` of ``reduced``.
    """

    reduced: Instance
    offset: int
    contracted_edges: tuple[int, ...]
    removed_edges: tuple[int, ...]
    added_conflicts: tuple[tuple[int, int], ...]
    status: PreStatus
    primal_solution: tuple[int, ...] | None
    elapsed: float
    edge_map: tuple[int, ...]

    @property
    def edges_fixed(self) -> int:
        return len(self.contracted_edges) + len(self.removed_edges)

    def lift(self, reduced_edges: Iterable[int]) -> list[int]:
        """Map a reduced-instance edge set back to a full original solution."""
        return sorted(set(self.contracted_edges) | {self.edge_map[k] for k in reduced_edges})


def find_bridges(inst: Instance) -> set[int]:
    return bridges(range(1, inst.n + 1), {k: (u, v) for k, (u, v, _) in enumerate(inst.edges)})


def _probe(vertices, edges: Mapping[int, tuple[int, int]], conf: Mapping[int, set[int]],
           forced: Iterable[int]) -> ProbeResult:
    ones = set(forced)
    for e in ones:
        if conf.get(e, set()) & ones:
            raise ForcedConflict(f"forced edges conflict: {sorted(conf[e] & ones)} with {e}")
    zeros: set[int] = set()
    fresh = set(ones)

    def result(verdict):
        return ProbeResult(verdict, frozenset(ones - set(forced)), frozenset(zeros))

    while True:
        for e in fresh:
            hit = conf.get(e, ())
            if ones.intersection(hit):
                # an implied edge conflicts with a fixed one: the chain is infeasible
                return result(Verdict.DISCONNECTED)
            zeros.update(hit)
        residual = {k: uv for k, uv in edges.items() if k not in zeros}
        if not is_connected(vertices, residual):
            return result(Verdict.DISCONNECTED)
        fresh = bridges(vertices, residual) - ones
        if not fresh:
            return result(Verdict.CONNECTED)
        ones |= fresh


def propagate_forced(inst: Instance, forced: Iterable[int]) -> ProbeResult:
    """Follow the implications of putting ``forced`` into the tree.

    Edges in conflict with a fixed edge are dropped; bridges of what remains
    become fixed; repeat to a fixpoint. ``implied_ones`` excludes the forced
    edges themselves.
    """
    adj = inst.conflict_adjacency()
    conf = {k: adj[k] for k in range(inst.m)}
    edges = {k: (u, v) for k, (u, v, _) in enumerate(inst.edges)}
    return _probe(range(1, inst.n + 1), edges, conf, forced)


class _Work:
    def __init__(self, inst: Instance):
        self.inst = inst
        self.uf = UnionFind(range(1, inst.n + 1))
        self.alive = set(range(inst.m))
        adj = inst.conflict_adjacency()
        self.conf = {k: set(adj[k]) for k in range(inst.m)}
        self.offset = 0
        self.contracted: list[int] = []
        self.removed: list[int] = []
        self.added: list[tuple[int, int]] = []
        self.best: tuple[int, list[int]] | None = None

    def vertices(self) -> set[int]:
        return {self.uf.find(v) for v in range(1, self.inst.n + 1)}

    def edges(self) -> dict[int, tuple[int, int]]:
        find = self.uf.find
        return {k: (find(self.inst.edges[k][0]), find(self.inst.edges[k][1]))
                for k in sorted(self.alive)}

    def remove(self, e: int) -> None:
        for f in self.conf.pop(e):
            self.conf[f].discard(e)
        self.alive.discard(e)
        self.removed.append(e)

    def contract(self, e: int) -> None:
        u, v, c = self.inst.edges[e]
        self.offset += c
        self.contracted.append(e)
        for f in sorted(self.conf[e]):
            self.remove(f)
        self.conf.pop(e)
        self.alive.discard(e)
        self.uf.union(u, v)
        for k, (a, b) in self.edges().items():
            if a == b:
                self.remove(k)

    def add_conflict(self, a: int, b: int) -> None:
        self.conf[a].add(b)
        self.conf[b].add(a)
        self.added.append((min(a, b), max(a, b)))

    def probe(self, forced) -> ProbeResult:
        verts, edges = self.vertices(), self.edges()
        res = _probe(verts, edges, self.conf, forced)
        if res.verdict is Verdict.CONNECTED:
            self._maybe_store(verts, edges, set(forced) | res.implied_ones, res.implied_zeros)
        return res

    def _maybe_store(self, verts, edges, ones, zeros) -> None:
        resid = self.alive - zeros
        if any(self.conf[e] & resid for e in resid):
            return
        # residual is conflict-free: any spanning tree of it is feasible
        cost_of = lambda k: (self.inst.edges[k][2], k)
        uf = UnionFind(verts)
        tree = [k for k in sorted(ones) + sorted(resid - ones, key=cost_of)
                if uf.union(*edges[k])]
        full = sorted(self.contracted + tree)
        cost = self.inst.cost(full)
        if self.best is None or cost < self.best[0]:
            self.best = (cost, full)

    def phase1(self) -> PreStatus | None:
        while True:
            verts, edges = self.vertices(), self.edges()
            if not is_connected(verts, edges):
                return PreStatus.INFEASIBLE
            found = bridges(verts, edges)
            if not found:
                break
            for e in sorted(found):
                if e in self.alive:
                    self.contract(e)
        if len(self.vertices()) == 1:
            return PreStatus.SOLVED_OPTIMAL
        return None

    def phase2(self) -> bool:
        for e in sorted(self.alive):
            if self.conf[e] and self.probe([e]).verdict is Verdict.DISCONNECTED:
                self.remove(e)
                return True
        return False

    def phase3(self, cursor: tuple[int, int]) -> tuple[int, int] | None:
        """Scan pairs cyclically after ``cursor``; return the pair added, if any."""
        alive = sorted(self.alive)
        pairs = [(a, b) for i, a in enumerate(alive) for b in alive[i + 1:]
                 if b not in self.conf[a] and (self.conf[a] or self.conf[b])]
        start = next((k for k, pr in enumerate(pairs) if pr > cursor), 0)
        for pr in pairs[start:] + pairs[:start]:
            if self.probe(pr).verdict is Verdict.DISCONNECTED:
                self.add_conflict(*pr)
                return pr
        return None

    def reduced(self) -> tuple[Instance, tuple[int, ...]]:
        roots = sorted(self.vertices())
        label = {r: k + 1 for k, r in enumerate(roots)}
        edge_map = tuple(sorted(self.alive))
        pos = {e: k for k, e in enumerate(edge_map)}
        find = self.uf.find
        edges = tuple((label[find(self.inst.edges[e][0])], label[find(self.inst.edges[e][1])],
                       self.inst.edges[e][2]) for e in edge_map)
        conflicts = frozenset((pos[a], pos[b]) for a in edge_map for b in self.conf[a] if a < b)
        return Instance(len(roots), edges, conflicts), edge_map


def preprocess(inst: Instance) -> PreprocessOutcome:
    t0 = time.perf_counter()
    w = _Work(inst)
    status = PreStatus.REDUCED
    cursor = (-1, -1)
    phase = 1
    while True:
        if phase == 1:
            done = w.phase1()
            if done is not None:
                status = done
                break
            phase = 2
        elif phase == 2:
            phase = 1 if w.phase2() else 3
        else:
            added = w.phase3(cursor)
            if added is None:
                break
            cursor = added
            phase = 2

    reduced, edge_map = w.reduced()
    primal = None
    if status is PreStatus.SOLVED_OPTIMAL:
        primal = tuple(sorted(w.contracted))
    elif status is PreStatus.REDUCED and w.best is not None:
        primal = tuple(w.best[1])
    return PreprocessOutcome(
        reduced=reduced,
        offset=w.offset,
        contracted_edges=tuple(w.contracted),
        removed_edges=tuple(w.removed),
        added_conflicts=tuple(w.added),
        status=status,
        primal_solution=primal,
        elapsed=time.perf_counter() - t0,
        edge_map=edge_map,
    )
