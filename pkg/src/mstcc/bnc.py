"""Branch and cut for spanning trees under conflict constraints.

The root model holds the cardinality row and the a-priori stable-set rows
(maximal cliques, or plain conflict pairs). Subtour elimination and
odd-cycle cuts are separated at every node and kept globally. Nodes are
explored best-bound first and split on the most fractional edge variable.
"""
from __future__ import annotations

import heapq
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .cliques import ConflictGraph, edge_inequalities, initial_stable_constraints
from .cuts import Cut
from .graphs import UnionFind, is_connected
from .instance_io import Instance
from .lp import EQ, LpModel, LpStatus, NumericalFailure, add_rows, solve_lp
from .oddcycle import separate_odd_cycles
from .sec import is_integral, separate_sec_fractional, separate_sec_integral


class SolveStatus(str, Enum):
    OPTIMAL = "Optimal"
    FEASIBLE_WITH_GAP = "FeasibleWithGap"
    INFEASIBLE = "Infeasible"
    TIME_LIMIT = "TimeLimit"


@dataclass(frozen=True)
class SolverConfig:
    time_limit_s: float = 5000.0
    int_tol: float = 1e-5
    cut_tol: float = 1e-5
    abs_gap: float = 0.9999
    ortho_threshold: float = 0.1
    enable_oci: bool = True
    enable_cliques: bool = True
    clique_cap: int | None = None
    node_limit: int | None = None

    def __post_init__(self):
        if min(self.int_tol, self.cut_tol, self.abs_gap, self.time_limit_s) <= 0:
            raise ValueError("tolerances and time limit must be positive")
        if not 0.0 <= self.ortho_threshold <= 1.0:
            raise ValueError("ortho_threshold must lie in [0, 1]")
        if self.node_limit is not None and self.node_limit < 1:
            raise ValueError("node_limit must be at least 1")


@dataclass(frozen=True)
class SearchNode:
    fixed_zero: frozenset[int]
    fixed_one: frozenset[int]
    parent_bound: float
    depth: int


@dataclass
class SearchStats:
    nodes: int = 0
    branchings: int = 0
    lp_solves: int = 0
    cut_rounds: int = 0
    initial_rows: dict[str, int] = field(default_factory=dict)
    cuts_added: dict[str, int] = field(default_factory=dict)
    numerical_failures: int = 0
    seconds: float = 0.0


@dataclass
class SolveResult:
    status: SolveStatus
    primal: float | None
    dual: float
    incumbent: tuple[int, ...] | None
    root_lp_bound: float | None
    stats: SearchStats
    stopped_by: str | None = None

    @property
    def gap(self) -> float | None:
        if self.primal is None or not math.isfinite(self.dual):
            return None
        return self.primal - self.dual


def _stable_rows(inst: Instance, cfg: SolverConfig) -> list[Cut]:
    if cfg.enable_cliques:
        return initial_stable_constraints(inst, cfg.clique_cap)
    return edge_inequalities(inst)


def build_root(inst: Instance, cfg: SolverConfig | None = None,
               stable_rows: Sequence[Cut] | None = None) -> LpModel:
    """Cardinality row ``sum(x) = n - 1`` followed by the stable-set rows."""
    cfg = cfg or SolverConfig()
    if stable_rows is None:
        stable_rows = _stable_rows(inst, cfg)
    model = LpModel([c for _, _, c in inst.edges], np.zeros(inst.m), np.ones(inst.m))
    model.add_row(range(inst.m), [1.0] * inst.m, EQ, inst.n - 1)
    return add_rows(model, stable_rows)


def _cosine(a: Cut, b: Cut) -> float:
    if not a.support or not b.support:
        return 0.0
    overlap = len(set(a.support) & set(b.support))
    return overlap / math.sqrt(len(a.support) * len(b.support))


def select_cuts(violated: Sequence[Cut], cfg: SolverConfig | None = None) -> list[Cut]:
    """Most violated cut plus every cut nearly orthogonal to it.

    All inequality classes have unit coefficients, so the cosine between two
    cuts is ``|A & B| / sqrt(|A| |B|)`` over their supports.
    """
    cfg = cfg or SolverConfig()
    if not violated:
        return []
    ranked = sorted(violated, key=lambda c: (-c.violation, len(c.support), c.support))
    lead = ranked[0]
    return [lead] + [c for c in ranked[1:] if abs(_cosine(lead, c)) <= cfg.ortho_threshold]


def _feasible_tree(inst: Instance, edges: Sequence[int]) -> bool:
    picked = set(edges)
    if len(picked) != inst.n - 1:
        return False
    if any(a in picked and b in picked for a, b in inst.conflicts):
        return False
    uf = UnionFind(range(1, inst.n + 1))
    return all(uf.union(inst.edges[k][0], inst.edges[k][1]) for k in picked)


class _Search:
    def __init__(self, inst: Instance, cfg: SolverConfig, start: float):
        self.inst = inst
        self.cfg = cfg
        self.start = start
        self.stats = SearchStats()
        stable = _stable_rows(inst, cfg)
        self.model = build_root(inst, cfg, stable)
        self.stats.initial_rows = dict(Counter(c.kind.value for c in stable))
        self.pool = {c.key for c in stable}
        self.cg = ConflictGraph.from_instance(inst)
        self.best: tuple[float, tuple[int, ...]] | None = None

    def out_of_time(self) -> bool:
        return time.perf_counter() - self.start > self.cfg.time_limit_s

    def prunable(self, bound: float) -> bool:
        return self.best is not None and bound >= self.best[0] - self.cfg.abs_gap

    def offer(self, tree: Sequence[int]) -> None:
        tree = tuple(sorted(tree))
        if not _feasible_tree(self.inst, tree):
            return
        cost = self.inst.cost(tree)
        if self.best is None or cost < self.best[0]:
            self.best = (cost, tree)

    def bounds(self, node: SearchNode):
        lo = np.zeros(self.inst.m)
        hi = np.ones(self.inst.m)
        lo[list(node.fixed_one)] = 1.0
        hi[list(node.fixed_zero)] = 0.0
        return lo, hi

    def separate(self, x) -> list[Cut]:
        tol = self.cfg.cut_tol
        if is_integral(x, self.cfg.int_tol):
            # conflict rows already make an integral point a stable set
            return [c for c in separate_sec_integral(self.inst, x, tol) if c.key not in self.pool]
        found = separate_sec_fractional(self.inst, x, tol)
        if self.cfg.enable_oci:
            found += separate_odd_cycles(self.cg, x, tol, int_tol=self.cfg.int_tol)
        return select_cuts([c for c in found if c.key not in self.pool], self.cfg)

    def process(self, node: SearchNode, is_root: bool):
        """Cut loop at one node: returns (outcome, lp value, point)."""
        lo, hi = self.bounds(node)
        value, x = node.parent_bound, None
        while True:
            if self.out_of_time():
                return "timeout", value, x
            sol = solve_lp(self.model, lo, hi)
            self.stats.lp_solves += 1
            if sol.status is LpStatus.INFEASIBLE:
                return "infeasible", value, None
            value, x = sol.objective_value, sol.values
            if not is_root and self.prunable(value):
                return "pruned", value, x
            cuts = self.separate(x)
            if not cuts:
                if is_integral(x, self.cfg.int_tol):
                    if not _feasible_tree(self.inst, [k for k in range(self.inst.m) if x[k] > 0.5]):
                        raise NumericalFailure("integral point is not a conflict-free tree")
                    return "integral", value, x
                return "branch", value, x
            add_rows(self.model, cuts)
            self.stats.cut_rounds += 1
            for cut in cuts:
                self.pool.add(cut.key)
                self.stats.cuts_added[cut.kind.value] = self.stats.cuts_added.get(cut.kind.value, 0) + 1

    def children(self, node: SearchNode, x, value: float) -> list[SearchNode]:
        tol = self.cfg.int_tol
        frac = [k for k in range(self.inst.m) if tol < x[k] < 1.0 - tol]
        e = min(frac, key=lambda k: (abs(x[k] - 0.5), k))
        conflicts = {b if a == e else a for a, b in self.inst.conflicts if e in (a, b)}
        up = SearchNode(node.fixed_zero | conflicts, node.fixed_one | {e}, value, node.depth + 1)
        down = SearchNode(node.fixed_zero | {e}, node.fixed_one, value, node.depth + 1)
        return [up, down]


def solve(inst: Instance, cfg: SolverConfig | None = None,
          initial_tree: Sequence[int] | None = None) -> SolveResult:
    cfg = cfg or SolverConfig()
    start = time.perf_counter()

    if inst.n == 1:
        stats = SearchStats(seconds=time.perf_counter() - start)
        return SolveResult(SolveStatus.OPTIMAL, 0, 0.0, (), 0.0, stats)
    graph = {k: (u, v) for k, (u, v, _) in enumerate(inst.edges)}
    if not is_connected(range(1, inst.n + 1), graph):
        stats = SearchStats(seconds=time.perf_counter() - start)
        return SolveResult(SolveStatus.INFEASIBLE, None, math.inf, None, None, stats)

    search = _Search(inst, cfg, start)
    if initial_tree is not None:
        search.offer(initial_tree)

    root = SearchNode(frozenset(), frozenset(), -math.inf, 0)
    heap = [(root.parent_bound, 0, 0, root)]
    seq = 1
    root_bound = None
    unresolved = math.inf  # bound of nodes dropped after a numerical failure
    stopped_by = None
    while heap:
        if search.out_of_time():
            stopped_by = "time"
            break
        if cfg.node_limit is not None and search.stats.nodes >= cfg.node_limit:
            stopped_by = "nodes"
            break
        bound, _, _, node = heapq.heappop(heap)
        if search.prunable(bound):
            continue
        is_root = search.stats.nodes == 0
        search.stats.nodes += 1
        try:
            outcome, value, x = search.process(node, is_root)
        except NumericalFailure:
            search.stats.numerical_failures += 1
            unresolved = min(unresolved, node.parent_bound)
            continue
        if is_root and x is not None:
            root_bound = value
        if outcome == "timeout":
            heapq.heappush(heap, (max(bound, value), 0, seq, node))
            stopped_by = "time"
            break
        if outcome == "integral":
            search.offer([k for k in range(inst.m) if x[k] > 0.5])
        elif outcome == "branch" and not search.prunable(value):
            search.stats.branchings += 1
            for child in search.children(node, x, value):
                heapq.heappush(heap, (child.parent_bound, -child.depth, seq, child))
                seq += 1

    search.stats.seconds = time.perf_counter() - start
    primal = search.best[0] if search.best else None
    incumbent = search.best[1] if search.best else None
    open_bound = min((b for b, *_ in heap), default=math.inf)
    dual = min(open_bound, unresolved, primal if primal is not None else math.inf)

    if primal is not None and primal - dual < cfg.abs_gap:
        status = SolveStatus.OPTIMAL
    elif primal is not None:
        status = SolveStatus.FEASIBLE_WITH_GAP
    elif stopped_by is None and not math.isfinite(unresolved):
        status = SolveStatus.INFEASIBLE
    else:
        status = SolveStatus.TIME_LIMIT
        stopped_by = stopped_by or "numerical"
    return SolveResult(status, primal, dual, incumbent, root_bound, search.stats, stopped_by)
