"""Preprocessing followed by branch and cut, with results in original terms."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, replace

from .bnc import SearchStats, SolverConfig, SolveResult, SolveStatus, solve
from .instance_io import Instance
from .preprocess import PreprocessOutcome, PreStatus, preprocess


@dataclass(frozen=True)
class PipelineResult:
    """Bounds and tree refer to the original instance (offset folded in)."""

    status: SolveStatus
    primal: float | None
    dual: float
    tree: tuple[int, ...] | None
    root_lp_bound: float | None
    pre: PreprocessOutcome
    search: SolveResult | None
    seconds: float


def solve_instance(inst: Instance, cfg: SolverConfig | None = None) -> PipelineResult:
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    pre = preprocess(inst)
    if pre.status is PreStatus.INFEASIBLE:
        return PipelineResult(SolveStatus.INFEASIBLE, None, math.inf, None, None, pre, None,
                              time.perf_counter() - t0)
    if pre.status is PreStatus.SOLVED_OPTIMAL:
        cost = float(pre.offset)
        return PipelineResult(SolveStatus.OPTIMAL, cost, cost, tuple(pre.contracted_edges), cost,
                              pre, None, time.perf_counter() - t0)

    remaining = cfg.time_limit_s - pre.elapsed
    if remaining <= 0:
        stats = SearchStats()
        search = SolveResult(SolveStatus.TIME_LIMIT, None, -math.inf, None, None, stats, "time")
    else:
        start = None
        if pre.primal_solution is not None:
            pos = {e: k for k, e in enumerate(pre.edge_map)}
            contracted = set(pre.contracted_edges)
            start = [pos[e] for e in pre.primal_solution if e not in contracted]
        search = solve(pre.reduced, replace(cfg, time_limit_s=remaining), initial_tree=start)

    shift = pre.offset
    primal = None if search.primal is None else search.primal + shift
    tree = None if search.incumbent is None else tuple(pre.lift(search.incumbent))
    root = None if search.root_lp_bound is None else search.root_lp_bound + shift
    return PipelineResult(search.status, primal, search.dual + shift, tree, root, pre, search,
                          time.perf_counter() - t0)
