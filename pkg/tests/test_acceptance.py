"""Acceptance suite: one check per criterion, each reporting a PASS/FAIL line."""
import math
import os
import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from conftest import (ACCEPTANCE_LINES, random_conflict_graph, random_tree_mixture,
                      small_instance, stable_point)
from mstcc.bnc import SolverConfig, SolveStatus, solve
from mstcc.cliques import ConflictGraph, maximal_cliques
from mstcc.flow import FlowNetwork, max_flow_min_cut
from mstcc.instance_io import TYPE1, GeneratorSpec, generate_instance, read_instance
from mstcc.oddcycle import separate_odd_cycles
from mstcc.oracle import (brute_force_solve, feasible_trees, kruskal_mst, naive_maximal_cliques,
                          naive_min_cut, naive_odd_cycle_violation, naive_sec_violation)
from mstcc.pipeline import solve_instance
from mstcc.preprocess import PreStatus, preprocess
from mstcc.sec import separate_sec_fractional


def record(label: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")


@pytest.fixture(scope="module")
def corpus():
    """Seeded mixed-family instances with their oracle answers."""
    rng = random.Random(20261015)
    rows = []
    for _ in range(500):
        inst = small_instance(rng, (4, 8), 14, 12)
        rows.append((inst, brute_force_solve(inst)))
    return rows


def test_oracle_equivalence(corpus):
    start = time.perf_counter()
    bad = []
    statuses = {}
    for inst, ref in corpus:
        res = solve_instance(inst)
        statuses[ref.status] = statuses.get(ref.status, 0) + 1
        same = res.status.value == ref.status and (ref.status != "Optimal" or res.primal == ref.cost)
        if same and res.tree is not None:
            same = inst.cost(res.tree) == ref.cost
        if not same:
            bad.append(inst.name)
    secs = time.perf_counter() - start
    ok = not bad and len(corpus) >= 500 and secs < 300
    record("oracle equivalence", ok,
           f"{len(corpus) - len(bad)}/{len(corpus)} match {statuses}, {secs:.1f}s")
    assert ok, bad[:5]


def test_preprocessing_safety(corpus):
    bad = []
    added = 0
    for inst, ref in corpus:
        out = preprocess(inst)
        if ref.status == "Infeasible":
            # a reduced instance may still need the search to prove infeasibility
            if out.status is not PreStatus.INFEASIBLE and brute_force_solve(out.reduced).status != "Infeasible":
                bad.append((inst.name, "infeasible lost"))
            continue
        if out.status is PreStatus.INFEASIBLE:
            bad.append((inst.name, "declared infeasible"))
            continue
        reduced_opt = 0 if out.status is PreStatus.SOLVED_OPTIMAL else brute_force_solve(out.reduced).cost
        if reduced_opt + out.offset != ref.cost:
            bad.append((inst.name, "optimum shifted"))
        trees = list(feasible_trees(inst)) if out.added_conflicts else []
        added += len(out.added_conflicts)
        for a, b in out.added_conflicts:
            if any(a in t and b in t for t in trees):
                bad.append((inst.name, f"invalid pair {(a, b)}"))
    ok = not bad
    record("preprocessing safety", ok,
           f"{len(corpus) - len(bad)}/{len(corpus)} safe, {added} added conflicts checked")
    assert ok, bad[:5]


def test_sec_separation_exactness():
    rng = random.Random(303)
    bad, hits = 0, 0
    for _ in range(200):
        n = rng.randint(3, 10)
        inst, x = random_tree_mixture(rng, n, rng.randint(n - 1, min(n * (n - 1) // 2, 2 * n)))
        assert abs(sum(x) - (n - 1)) < 1e-9
        ref = naive_sec_violation(inst, x)
        cuts = separate_sec_fractional(inst, x)
        if bool(cuts) != (ref is not None):
            bad += 1
            continue
        if ref is not None:
            hits += 1
            if abs(max(c.violation for c in cuts) - ref[0]) > 1e-7:
                bad += 1
            if any(abs(c.violation - c.violation_at(x)) > 1e-7 or c.violation <= 1e-5 for c in cuts):
                bad += 1
    ok = bad == 0 and hits > 0
    record("SEC separation exactness", ok, f"200 points, {hits} violated, {bad} disagreements")
    assert ok


def test_odd_cycle_separation_exactness():
    rng = random.Random(404)
    bad, hits = 0, 0
    for _ in range(200):
        n = rng.randint(3, 12)
        pairs = random_conflict_graph(rng, n, rng.uniform(0.15, 0.6))
        x = stable_point(rng, n, pairs)
        ref = naive_odd_cycle_violation(n, pairs, x)
        cuts = separate_odd_cycles(ConflictGraph.from_pairs(n, pairs), x)
        if bool(cuts) != (ref is not None):
            bad += 1
        hits += ref is not None
    five = ConflictGraph.from_pairs(5, [(i, (i + 1) % 5) for i in range(5)])
    boundary = separate_odd_cycles(five, [0.4] * 5) == []
    ok = bad == 0 and boundary and hits > 0
    record("odd-cycle separation exactness", ok,
           f"200 points, {hits} violated, {bad} disagreements, 5-cycle at 0.4 cut-free: {boundary}")
    assert ok


def test_clique_enumeration():
    rng = random.Random(505)
    bad = 0
    for _ in range(100):
        n = rng.randint(1, 15)
        pairs = random_conflict_graph(rng, n, rng.random())
        got = maximal_cliques(ConflictGraph.from_pairs(n, pairs))
        if len(got) != len(set(got)) or set(got) != naive_maximal_cliques(n, pairs):
            bad += 1
    triangle = maximal_cliques(ConflictGraph.from_pairs(3, [(0, 1), (1, 2), (0, 2)]))
    ok = bad == 0 and triangle == [frozenset({0, 1, 2})]
    record("clique enumeration", ok, f"100 graphs, {bad} mismatches, triangle -> {len(triangle)} clique")
    assert ok


def test_no_conflicts_degenerates_to_mst():
    rng = random.Random(606)
    bad = []
    for _ in range(100):
        inst = small_instance(rng, (4, 12), 30, 0)
        res = solve(inst)
        if (res.status is not SolveStatus.OPTIMAL or res.stats.branchings
                or res.primal != kruskal_mst(inst)[0]):
            bad.append(inst.name)
    ok = not bad
    record("no-conflict degeneration", ok, f"100 instances, {len(bad)} branched or differ from MST")
    assert ok, bad[:5]


def _ablation_instances(count):
    """Type1 instances whose preprocessing leaves a search to do."""
    found = []
    seed = 0
    while len(found) < count:
        seed += 1
        inst = generate_instance(GeneratorSpec(25, 60, 120, TYPE1, (1, 100), seed))
        out = preprocess(inst)
        if out.status is PreStatus.REDUCED:
            found.append(out.reduced)
    return found


def test_ablation_root_bound_order():
    start = time.perf_counter()
    names = ("plain", "OCI", "Cliques", "OCI+Cliques")
    flags = ((False, False), (True, False), (False, True), (True, True))
    bad, strict = [], 0
    for inst in _ablation_instances(20):
        bounds = {}
        for name, (oci, cliques) in zip(names, flags):
            cfg = SolverConfig(enable_oci=oci, enable_cliques=cliques, node_limit=1)
            bounds[name] = solve(inst, cfg).root_lp_bound
        if any(b is None for b in bounds.values()):
            bad.append((inst.name, bounds))
            continue
        p, o, c, f = (bounds[k] for k in names)
        if not (p <= o + 1e-6 and p <= c + 1e-6 and o <= f + 1e-6 and c <= f + 1e-6):
            bad.append((inst.name, bounds))
        strict += f > p + 1e-6
    secs = time.perf_counter() - start
    ok = not bad and secs < 600
    record("ablation root-bound order", ok,
           f"20 instances, {len(bad)} out of order, {strict} strictly improved, {secs:.1f}s")
    assert ok, bad[:3]


BENCHMARKS = os.environ.get("MSTCC_BENCHMARK_DIR")


def _bench(name):
    root = Path(BENCHMARKS)
    for candidate in (root / name, root / f"{name}.inst", root / f"{name}.txt"):
        if candidate.exists():
            return read_instance(candidate)
    raise FileNotFoundError(f"{name} not found under {root}")


@pytest.mark.skipif(not BENCHMARKS, reason="set MSTCC_BENCHMARK_DIR to the external benchmark files")
def test_benchmark_spot_checks():
    cfg = SolverConfig(time_limit_s=5000)
    notes, ok = [], True

    res = solve_instance(_bench("50-200-199"), cfg)
    good = res.primal == 708 and res.root_lp_bound is not None and abs(res.root_lp_bound - 701) <= 0.5
    notes.append(f"50-200-199 primal={res.primal} root={res.root_lp_bound}")
    ok &= good

    out = preprocess(_bench("50-200-3903"))
    red = out.reduced
    good = (red.n, red.m, red.p, out.edges_fixed) == (33, 41, 12, 159)
    notes.append(f"50-200-3903 reduced={red.n}/{red.m}/{red.p} fixed={out.edges_fixed}")
    ok &= good

    for name in ("200-600-5391", "300-800-3196", "300-1000-14985"):
        res = solve_instance(_bench(name), cfg)
        notes.append(f"{name} {res.status.value}")
        ok &= res.status is SolveStatus.INFEASIBLE
    record("benchmark spot-checks", ok, "; ".join(notes))
    assert ok


def test_benchmark_spot_checks_reported():
    if not BENCHMARKS:
        ACCEPTANCE_LINES.append("SKIP  benchmark spot-checks: MSTCC_BENCHMARK_DIR not set")


def test_push_relabel_correctness():
    rng = random.Random(909)
    worst = 0.0
    for _ in range(300):
        n = rng.randint(2, 8)
        net = FlowNetwork(n)
        for _ in range(rng.randint(0, 24)):
            a, b = rng.randrange(n), rng.randrange(n)
            if a != b:
                net.add_arc(a, b, float(Fraction(rng.randint(0, 40), rng.randint(1, 9))))
        s, t = rng.sample(range(n), 2)
        value, _ = max_flow_min_cut(net, s, t)
        worst = max(worst, abs(value - naive_min_cut(n, list(net.arcs()), s, t)))
    ok = worst <= 1e-9 and math.isfinite(worst)
    record("push-relabel correctness", ok, f"300 networks, max error {worst:.2e}")
    assert ok
