"""Command-line front end: solve, preprocess, generate, validate, ablate."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, replace
from pathlib import Path

from .bnc import SolverConfig, SolveStatus
from .instance_io import (TYPE1, TYPE2, GeneratorError, GeneratorSpec, InstanceFormatError,
                          generate_instance, read_instance, validate, write_instance)
from .pipeline import PipelineResult, solve_instance
from .preprocess import PreprocessOutcome, preprocess

ABLATION_HEADER = ["config", "root_lp", "primal", "dual", "root_improv_pct", "dual_improv_pct"]
ABLATION_CONFIGS = [("plain", False, False), ("OCI", True, False),
                    ("Cliques", False, True), ("OCI+Cliques", True, True)]


def _num(v):
    """JSON-safe number: infinities and NaN become null."""
    if v is None or (isinstance(v, float) and not math.isfinite(v)):
        return None
    return v


def preprocess_report(name: str, pre: PreprocessOutcome) -> dict:
    return {
        "instance": name,
        "status": pre.status.value,
        "edges_fixed": pre.edges_fixed,
        "edges_contracted": len(pre.contracted_edges),
        "edges_removed": len(pre.removed_edges),
        "conflicts_added": len(pre.added_conflicts),
        "offset": pre.offset,
        "reduced": {"n": pre.reduced.n, "m": pre.reduced.m, "p": pre.reduced.p},
        "primal_tree": None if pre.primal_solution is None else [e + 1 for e in pre.primal_solution],
        "seconds": pre.elapsed,
    }


def solve_report(name: str, res: PipelineResult, cfg: SolverConfig) -> dict:
    stats = res.search.stats if res.search is not None else None
    return {
        "instance": name,
        "status": res.status.value,
        "primal": _num(res.primal),
        "dual": _num(res.dual),
        "root_lp_bound": _num(res.root_lp_bound),
        "tree": None if res.tree is None else [e + 1 for e in res.tree],
        "preprocessing": preprocess_report(name, res.pre),
        "initial_rows": dict(stats.initial_rows) if stats else {},
        "cuts_added": dict(stats.cuts_added) if stats else {},
        "nodes": stats.nodes if stats else 0,
        "branchings": stats.branchings if stats else 0,
        "lp_solves": stats.lp_solves if stats else 0,
        "stopped_by": res.search.stopped_by if res.search is not None else None,
        "seconds": res.seconds,
        "config": asdict(cfg),
    }


def summary(report: dict) -> str:
    pre = report["preprocessing"]
    lines = [
        f"instance      {report['instance']}",
        f"status        {report['status']}",
        f"primal        {report['primal']}",
        f"dual          {report['dual']}",
        f"root LP       {report['root_lp_bound']}",
        f"preprocess    {pre['edges_fixed']} edges fixed, {pre['conflicts_added']} conflicts added,"
        f" offset {pre['offset']}, {pre['seconds']:.3f}s",
        f"search        {report['nodes']} nodes, cuts {report['cuts_added'] or '{}'}",
        f"wall time     {report['seconds']:.3f}s",
    ]
    return "\n".join(lines)


def _pct(variant, plain):
    if variant is None or plain is None or not math.isfinite(variant) or not math.isfinite(plain):
        return None
    if plain == 0:
        return 0.0 if variant == plain else None
    return 100.0 * (variant - plain) / abs(plain)


def ablation_rows(inst, cfg: SolverConfig) -> list[dict]:
    rows = []
    base = None
    for label, oci, cliques in ABLATION_CONFIGS:
        res = solve_instance(inst, replace(cfg, enable_oci=oci, enable_cliques=cliques))
        row = {"config": label, "root_lp": _num(res.root_lp_bound),
               "primal": _num(res.primal), "dual": _num(res.dual)}
        if base is None:
            base = row
        row["root_improv_pct"] = _pct(row["root_lp"], base["root_lp"])
        row["dual_improv_pct"] = _pct(row["dual"], base["dual"])
        rows.append(row)
    return rows


def ablation_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=ABLATION_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row[k] is None else row[k] for k in ABLATION_HEADER})
    return buf.getvalue()


def _parse_nmp(text: str) -> tuple[int, int, int]:
    parts = text.split("-")
    if len(parts) != 3 or not all(p.isdigit() for p in parts):
        raise argparse.ArgumentTypeError(f"expected n-m-p, got {text!r}")
    n, m, p = (int(x) for x in parts)
    return n, m, p


def _config(args) -> SolverConfig:
    return SolverConfig(time_limit_s=args.time_limit, enable_oci=not args.no_oci,
                        enable_cliques=not args.no_cliques, clique_cap=args.clique_cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mstcc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def solver_flags(p):
        p.add_argument("file", type=Path)
        p.add_argument("--time-limit", type=float, default=5000.0)
        p.add_argument("--no-oci", action="store_true")
        p.add_argument("--no-cliques", action="store_true")
        p.add_argument("--clique-cap", type=int, default=None)
        p.add_argument("--seed", type=int, default=0, help="recorded only; the solver is deterministic")
        p.add_argument("--out", type=Path, default=None, help="directory for report files")

    solver_flags(sub.add_parser("solve", help="preprocess and solve to optimality"))
    solver_flags(sub.add_parser("ablate", help="root and final bounds for the four configurations"))

    p = sub.add_parser("preprocess", help="run preprocessing only and print a JSON report")
    p.add_argument("file", type=Path)
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("file", type=Path)

    p = sub.add_parser("generate", help="write a random instance")
    p.add_argument("spec", type=_parse_nmp, help="n-m-p")
    p.add_argument("--family", choices=[TYPE1, TYPE2], default=TYPE1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cost-min", type=int, default=1)
    p.add_argument("--cost-max", type=int, default=100)
    p.add_argument("--out", type=Path, default=None, help="output file (stdout if omitted)")
    return parser


def _write(out_dir: Path | None, filename: str, text: str) -> None:
    if out_dir is None:
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / filename).write_text(text, encoding="utf-8")


def _load(path: Path):
    inst = read_instance(path)
    problems = validate(inst)
    bad = [v for v in problems if v.kind != "Disconnected"]
    if bad:
        raise InstanceFormatError(bad[0].kind, None, bad[0].detail)
    return inst


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1  # bad flags count as input errors
    try:
        if args.command == "generate":
            n, m, p = args.spec
            spec = GeneratorSpec(n, m, p, args.family, (args.cost_min, args.cost_max), args.seed)
            text = write_instance(generate_instance(spec))
            if args.out is None:
                sys.stdout.write(text)
            else:
                args.out.write_text(text, encoding="utf-8")
            return 0

        if args.command == "validate":
            problems = validate(read_instance(args.file))
            for v in problems:
                print(f"{v.kind}: {v.detail}")
            if not problems:
                print("ok")
            return 1 if problems else 0

        inst = _load(args.file)
        if args.command == "preprocess":
            text = json.dumps(preprocess_report(inst.name, preprocess(inst)), indent=2)
            print(text)
            _write(args.out, f"{inst.name}.preprocess.json", text + "\n")
            return 0

        cfg = _config(args)
        if args.command == "ablate":
            text = ablation_csv(ablation_rows(inst, cfg))
            sys.stdout.write(text)
            _write(args.out, f"{inst.name}.ablation.csv", text)
            return 0

        res = solve_instance(inst, cfg)
        report = solve_report(inst.name, res, cfg)
        report["seed"] = args.seed
        print(summary(report))
        _write(args.out, f"{inst.name}.report.json", json.dumps(report, indent=2) + "\n")
        return 0 if res.status in (SolveStatus.OPTIMAL, SolveStatus.INFEASIBLE) else 2
    except (OSError, InstanceFormatError, GeneratorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
