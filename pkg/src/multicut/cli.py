"""Command-line entry point: ``multicut <command> ...``.

Exit status: 0 feasible or success, 1 infeasible (or invalid certificate),
2 usage error, malformed input or exhausted resources.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from multicut.backbone import StructuralError, analyze, critical_edges
from multicut.cuts import enumerate_indivisible_left_cuts
from multicut.extract import reduce_request_degree
from multicut.generate import KINDS, generate
from multicut.graph import GraphError, components, path_system
from multicut.io import (
    FormatError,
    dump_report,
    edge_labels,
    edges_from_labels,
    parse,
    parse_edge_list,
    report,
    serialize,
)
from multicut.solver import OracleLimitError, SolveConfig, Verdict, brute_force, drop_separated, solve, verify_multicut

EXIT = {Verdict.FEASIBLE: 0, Verdict.INFEASIBLE: 1, Verdict.RESOURCE: 2}


def _load(path: str):
    return parse(Path(path).read_text())


def _config(args) -> SolveConfig:
    kwargs = {"seed": args.seed, "deterministic": args.deterministic, "workers": args.workers}
    if args.oracle_threshold is not None:
        kwargs["oracle_threshold"] = args.oracle_threshold
    return SolveConfig(**kwargs)


def cmd_solve(args) -> int:
    inst = _load(args.file)
    res = solve(inst, _config(args))
    sys.stdout.write(dump_report(report(inst, res.verdict.value, res.certificate, res.stats)))
    return EXIT[res.verdict]


def cmd_oracle(args) -> int:
    inst = _load(args.file)
    start = time.perf_counter()
    found = brute_force(inst, args.threshold)
    stats = {"wall_time": time.perf_counter() - start}
    verdict = Verdict.FEASIBLE if found is not None else Verdict.INFEASIBLE
    sys.stdout.write(dump_report(report(inst, verdict.value, found, stats)))
    return EXIT[verdict]


def cmd_verify(args) -> int:
    inst = _load(args.file)
    labels = parse_edge_list(Path(args.edges).read_text())
    eids = edges_from_labels(inst, labels)
    cuts = verify_multicut(inst, eids)
    ok = cuts and len(eids) <= inst.budget
    doc = {"valid": ok, "cuts_all_requests": cuts, "size": len(eids), "budget": inst.budget}
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0 if ok else 1


def cmd_enum_cuts(args) -> int:
    inst = _load(args.file)
    fam = enumerate_indivisible_left_cuts(inst.graph, args.root, args.target, args.k)
    doc = {
        "root": args.root,
        "target": args.target,
        "k": args.k,
        "count": len(fam),
        "cuts": [
            {"members": sorted(c.members), "border": [list(t) for t in edge_labels(inst, c.border)], "size": c.size}
            for c in fam
        ],
    }
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0


def _pick_backbone(g, x, y, crit):
    for p in path_system(g, x, y):
        if all(e in crit for e in p.edges):
            return p.edges
    return None


def cmd_analyze(args) -> int:
    inst = _load(args.file)
    g = inst.graph
    if args.source is None or args.target is None:
        if not inst.requests:
            raise GraphError("analyze needs --source/--target or a request")
        x, y = min(inst.requests)
    else:
        x, y = args.source, args.target
    crit = critical_edges(g, x, y)
    doc = {
        "source": x,
        "target": y,
        "critical": [list(t) for t in edge_labels(inst, crit)],
        "slices": [sorted(s) for s in components(g, removed_edges=crit)],
        "backbone": None,
        "tags": None,
        "slice_connectivity": None,
    }
    bb = _pick_backbone(g, x, y, crit) if crit else None
    if bb is not None:
        try:
            an = analyze(g, x, y, bb)
        except StructuralError:
            an = None
        if an is not None:
            doc["backbone"] = [list(t) for t in edge_labels(inst, bb)]
            doc["tags"] = {str(v): sorted(t) for v, t in an.tags.items()}
            doc["slice_connectivity"] = {str(v): s for v, s in an.slice_connectivity.items()}
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    return 0


def cmd_reduce(args) -> int:
    inst = _load(args.file)
    reduced = reduce_request_degree(drop_separated(inst), args.degree_trigger)
    dropped = len(inst.requests) - len(reduced.requests)
    sys.stdout.write(serialize(reduced, comment=f"reduced: {dropped} requests removed"))
    return 0


def cmd_gen(args) -> int:
    inst = generate(args.kind, args.n, args.m, args.r, args.k, args.seed)
    sys.stdout.write(serialize(inst))
    return 0


def _bench_one(task):
    path, threshold = task
    try:
        inst = parse(Path(path).read_text())
        cfg = SolveConfig() if threshold is None else SolveConfig(oracle_threshold=threshold)
        res = solve(inst, cfg)
        return {
            "file": path,
            "verdict": res.verdict.value,
            "size": None if res.certificate is None else len(res.certificate),
            "seconds": round(res.stats.get("wall_time", 0.0), 6),
        }
    except (FormatError, GraphError, OSError) as exc:
        return {"file": path, "verdict": "error", "error": str(exc)}


def cmd_bench(args) -> int:
    files = sorted(str(p) for p in Path(args.dir).iterdir() if p.suffix in (".txt", ".mc", ".multicut"))
    tasks = [(f, args.oracle_threshold) for f in files]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_bench_one, tasks))
    else:
        rows = [_bench_one(t) for t in tasks]
    sys.stdout.write(json.dumps({"instances": rows}, sort_keys=True, indent=2) + "\n")
    return 2 if any(r["verdict"] == "error" for r in rows) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="multicut", description="Exact edge multicut solver and toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide an instance with the full pipeline")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true", help="explore branches in canonical order")
    p.add_argument("--oracle-threshold", type=int, default=None, help="max edges handed straight to brute force")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="decide an instance by exhaustive search")
    p.add_argument("file")
    p.add_argument("--threshold", type=int, default=None, help="refuse instances with more edges")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a certificate (lines 'u v idx')")
    p.add_argument("file")
    p.add_argument("edges")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enum-cuts", help="list indivisible left cuts with bounded border")
    p.add_argument("file")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_enum_cuts)

    p = sub.add_parser("analyze", help="critical edges, slices and tags between two vertices")
    p.add_argument("file")
    p.add_argument("--source", type=int, default=None)
    p.add_argument("--target", type=int, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="drop separated and irrelevant requests")
    p.add_argument("file")
    p.add_argument("--degree-trigger", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("--kind", choices=KINDS, default="random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="solve every instance file in a directory")
    p.add_argument("dir")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--oracle-threshold", type=int, default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, GraphError, OracleLimitError, OSError, ValueError) as exc:
        print(f"multicut: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
