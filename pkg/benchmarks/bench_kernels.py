"""Compare the compiled and pure-Python kernels on seeded workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0] [--json]

Both backends run the same inputs; their outputs are checked for agreement
before timings are reported.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import timeit

from multicut.kernels import backends


def flow_workload(rng, count, n, m):
    out = []
    for _ in range(count):
        us, vs = [], []
        for v in range(1, n):
            us.append(rng.randrange(v))
            vs.append(v)
        while len(us) < m:
            a, b = rng.sample(range(n), 2)
            us.append(a)
            vs.append(b)
        out.append((n, us, vs, 0, n - 1))
    return out


def multicut_workload(rng, count, n, m, r, k):
    out = []
    for _ in range(count):
        us, vs = [], []
        while len(us) < m:
            a, b = rng.sample(range(n), 2)
            us.append(a)
            vs.append(b)
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(r)]
        out.append((n, us, vs, list(range(m)), pairs, [], [], 0, k))
    return out


def run_flows(mod, work):
    return [mod.unit_max_flow(*args)[0] for args in work]


def run_multicuts(mod, work):
    return [mod.first_multicut(*args)[0] for args in work]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true", help="print a JSON document instead of a table")
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    cases = {
        "max_flow n=60 m=240": (run_flows, flow_workload(rng, 200, 60, 240)),
        "multicut m=18 k=4": (run_multicuts, multicut_workload(rng, 40, 10, 18, 5, 4)),
    }
    mods = backends()
    rows = []
    for name, (runner, work) in cases.items():
        results = {b: runner(mod, work) for b, mod in mods.items()}
        if len({json.dumps(r) for r in results.values()}) != 1:
            print(f"backends disagree on {name}", file=sys.stderr)
            return 1
        row = {"case": name}
        for b, mod in mods.items():
            row[b] = min(timeit.repeat(lambda: runner(mod, work), number=1, repeat=args.repeat))
        if "cython" in row:
            row["speedup"] = row["python"] / row["cython"]
        rows.append(row)

    if args.json:
        print(json.dumps({"backends": sorted(mods), "cases": rows}, indent=2))
        return 0
    if "cython" not in mods:
        print("compiled kernels not built; timing the Python backend only")
    for row in rows:
        parts = [f"{row['case']:<22}", f"python {row['python']:.4f}s"]
        if "cython" in row:
            parts += [f"cython {row['cython']:.4f}s", f"x{row['speedup']:.1f}"]
        print("  ".join(parts))
    return 0


if __name__ == "__main__":
    sys.exit(main())
