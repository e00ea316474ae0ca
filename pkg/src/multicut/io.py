"""Line-oriented instance files and JSON result reports.

Instance file::

    c optional comment
    p multicut <n> <m> <r> <k>
    e <u> <v>        (m lines; repeat a line for parallel edges)
    r <u> <v>        (r lines)
    h <u> <y> <v>    (optional half-requests)

Vertices are 1..n and edges get identifiers 0..m-1 in file order.
"""

from __future__ import annotations

import json

from multicut.graph import GraphError, Instance


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _ints(parts, count, lineno):
    if len(parts) != count:
        raise FormatError(f"expected {count} fields, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise FormatError("non-integer field", lineno) from None


def parse(text: str) -> Instance:
    header = None
    edges, reqs, halves = [], [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag, rest = parts[0], parts[1:]
        if tag == "p":
            if header is not None:
                raise FormatError("duplicate header", lineno)
            if not rest or rest[0] != "multicut":
                raise FormatError("header must read 'p multicut n m r k'", lineno)
            header = _ints(rest[1:], 4, lineno)
            if min(header) < 0:
                raise FormatError("negative count in header", lineno)
            continue
        if header is None:
            raise FormatError("data before header", lineno)
        n = header[0]
        if tag == "e":
            u, v = _ints(rest, 2, lineno)
            if u == v:
                raise FormatError(f"loop at {u}", lineno)
            target = edges
            vals = (u, v)
        elif tag == "r":
            u, v = _ints(rest, 2, lineno)
            if u == v:
                raise FormatError(f"self-request at {u}", lineno)
            target = reqs
            vals = (u, v)
        elif tag == "h":
            vals = tuple(_ints(rest, 3, lineno))
            target = halves
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
        if any(not 1 <= w <= n for w in vals):
            raise FormatError(f"vertex out of range 1..{n}", lineno)
        target.append(vals)
    if header is None:
        raise FormatError("missing header")
    n, m, r, k = header
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    if len(reqs) != r:
        raise FormatError(f"header announces {r} requests, found {len(reqs)}")
    if len({(min(u, v), max(u, v)) for u, v in reqs}) != r:
        raise FormatError("duplicate request")
    try:
        return Instance.build(n, edges, reqs, k, halves)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def serialize(inst: Instance, comment: str | None = None) -> str:
    """Canonical text form. Vertices must be 1..n."""
    g = inst.graph
    n = max(g.vertices, default=0)
    if set(g.vertices) != set(range(1, n + 1)):
        raise FormatError("vertices must be exactly 1..n")
    lines = []
    if comment:
        lines += [f"c {part}" for part in comment.splitlines()]
    lines.append(f"p multicut {n} {g.m} {len(inst.requests)} {inst.budget}")
    lines += [f"e {u} {v}" for u, v in (g.edges[e] for e in sorted(g.edges))]
    lines += [f"r {u} {v}" for u, v in sorted(inst.requests)]
    lines += [f"h {u} {y} {v}" for u, y, v in sorted(inst.half_requests)]
    return "\n".join(lines) + "\n"


# --- certificates -----------------------------------------------------------------


def edge_labels(inst: Instance, eids) -> list:
    """``(u, v, idx)`` with ``u < v`` and ``idx`` the rank among parallel copies."""
    g = inst.graph
    rank = {}
    seen = {}
    for e in sorted(g.edges):
        a, b = g.edges[e]
        key = (min(a, b), max(a, b))
        rank[e] = seen.get(key, 0)
        seen[key] = rank[e] + 1
    out = []
    for e in sorted(eids):
        a, b = g.edges[e]
        out.append((min(a, b), max(a, b), rank[e]))
    return sorted(out)


def edges_from_labels(inst: Instance, labels) -> frozenset:
    g = inst.graph
    by_key = {}
    for e in sorted(g.edges):
        a, b = g.edges[e]
        by_key.setdefault((min(a, b), max(a, b)), []).append(e)
    out = set()
    for u, v, idx in labels:
        copies = by_key.get((min(u, v), max(u, v)), [])
        if not 0 <= idx < len(copies):
            raise FormatError(f"no edge {u} {v} copy {idx}")
        out.add(copies[idx])
    return frozenset(out)


def parse_edge_list(text: str) -> list:
    """Lines ``u v [idx]``; blank and ``c`` lines are skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if len(parts) == 2:
            parts.append("0")
        out.append(tuple(_ints(parts, 3, lineno)))
    return out


def format_edge_list(labels) -> str:
    return "".join(f"{u} {v} {i}\n" for u, v, i in labels)


def report(inst: Instance, verdict: str, certificate=None, stats=None) -> dict:
    doc = {"verdict": verdict, "budget": inst.budget, "certificate": None, "size": None, "stats": dict(stats or {})}
    if certificate is not None:
        labels = edge_labels(inst, certificate)
        doc["certificate"] = [list(t) for t in labels]
        doc["size"] = len(labels)
    return doc


def dump_report(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=str) + "\n"


def load_report(text: str) -> dict:
    doc = json.loads(text)
    for key in ("verdict", "budget", "certificate", "size", "stats"):
        if key not in doc:
            raise FormatError(f"report lacks {key!r}")
    if doc["certificate"] is not None:
        doc["certificate"] = [tuple(t) for t in doc["certificate"]]
    return doc
