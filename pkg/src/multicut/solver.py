"""Solver: brute-force oracle, certificate checks and the shaping pipeline.

The pipeline reduces, compresses and shapes the instance, finishing each
branch with the 2-SAT endgame when the branch reaches the subdivided shape
and with a bounded exhaustive search otherwise. Every feasible answer is
re-verified on the original instance before it is returned.
"""

from __future__ import annotations

import os
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from multicut import kernels
from multicut.backbone import detect_subdivided
from multicut.compress import (
    BACKBONE,
    ComponentInstance,
    absorb_free_edges,
    branch_y_partitions,
    compositions,
    find_backbone,
    is_vertex_multicut,
    iterative_compression,
    reduce_attachment,
    reduce_xy_degree,
    reduce_y_cherries,
    xy_degree_ok,
)
from multicut.cuts import DEFAULT_MAX_K
from multicut.extract import reduce_request_degree
from multicut.graph import GraphError, Instance, components
from multicut.twosat import decode_subdivided, encode_subdivided, solve_problem

ALL_PASSES = frozenset({"degree", "attach", "xydeg", "compose", "backbone", "cherry", "terminals", "absorb", "twosat"})
PHASES = ("attach", "xydeg", "compose", "backbone", "cherry", "absorb")


def _default_threshold() -> int:
    raw = os.environ.get("MULTICUT_ORACLE_THRESHOLD")
    return int(raw) if raw else 8


class OracleLimitError(GraphError):
    """The instance is larger than the brute-force threshold."""


class ResourceExceeded(RuntimeError):
    """A configured search cap was hit."""


class Verdict(str, Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    RESOURCE = "resource"


@dataclass(frozen=True)
class SolveConfig:
    oracle_threshold: int = field(default_factory=_default_threshold)
    degree_trigger: int | None = None  # None: four times the budget
    branch_limit: int = 200_000
    fallback_limit: int = 5_000_000
    max_k: int = DEFAULT_MAX_K
    extraction: str = "recursive"
    passes: frozenset = ALL_PASSES
    workers: int = 1
    seed: int = 0
    deterministic: bool = True

    def __post_init__(self):
        if self.oracle_threshold < 1 or self.branch_limit < 1 or self.fallback_limit < 1 or self.max_k < 1:
            raise ValueError("thresholds must be positive")
        if self.degree_trigger is not None and self.degree_trigger < 1:
            raise ValueError("degree trigger must be positive")
        if self.workers < 1:
            raise ValueError("workers must be positive")
        if self.extraction not in ("recursive", "sunflower"):
            raise ValueError(f"unknown extraction method {self.extraction!r}")
        unknown = set(self.passes) - ALL_PASSES
        if unknown:
            raise ValueError(f"unknown passes {sorted(unknown)}")
        object.__setattr__(self, "passes", frozenset(self.passes))


@dataclass
class SolveResult:
    verdict: Verdict
    certificate: frozenset | None
    stats: dict

    @property
    def feasible(self) -> bool:
        return self.verdict is Verdict.FEASIBLE


# --- certificates and oracles ---------------------------------------------------------


def verify_multicut(inst: Instance, F) -> bool:
    """Every request (and half-request) is cut once ``F`` is removed."""
    F = set(F)
    if not F <= inst.graph.edges.keys() or F & inst.undeletable:
        return False
    side = {}
    for i, comp in enumerate(components(inst.graph, removed_edges=F)):
        for v in comp:
            side[v] = i
    if any(side[u] == side[v] for u, v in inst.requests):
        return False
    return not any(side[u] == side[y] == side[v] for u, y, v in inst.half_requests)


def _indexed(g):
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    eids = sorted(g.edges)
    us = [index[g.edges[e][0]] for e in eids]
    vs = [index[g.edges[e][1]] for e in eids]
    return index, eids, us, vs


def constrained_search(ci: ComponentInstance, limit: int = -1):
    """Smallest residual solution of a component instance by exhaustive search.

    Returns ``(edges or None, exhausted)``.
    """
    g = ci.graph
    index, eids, us, vs = _indexed(g)
    pos = {e: i for i, e in enumerate(eids)}
    cands = [i for i, e in enumerate(eids) if e not in ci.instance.undeletable]
    pairs = [(index[a], index[b]) for a, b in sorted(ci.instance.requests)] + [
        (index[a], index[b]) for a, b in ci.split_pairs()
    ]
    triples = [(index[u], index[y], index[v]) for u, y, v in sorted(ci.instance.half_requests)]
    groups = [(sorted(pos[e] for e in grp.edges), grp.lo, grp.hi) for grp in ci.groups]
    chosen, _, exhausted = kernels.first_multicut(len(index), us, vs, cands, pairs, triples, groups, 0, ci.budget, limit)
    if chosen is None:
        return None, exhausted
    return frozenset(eids[i] for i in chosen), False


def brute_force(inst: Instance, threshold: int | None = None) -> frozenset | None:
    """Minimum multicut of size at most the budget, by increasing subset size."""
    if threshold is not None and inst.graph.m > threshold:
        raise OracleLimitError(f"{inst.graph.m} edges exceed the oracle threshold {threshold}")
    found, _ = constrained_search(ComponentInstance(inst, frozenset()))
    return found


def brute_force_vertex(inst: Instance, k: int) -> frozenset | None:
    """Smallest vertex set of size at most ``k`` meeting every request path."""
    verts = sorted(inst.graph.vertices)
    for size in range(0, k + 1):
        for ys in combinations(verts, size):
            if is_vertex_multicut(inst, ys):
                return frozenset(ys)
    return None


# --- pipeline --------------------------------------------------------------------------------


class _Context:
    def __init__(self, cfg: SolveConfig):
        self.cfg = cfg
        self.stats = Counter()
        self.branches = 0

    def tick(self):
        self.branches += 1
        self.stats["branches"] += 1
        if self.branches > self.cfg.branch_limit:
            raise ResourceExceeded("branch limit exceeded")


def drop_separated(inst: Instance) -> Instance:
    """Forget requests whose endpoints already lie in different components."""
    side = {}
    for i, comp in enumerate(components(inst.graph)):
        for v in comp:
            side[v] = i
    reqs = frozenset(r for r in inst.requests if side[r[0]] == side[r[1]])
    halves = frozenset(t for t in inst.half_requests if side[t[0]] == side[t[1]] == side[t[2]])
    return inst.replace(requests=reqs, half_requests=halves)


def _oracle(inst: Instance, ctx: _Context):
    ctx.stats["oracle_calls"] += 1
    found, exhausted = constrained_search(ComponentInstance(inst, frozenset()), ctx.cfg.fallback_limit)
    if exhausted:
        raise ResourceExceeded("oracle search limit exceeded")
    return found


def _fallback(ci: ComponentInstance, ctx: _Context):
    ctx.stats["fallbacks"] += 1
    found, exhausted = constrained_search(ci, ctx.cfg.fallback_limit)
    if exhausted:
        raise ResourceExceeded("fallback search limit exceeded")
    return None if found is None else ci.committed | found


def _justified(ci: ComponentInstance, shape) -> bool:
    """One edge per shape path is exactly what the residual constraints allow."""
    if len(shape.paths) > ci.budget or ci.instance.undeletable:
        return False
    path_sets = [frozenset(p.edges) for p in shape.paths]
    for p in path_sets:
        if not any(grp.kind == BACKBONE and grp.edges == p and grp.lo == grp.hi == 1 for grp in ci.groups):
            return False
    for grp in ci.groups:
        inside = 0
        for p in path_sets:
            if p <= grp.edges:
                inside += 1
            elif p & grp.edges:
                return False
        if not grp.lo <= inside <= grp.hi:
            return False
    return True


def _endgame(ci: ComponentInstance, ctx: _Context):
    """Conclusive 2-SAT answer ``(True, edges-or-None)`` or ``(False, None)``."""
    shape = detect_subdivided(ci)
    if shape is None or not _justified(ci, shape):
        return False, None
    try:
        prob = encode_subdivided(shape, ci.instance)
    except GraphError:
        return False, None
    ctx.stats["twosat"] += 1
    values = solve_problem(prob)
    if values is None:
        return True, None
    chosen = decode_subdivided(shape, values)
    if not ci.is_solution(chosen):
        ctx.stats["twosat_rejected"] += 1
        return False, None
    return True, ci.committed | chosen


def _next_step(ci: ComponentInstance, cfg: SolveConfig):
    """``(phase, children)`` for the first applicable shaping step, or None."""
    passes = cfg.passes
    comps = ci.components()
    if "attach" in passes:
        for comp in comps:
            if len(comp.attachments) >= 3:
                return "attach", reduce_attachment(ci, comp)
    two = [c for c in comps if len(c.attachments) == 2 and ci.backbone_of(c) is None]
    if "xydeg" in passes:
        for comp in two:
            if not xy_degree_ok(ci, comp):
                children = reduce_xy_degree(ci, comp)
                if children != [ci]:
                    return "xydeg", children
    if "compose" in passes and any(ci.allowance(c) is None for c in two):
        return "compose", compositions(ci)
    if "backbone" in passes:
        for comp in two:
            if not xy_degree_ok(ci, comp):
                continue
            children = find_backbone(ci, comp)
            if children is not None:
                return "backbone", children
    if "cherry" in passes and any(len(c.attachments) == 1 for c in comps):
        children = reduce_y_cherries(ci, "terminals" in passes, cfg.extraction, cfg.max_k)
        if children is not None:
            return "cherry", children
    if "absorb" in passes:
        child = absorb_free_edges(ci)
        if child is None:
            return "absorb", []
        if child is not ci:
            return "absorb", [child]
    return None


def _explore(ci: ComponentInstance, ledger, ctx: _Context):
    ctx.tick()
    if "twosat" in ctx.cfg.passes:
        conclusive, found = _endgame(ci, ctx)
        if conclusive:
            return found
    step = _next_step(ci, ctx.cfg)
    if step is None:
        return _fallback(ci, ctx)
    phase, children = step
    ctx.stats[f"pass_{phase}"] += 1
    for child in children:
        child_ledger = child.ledger()
        if child_ledger.improves_on(ledger):
            found = _explore(child, child_ledger, ctx)
        else:
            ctx.stats["ledger_flags"] += 1
            found = _fallback(child, ctx)
        if found is not None:
            return found
    return None


def _explore_task(args):
    ci, ledger, cfg = args
    ctx = _Context(cfg)
    try:
        found = _explore(ci, ledger, ctx)
    except ResourceExceeded:
        return "resource", dict(ctx.stats)
    return found, dict(ctx.stats)


def _solve(inst: Instance, ctx: _Context, top: bool = False):
    cfg = ctx.cfg
    inst = drop_separated(inst)
    if not inst.requests and not inst.half_requests:
        return frozenset()
    if inst.half_requests or inst.undeletable or inst.graph.m <= cfg.oracle_threshold:
        return _oracle(inst, ctx)
    reduced = inst
    if "degree" in cfg.passes:
        reduced = reduce_request_degree(inst, cfg.degree_trigger, cfg.max_k)
        ctx.stats["requests_dropped"] += len(inst.requests) - len(reduced.requests)

    def callback(sub):
        found = _solve(sub, ctx)
        if found is not None and not verify_multicut(sub, found):
            ctx.stats["repairs"] += 1
            found = _oracle(sub, ctx)
        return found

    Y = iterative_compression(reduced, callback)
    if Y is None:
        return None
    ctx.stats["compressions"] += 1
    if len(Y) > reduced.budget + 1 or not is_vertex_multicut(reduced, Y):
        ctx.stats["repairs"] += 1
        return _oracle(inst, ctx)
    branches = branch_y_partitions(reduced, Y)
    ctx.stats["y_branches"] += len(branches)
    if not cfg.deterministic:
        random.Random(cfg.seed).shuffle(branches)
    if top and cfg.workers > 1 and len(branches) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_explore_task, [(ci, led, cfg) for ci, led in branches]))
        for found, stats in results:
            ctx.stats.update(stats)
        for found, _ in results:
            if found == "resource":
                raise ResourceExceeded("worker hit a search cap")
            if found is not None:
                return found
        return None
    for ci, led in branches:
        found = _explore(ci, led, ctx)
        if found is not None:
            return found
    return None


def solve(inst: Instance, cfg: SolveConfig | None = None) -> SolveResult:
    """Decide whether a multicut of size at most the budget exists."""
    cfg = cfg or SolveConfig()
    ctx = _Context(cfg)
    start = time.perf_counter()
    try:
        found = _solve(inst, ctx, top=True)
        if found is not None and (not verify_multicut(inst, found) or len(found) > inst.budget):
            ctx.stats["repairs"] += 1
            found = _oracle(inst, ctx)
    except ResourceExceeded as exc:
        stats = dict(ctx.stats)
        stats["reason"] = str(exc)
        stats["wall_time"] = time.perf_counter() - start
        return SolveResult(Verdict.RESOURCE, None, stats)
    stats = dict(ctx.stats)
    stats["wall_time"] = time.perf_counter() - start
    if found is None:
        return SolveResult(Verdict.INFEASIBLE, None, stats)
    return SolveResult(Verdict.FEASIBLE, frozenset(found), stats)
