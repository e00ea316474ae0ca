"""Walks the shaping pipeline to collect intermediate component instances and
checks branching operations against the oracles."""

from __future__ import annotations

from dataclasses import replace

from multicut.compress import (
    EdgeGroup,
    absorb_free_edges,
    branch_y_partitions,
    compositions,
    find_backbone,
    iterative_compression,
    reduce_attachment,
    reduce_xy_degree,
    reduce_y_cherries,
    xy_degree_ok,
)
from multicut.solver import SolveConfig, _next_step, drop_separated
from oracles import component_feasible, component_solution, component_solution_ok, multicut


def oracle_callback(sub):
    return multicut(sub)


def root_states(inst):
    """Partition branches of the instance, or [] when the oracle shows it infeasible."""
    inst = drop_separated(inst)
    if not inst.requests or inst.half_requests:
        return []
    Y = iterative_compression(inst, oracle_callback)
    if Y is None:
        return []
    return [ci for ci, _ in branch_y_partitions(inst, Y)]


def pipeline_states(inst, limit=60):
    """Component instances met along the pipeline, breadth first."""
    cfg = SolveConfig()
    out = []
    frontier = root_states(inst)
    while frontier and len(out) < limit:
        ci = frontier.pop(0)
        out.append(ci)
        step = _next_step(ci, cfg)
        if step is not None:
            frontier.extend(step[1])
    return out


def applicable_ops(ci):
    """``(name, children, restricted_input)`` for every op that applies to ``ci``.

    ``restricted_input`` is the input under the op's stated solution type;
    it is ``ci`` itself for the exact operations.
    """
    comps = ci.components()
    out = []
    for comp in comps:
        if len(comp.attachments) >= 3:
            out.append(("attach", reduce_attachment(ci, comp), ci))
            break
    two = [c for c in comps if len(c.attachments) == 2 and ci.backbone_of(c) is None]
    for comp in two:
        if not xy_degree_ok(ci, comp):
            out.append(("xydeg", reduce_xy_degree(ci, comp), ci))
            break
    if any(ci.allowance(c) is None for c in two):
        out.append(("compose", compositions(ci), ci))
    for comp in two:
        if not xy_degree_ok(ci, comp):
            continue
        cap = ci.allowance(comp)
        children = find_backbone(ci, comp)
        if children is not None:
            restricted = ci
            if cap is None:
                restricted = replace(ci, groups=ci.groups + (EdgeGroup(comp.edges, 0, ci.budget),))
            out.append(("backbone", children, restricted))
            break
    if any(len(c.attachments) == 1 for c in comps):
        children = reduce_y_cherries(ci)
        if children is not None:
            out.append(("cherry", children, ci))
    child = absorb_free_edges(ci)
    if child is not ci:
        out.append(("absorb", [] if child is None else [child], ci))
    return out


def lifts(parent, child) -> bool:
    """A residual solution of ``child`` plus its new commitments solves ``parent``."""
    found = component_solution(child)
    if found is None:
        return True
    lifted = (child.committed - parent.committed) | found
    return component_solution_ok(parent, lifted)


def check_branching(parent, children, restricted=None):
    """Problems found for one branching step, as strings."""
    problems = []
    restricted = parent if restricted is None else restricted
    want = component_feasible(restricted)
    got = any(component_feasible(c) for c in children)
    have = component_feasible(parent)
    if want and not got:
        problems.append("branches lost every solution")
    if got and not have:
        problems.append("branches invented a solution")
    for c in children:
        if not lifts(parent, c):
            problems.append("child solution does not lift")
    return problems


def ledger_improves(parent, children) -> bool:
    base = parent.ledger()
    return all(c.ledger().improves_on(base) for c in children if c != parent)
