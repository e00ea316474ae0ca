"""Rooted cuts: left cuts, indivisible cuts and bounded enumeration.

A cut is a vertex set containing the root. Its border is the set of edges
leaving it. A *left* cut has strictly smaller border than every proper
sub-cut; an *indivisible* cut has a connected complement. For a target ``y``
the family of indivisible left cuts avoiding ``y`` with border at most ``k``
has at most ``k!`` members and is enumerated one border size at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from multicut.graph import GraphError, MultiGraph, component_of, edge_connectivity, is_connected_set, max_flow

DEFAULT_MAX_K = 6


@dataclass(frozen=True)
class RootedCut:
    root: int
    members: frozenset
    border: tuple

    @classmethod
    def of(cls, g: MultiGraph, root: int, members) -> "RootedCut":
        members = frozenset(members)
        if root not in members:
            raise GraphError(f"cut does not contain its root {root}")
        return cls(root, members, tuple(g.border(members)))

    @property
    def size(self) -> int:
        return len(self.border)

    def key(self) -> tuple:
        return tuple(sorted(self.members))

    def is_consistent(self, g: MultiGraph) -> bool:
        return self.root in self.members and tuple(g.border(self.members)) == self.border


@dataclass(frozen=True)
class CutFamily:
    root: int
    target: int | None
    bound: int
    cuts: tuple

    def __len__(self) -> int:
        return len(self.cuts)

    def __iter__(self):
        return iter(self.cuts)

    def keys(self) -> set:
        return {c.key() for c in self.cuts}

    def borders(self) -> set:
        out = set()
        for c in self.cuts:
            out.update(c.border)
        return out


def is_left_cut(g: MultiGraph, cut: RootedCut) -> bool:
    """Every proper sub-cut containing the root has a strictly larger border.

    The cheapest proper sub-cut avoids some ``v`` in ``S - {root}``; with the
    complement of ``S`` merged into one vertex, it is a minimum cut between
    the root and ``{v} + complement``.
    """
    x = cut.root
    rest = cut.members - {x}
    if not rest:
        return True
    outside = g.vertices - cut.members
    h = g
    z = None
    if outside:
        z = min(outside)
        h = g.contract_set(outside, into=z)
    bound = cut.size
    for v in sorted(rest):
        if z is None:
            hv, target = h, v
        else:
            hv, target = h.contract(z, v), z
        if edge_connectivity(hv, x, target, limit=bound + 1) <= bound:
            return False
    return True


def is_indivisible(g: MultiGraph, cut: RootedCut) -> bool:
    """The complement induces a connected subgraph; an empty complement counts as indivisible."""
    return is_connected_set(g, g.vertices - cut.members)


def minimal_min_cut(g: MultiGraph, x: int, y: int) -> RootedCut:
    """The minimum x-y cut contained in every other minimum x-y cut."""
    if x == y:
        raise GraphError("minimal_min_cut needs distinct endpoints")
    f = max_flow(g, x, y)
    if f.value == 0:
        raise GraphError(f"{x} and {y} are disconnected")
    return RootedCut.of(g, x, f.source_side)


def _sort_cuts(cuts):
    return tuple(sorted(cuts, key=lambda c: (c.size, len(c.members), c.key())))


def enumerate_indivisible_left_cuts(g: MultiGraph, x: int, y: int, k: int, max_k: int = DEFAULT_MAX_K) -> CutFamily:
    """All indivisible left x-y cuts with border at most ``k``.

    Border level ``lam`` (the x-y connectivity) holds the single minimal
    minimum cut. A cut of border ``j`` is found from some smaller cut ``T``
    and an edge ``e`` of its border: merge everything outside ``T`` plus the
    inner endpoint of ``e`` into ``y``; if the merged graph has connectivity
    exactly ``j`` its minimal minimum cut is a candidate. Candidates are
    checked for membership before being kept. On a disconnected graph the
    family is that of the root's component.
    """
    if x == y:
        raise GraphError("root and target coincide")
    if k < 0:
        raise GraphError("negative bound")
    if k > max_k:
        raise GraphError(f"bound {k} exceeds the configured cap {max_k}")
    lam = edge_connectivity(g, x, y, limit=k + 1)
    if lam == 0 or lam > k:
        return CutFamily(x, y, k, ())
    # cuts live in the root's component; other components never matter
    side = component_of(g, x)
    if len(side) < g.n:
        g = g.subgraph(side)
    found = {}
    first = minimal_min_cut(g, x, y)
    found[first.key()] = first
    for level in range(lam + 1, k + 1):
        smaller = [c for c in found.values() if c.size < level]
        for t in _sort_cuts(smaller):
            outside = g.vertices - t.members
            for e in t.border:
                a, b = g.edges[e]
                inner = a if a in t.members else b
                if inner == x:
                    continue
                h = g.contract_set(outside | {inner}, into=y)
                if edge_connectivity(h, x, y, limit=level + 1) != level:
                    continue
                side = max_flow(h, x, y).source_side
                cand = RootedCut.of(g, x, side)
                if cand.key() in found or cand.size != level or y in cand.members:
                    continue
                if is_indivisible(g, cand) and is_left_cut(g, cand):
                    found[cand.key()] = cand
    cuts = _sort_cuts(found.values())
    assert len(cuts) <= max(1, math.factorial(k)), "cut family exceeds k!"
    return CutFamily(x, y, k, cuts)


def enumerate_all_indivisible_left_cuts(g: MultiGraph, x: int, targets, k: int, max_k: int = DEFAULT_MAX_K) -> dict:
    """Union of the families for every target, keyed by sorted member tuple."""
    out = {}
    for y in sorted(targets):
        if y == x or y not in g:
            continue
        for c in enumerate_indivisible_left_cuts(g, x, y, k, max_k):
            out.setdefault(c.key(), c)
    return out
