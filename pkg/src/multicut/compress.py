"""Iterative compression and component shaping.

After iterative compression yields a small vertex multicut ``Y`` and a
branch fixes which parts of ``Y`` stay together, the solution must split
``Y``: no two vertices of ``Y`` may remain connected. A ComponentInstance
carries that requirement together with the residual instance, the edges
already committed to the solution, and edge-count constraints (backbones
take exactly one edge; allowances cap the deletions inside a component).

Every shaping operation returns a list of branches. Each branch is a
restriction of its input, so a solution of any branch lifts to a solution
of the input, and together the branches cover every solution of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from itertools import combinations, product

from multicut.backbone import Backbone, critical_edges
from multicut.cuts import DEFAULT_MAX_K, minimal_min_cut
from multicut.extract import Cherry, active_set, cherry_terminals, is_cherry, reduce_cherry_terminals
from multicut.graph import (
    GraphError,
    Instance,
    MultiGraph,
    UncuttableError,
    component_of,
    components,
    edge_connectivity,
    path_system,
)

BACKBONE = "backbone"
ALLOWANCE = "allowance"

# mappings of more than this many vertices onto attachments are narrowed to one vertex
DEFAULT_MAPPING_CAP = 64


@dataclass(frozen=True)
class EdgeGroup:
    """Between ``lo`` and ``hi`` solution edges must fall in ``edges``."""

    edges: frozenset
    lo: int
    hi: int
    kind: str = ALLOWANCE

    def count(self, chosen) -> int:
        return len(self.edges & set(chosen))

    def admits(self, chosen) -> bool:
        return self.lo <= self.count(chosen) <= self.hi


@dataclass(frozen=True)
class Component:
    """A connected piece of the graph minus ``Y`` with its ``Y``-neighbours."""

    vertices: frozenset
    attachments: frozenset
    edges: frozenset  # edges with at least one endpoint in ``vertices``

    def key(self) -> tuple:
        return (min(self.vertices), len(self.vertices))


@dataclass(frozen=True, order=True)
class InvariantLedger:
    """Progress measure. ``key`` grows strictly along every shaping branch."""

    budget: int
    cutset_size: int
    two_attachment_count: int
    connectivity_sum: int
    backbone_count: int = 0
    free_vertices: int = 0
    allowance_count: int = 0
    separation_demand: int = 0  # informational, not part of the key

    def key(self) -> tuple:
        return (
            -self.budget,
            self.cutset_size,
            self.two_attachment_count,
            self.connectivity_sum,
            self.backbone_count,
            -self.free_vertices,
            self.allowance_count,
        )

    def improves_on(self, other: "InvariantLedger") -> bool:
        return self.key() > other.key()

    def within_bounds(self, k: int) -> bool:
        """Necessary conditions for a solution of size ``k`` that splits ``Y``."""
        pairs = math.comb(self.cutset_size, 2)
        return (
            self.separation_demand <= k
            and self.two_attachment_count <= k
            and self.connectivity_sum <= k * pairs
        )

    @classmethod
    def initial(cls, inst: Instance) -> "InvariantLedger":
        """Ledger of an instance before any cutset is chosen."""
        return cls(inst.budget, 0, 0, 0, 0, inst.graph.n, 0, 0)


@dataclass(frozen=True)
class ComponentInstance:
    """Residual instance whose solutions must split ``cutset``."""

    instance: Instance
    cutset: frozenset
    committed: frozenset = frozenset()
    groups: tuple = ()
    backbones: tuple = ()
    notes: tuple = field(default=(), compare=False)

    @property
    def graph(self) -> MultiGraph:
        return self.instance.graph

    @property
    def budget(self) -> int:
        return self.instance.budget

    def split_pairs(self) -> list:
        ys = sorted(self.cutset)
        return [(a, b) for i, a in enumerate(ys) for b in ys[i + 1:]]

    def components(self) -> list:
        return y_components(self.graph, self.cutset)

    def ledger(self) -> InvariantLedger:
        g = self.graph
        comps = self.components()
        ys = sorted(self.cutset)
        conn = 0
        for i, a in enumerate(ys):
            for b in ys[i + 1:]:
                conn += edge_connectivity(g, a, b)
        return InvariantLedger(
            self.budget,
            len(self.cutset),
            sum(1 for c in comps if len(c.attachments) == 2),
            conn,
            len(self.backbones),
            g.n - len(self.cutset),
            sum(1 for grp in self.groups if grp.kind == ALLOWANCE),
            _separation_demand(g, self.cutset),
        )

    def allowance(self, comp: Component) -> int | None:
        """Tightest allowance covering every edge of ``comp``."""
        caps = [grp.hi for grp in self.groups if grp.kind == ALLOWANCE and comp.edges <= grp.edges]
        return min(caps) if caps else None

    def backbone_of(self, comp: Component) -> Backbone | None:
        for bb in self.backbones:
            if set(bb.edges) <= comp.edges:
                return bb
        return None

    def is_solution(self, chosen) -> bool:
        """Residual edge set meets the budget, groups, requests and the split."""
        chosen = set(chosen)
        if len(chosen) > self.budget or not chosen <= self.graph.edges.keys():
            return False
        if chosen & self.instance.undeletable:
            return False
        if not all(grp.admits(chosen) for grp in self.groups):
            return False
        side = {}
        for i, comp in enumerate(components(self.graph, removed_edges=chosen)):
            for v in comp:
                side[v] = i
        pairs = list(self.instance.requests) + self.split_pairs()
        if any(side[a] == side[b] for a, b in pairs):
            return False
        return not any(side[u] == side[y] == side[v] for u, y, v in self.instance.half_requests)


def y_components(g: MultiGraph, cutset) -> list:
    """Components of ``g`` minus ``cutset``, ordered by smallest vertex."""
    cutset = frozenset(cutset)
    seen = set()
    out = []
    for s in sorted(g.vertices - cutset):
        if s in seen:
            continue
        verts = {s}
        stack = [s]
        atts = set()
        while stack:
            a = stack.pop()
            for e in g.incident(a):
                b = g.other(e, a)
                if b in cutset:
                    atts.add(b)
                elif b not in verts:
                    verts.add(b)
                    stack.append(b)
        seen |= verts
        eids = frozenset(e for v in verts for e in g.incident(v))
        out.append(Component(frozenset(verts), frozenset(atts), eids))
    return out


def component_graph(g: MultiGraph, comp: Component) -> MultiGraph:
    """The component together with its attachment vertices and connecting edges."""
    return g.subgraph(comp.vertices | comp.attachments, eids=comp.edges)


def _separation_demand(g: MultiGraph, cutset) -> int:
    """Edges needed at least to separate the cutset pairwise."""
    total = 0
    for comp in components(g):
        inside = len(comp & cutset)
        if inside > 1:
            total += inside - 1
    return total


# --- normalization ------------------------------------------------------------------------


def _contract_edge(inst: Instance, cutset, e):
    """Contract edge ``e``, keeping cutset vertices as representatives."""
    a, b = inst.graph.edges[e]
    if a in cutset and b in cutset:
        raise UncuttableError("edge joins two cutset vertices")
    if b in cutset:
        a, b = b, a
    elif a not in cutset and b < a:
        a, b = b, a
    return inst.contract(a, b)


def _anchors(cutset, comp_of):
    """Vertices ``v`` can stay connected to once the cutset is split: its
    attachments, plus its own component as a pseudo-anchor."""

    def anchors(v):
        if v in cutset:
            return frozenset({v})
        c = comp_of[v]
        return c.attachments | {("component", min(c.vertices))}

    return anchors


def normalize(ci: ComponentInstance) -> ComponentInstance | None:
    """Apply the forced steps and prune hopeless branches.

    Forced steps: delete edges between cutset vertices; contract edges that
    can no longer be deleted; drop requests the split already satisfies and
    components without attachments. Returns None when the branch has no
    solution.
    """
    inst = ci.instance
    cutset = frozenset(ci.cutset)
    committed = set(ci.committed)
    groups = list(ci.groups)
    try:
        while True:
            g = inst.graph
            yy = [e for e, (a, b) in g.edges.items() if a in cutset and b in cutset]
            if yy:
                if set(yy) & inst.undeletable:
                    return None
                if inst.budget < len(yy):
                    return None
                inst = inst.delete_edges(yy)
                committed.update(yy)
                new_groups = []
                for grp in groups:
                    hit = len(grp.edges & set(yy))
                    if hit > grp.hi:
                        return None
                    new_groups.append(EdgeGroup(grp.edges - set(yy), max(0, grp.lo - hit), grp.hi - hit, grp.kind))
                groups = new_groups
                continue
            frozen = set(inst.undeletable)
            for grp in groups:
                if grp.hi == 0:
                    frozen |= grp.edges
            frozen &= g.edges.keys()
            if frozen:
                inst = _contract_edge(inst, cutset, min(frozen))
                groups = [EdgeGroup(grp.edges & inst.graph.edges.keys(), grp.lo, grp.hi, grp.kind) for grp in groups]
                continue
            break
    except UncuttableError:
        return None
    g = inst.graph
    comps = y_components(g, cutset)
    comp_of = {}
    for c in comps:
        for v in c.vertices:
            comp_of[v] = c
    anchors = _anchors(cutset, comp_of)
    reqs = frozenset(r for r in inst.requests if anchors(r[0]) & anchors(r[1]))
    halves = frozenset(t for t in inst.half_requests if anchors(t[0]) & anchors(t[2]) & anchors(t[1]))
    inst = inst.replace(requests=reqs, half_requests=halves)
    wanted = {v for r in reqs for v in r} | {v for t in halves for v in t}
    dead = set()
    for c in comps:
        if not c.attachments and not (c.vertices & wanted):
            dead |= c.vertices
    if dead:
        inst = inst.remove_vertices(dead)
        g = inst.graph
    live = g.edges.keys()
    kept = []
    for grp in groups:
        grp = EdgeGroup(grp.edges & live, min(grp.lo, len(grp.edges & live)), grp.hi, grp.kind)
        if grp.lo > grp.hi:
            return None
        if grp.lo == 0 and not grp.edges:
            continue
        if grp not in kept:
            kept.append(grp)
    backbones = []
    for bb in ci.backbones:
        edges = tuple(e for e in bb.edges if e in live)
        nb = Backbone(bb.source, bb.target, edges)
        if edges and nb.walk(g) is not None:
            backbones.append(nb)
    out = ComponentInstance(inst, cutset, frozenset(committed), tuple(kept), tuple(backbones), ci.notes)
    if not _plausible(out):
        return None
    return out


def _plausible(ci: ComponentInstance) -> bool:
    g = ci.graph
    if _separation_demand(g, ci.cutset) > ci.budget:
        return False
    ys = sorted(ci.cutset)
    for i, a in enumerate(ys):
        for b in ys[i + 1:]:
            if edge_connectivity(g, a, b, limit=ci.budget + 1) > ci.budget:
                return False
    need = 0
    for comp in ci.components():
        if len(comp.attachments) != 2:
            continue
        x, y = sorted(comp.attachments)
        lam = edge_connectivity(component_graph(g, comp), x, y, limit=ci.budget + 1)
        cap = ci.allowance(comp)
        if cap is not None and lam > cap:
            return False
        need += lam
    return need <= ci.budget


# --- iterative compression -------------------------------------------------------------------


def vertex_cover_of(g: MultiGraph, edges) -> frozenset:
    """One endpoint per edge: the one of higher degree, ties to the lower identifier."""
    out = set()
    for e in edges:
        a, b = g.edges[e]
        out.add(min((a, b), key=lambda v: (-g.degree(v), v)))
    return frozenset(out)


def compression_vertex(inst: Instance) -> int:
    g = inst.graph
    return min(g.vertices, key=lambda v: (-g.degree(v), v))


def iterative_compression(inst: Instance, solve) -> frozenset | None:
    """A vertex multicut of size at most ``k + 1``, or None when no multicut of size ``k`` exists.

    ``solve`` maps an Instance to a multicut edge set or None. It is called
    on the instance minus one vertex; a cover of its answer plus that vertex
    meets every request path of the full instance.
    """
    if not inst.requests:
        return frozenset()
    v = compression_vertex(inst)
    sub = inst.remove_vertices({v})
    found = solve(sub)
    if found is None:
        return None
    cover = vertex_cover_of(inst.graph, found)
    return cover | {v}


def is_vertex_multicut(inst: Instance, Y) -> bool:
    """Every request path meets ``Y`` (endpoints count)."""
    Y = set(Y)
    g = inst.graph.remove_vertices(Y)
    side = {}
    for i, comp in enumerate(components(g)):
        for v in comp:
            side[v] = i
    for u, v in inst.requests:
        if u in Y or v in Y:
            continue
        if side[u] == side[v]:
            return False
    return True


# --- partitions of Y ---------------------------------------------------------------------


def set_partitions(items) -> list:
    """All set partitions of ``items`` in a fixed order."""
    items = sorted(items)
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in set_partitions(rest):
        out.append([[first]] + [list(b) for b in part])
        for i in range(len(part)):
            blocks = [list(b) for b in part]
            blocks[i] = [first] + blocks[i]
            out.append(blocks)
    return sorted(out, key=lambda p: (-len(p), p))


def branch_y_partitions(inst: Instance, Y) -> list:
    """One branch per partition of ``Y``: contract each block, then demand a split.

    Returns ``(ComponentInstance, InvariantLedger)`` pairs; partitions that
    merge a request are dropped.
    """
    out = []
    for blocks in set_partitions(Y):
        try:
            cur = inst
            for block in blocks:
                cur = cur.contract_set(block, into=min(block))
        except UncuttableError:
            continue
        ci = normalize(ComponentInstance(cur, frozenset(min(b) for b in blocks)))
        if ci is not None:
            out.append((ci, ci.ledger()))
    return out


# --- shared branching helpers ----------------------------------------------------------------


def promote(ci: ComponentInstance, v: int) -> ComponentInstance | None:
    """Branch where ``v`` ends up in no component with a cutset vertex."""
    return normalize(replace(ci, cutset=ci.cutset | {v}))


def map_vertices(ci: ComponentInstance, mapping: dict) -> ComponentInstance | None:
    """Branch where each key shares its component with its cutset target."""
    inst = ci.instance
    try:
        for v, y in sorted(mapping.items()):
            inst = inst.contract(y, v)
    except UncuttableError:
        return None
    return normalize(replace(ci, instance=inst))


def _promote_or_map(ci, movable, targets, cap):
    movable = sorted(movable)
    targets = sorted(targets)
    if len(targets) ** len(movable) > cap:
        movable = movable[:1]
    out = []
    for v in movable:
        child = promote(ci, v)
        if child is not None:
            out.append(child)
    for image in product(targets, repeat=len(movable)):
        child = map_vertices(ci, dict(zip(movable, image)))
        if child is not None:
            out.append(child)
    return out


def slice_border(g: MultiGraph, x: int, y: int, z: int) -> list:
    """First and last vertex of each path of a maximum x-y path family inside the slice of ``z``."""
    crit = critical_edges(g, x, y)
    sl = component_of(g, z, removed_edges=crit)
    out = []
    for p in path_system(g, x, y):
        inside = [v for v in p.vertices if v in sl]
        if inside:
            for v in (inside[0], inside[-1]):
                if v not in out:
                    out.append(v)
    return out


# --- shaping operations -------------------------------------------------------------------


def reduce_attachment(ci: ComponentInstance, comp: Component, cap: int = DEFAULT_MAPPING_CAP) -> list:
    """Branch on the slice border of a third attachment vertex.

    With attachments ``x, y, z`` the border ``B(z)`` of the slice of ``z``
    (with respect to the critical x-y edges) is computed; a branch promotes
    one border vertex into the cutset, and the others send every free border
    vertex to the attachment it stays connected to.
    """
    atts = sorted(comp.attachments)
    if len(atts) < 3:
        raise GraphError("reduce_attachment needs at least three attachments")
    x, y, z = atts[:3]
    h = component_graph(ci.graph, comp)
    border = [v for v in slice_border(h, x, y, z) if v not in ci.cutset]
    if not border:
        border = [min(v for v in h.neighbors(z) if v in comp.vertices)]
    return _promote_or_map(ci, border, atts, cap)


def reduce_xy_degree(ci: ComponentInstance, comp: Component, cap: int = DEFAULT_MAPPING_CAP) -> list:
    """Branch until both attachments have degree equal to the component's connectivity.

    For an attachment of larger degree, the minimal minimum cut ``A`` around
    it is taken; its inner border vertices are promoted or sent to one of
    the two attachments. Sending all of them to the attachment turns the rest
    of ``A`` into a cherry hanging there.
    """
    atts = sorted(comp.attachments)
    if len(atts) != 2:
        raise GraphError("reduce_xy_degree needs exactly two attachments")
    h = component_graph(ci.graph, comp)
    x, y = atts
    lam = edge_connectivity(h, x, y)
    for side, other in ((x, y), (y, x)):
        if h.degree(side) <= lam:
            continue
        cut = minimal_min_cut(h, side, other)
        inner = set()
        for e in cut.border:
            a, b = h.edges[e]
            inner.add(a if a in cut.members else b)
        inner.discard(side)
        if not inner:
            continue
        return _promote_or_map(ci, inner, atts, cap)
    return [ci]


def xy_degree_ok(ci: ComponentInstance, comp: Component) -> bool:
    h = component_graph(ci.graph, comp)
    x, y = sorted(comp.attachments)
    lam = edge_connectivity(h, x, y)
    return h.degree(x) == lam and h.degree(y) == lam


def compositions(ci: ComponentInstance) -> list:
    """Branch over allowances for two-attachment components that have none.

    Each branch caps the deletions inside every such component by some
    ``k_i`` at least its connectivity, with the caps summing to at most the
    budget.
    """
    todo = []
    for comp in ci.components():
        if len(comp.attachments) == 2 and ci.allowance(comp) is None:
            x, y = sorted(comp.attachments)
            todo.append((comp, edge_connectivity(component_graph(ci.graph, comp), x, y)))
    if not todo:
        return [ci]
    out = []
    ranges = [range(lam, ci.budget + 1) for _, lam in todo]
    for caps in product(*ranges):
        if sum(caps) > ci.budget:
            continue
        extra = tuple(EdgeGroup(comp.edges, 0, cap, ALLOWANCE) for (comp, _), cap in zip(todo, caps))
        child = normalize(replace(ci, groups=ci.groups + extra))
        if child is not None:
            out.append(child)
    return out


def find_backbone(ci: ComponentInstance, comp: Component, k_i: int | None = None) -> list | None:
    """Delete the component outright, or fix a backbone, given at most ``k_i`` deletions in it.

    When ``k_i`` covers every edge at both attachments, one branch deletes
    them all. When fewer than twice the connectivity can be spent, some path
    of a maximum path family carries exactly one solution edge; for each
    path ``P_j`` one branch assumes that edge is critical (contract the
    others, adopt ``P_j`` as backbone) and one assumes ``P_j`` has no critical
    solution edge (contract its critical edges). Returns None when neither
    rule is exact for this allowance.
    """
    atts = sorted(comp.attachments)
    if len(atts) != 2:
        raise GraphError("find_backbone needs exactly two attachments")
    if k_i is None:
        k_i = ci.allowance(comp)
        if k_i is None:
            k_i = ci.budget
    k_i = min(k_i, ci.budget)
    x, y = atts
    h = component_graph(ci.graph, comp)
    lam = edge_connectivity(h, x, y)
    if lam > k_i:
        return []
    at_ends = sorted(set(h.incident(x)) | set(h.incident(y)))
    if set(at_ends) & ci.instance.undeletable:
        return None
    out = []
    path_cap = k_i
    if k_i >= len(at_ends):
        child = normalize(replace(ci, instance=ci.instance.delete_edges(at_ends), committed=ci.committed | set(at_ends),
                                  groups=_charge(ci.groups, at_ends)))
        if child is not None:
            out.append(child)
        path_cap = len(at_ends) - 1
    if path_cap >= 2 * lam:
        return None
    crit = critical_edges(h, x, y)
    cap_group = (EdgeGroup(comp.edges, 0, path_cap, ALLOWANCE),) if path_cap < k_i else ()
    for p in path_system(h, x, y):
        loose = [e for e in p.edges if e not in crit]
        tight = [e for e in p.edges if e in crit]
        child = _contract_edges(ci, loose)
        if child is not None:
            kept = tuple(e for e in p.edges if e in child.graph.edges)
            bb = Backbone(x, y, kept)
            grp = EdgeGroup(frozenset(kept), 1, 1, BACKBONE)
            child = normalize(replace(child, groups=child.groups + cap_group + (grp,),
                                      backbones=child.backbones + (bb,)))
            if child is not None:
                out.append(child)
        child = _contract_edges(ci, tight)
        if child is not None:
            child = normalize(replace(child, groups=child.groups + cap_group))
            if child is not None:
                out.append(child)
    return out


def _charge(groups, deleted) -> tuple:
    deleted = set(deleted)
    return tuple(
        EdgeGroup(g.edges - deleted, max(0, g.lo - len(g.edges & deleted)), g.hi - len(g.edges & deleted), g.kind)
        for g in groups
    )


def _contract_edges(ci: ComponentInstance, eids) -> ComponentInstance | None:
    inst = ci.instance
    try:
        for e in eids:
            if e in inst.graph.edges:
                inst = _contract_edge(inst, ci.cutset, e)
    except UncuttableError:
        return None
    groups = tuple(EdgeGroup(g.edges & inst.graph.edges.keys(), g.lo, g.hi, g.kind) for g in ci.groups)
    return replace(ci, instance=inst, groups=groups)


def absorb_free_edges(ci: ComponentInstance) -> ComponentInstance | None:
    """Contract edges that can no longer be deleted because their allowance is used up by backbones."""
    frozen = set()
    for grp in ci.groups:
        if grp.kind != ALLOWANCE:
            continue
        inside = [b for b in ci.groups if b.kind == BACKBONE and b.edges and b.edges <= grp.edges]
        if sum(b.lo for b in inside) >= grp.hi:
            taken = set().union(*(b.edges for b in inside)) if inside else set()
            frozen |= grp.edges - taken
    frozen &= ci.graph.edges.keys()
    if not frozen:
        return ci
    child = _contract_edges(ci, sorted(frozen))
    return None if child is None else normalize(child)


def _cherry_branches(ci, cherries, reduce_terminals, method, max_k):
    inst = ci.instance
    k = ci.budget
    if k > max_k:
        return None
    options = []
    for comp in cherries:
        (y,) = comp.attachments
        c = Cherry(y, comp.vertices | {y})
        if reduce_terminals and is_cherry(inst, c):
            inst = reduce_cherry_terminals(inst, c, method, max_k).instance
        terms = cherry_terminals(inst, c)
        act = active_set(inst.graph, c, terms, k, max_k)
        subsets = [d for size in range(0, min(k, len(act.edges)) + 1) for d in combinations(sorted(act.edges), size)]
        options.append((c, subsets))
    out = []
    for choice in product(*(subs for _, subs in options)):
        deleted = [e for d in choice for e in d]
        if len(deleted) > k:
            continue
        child = _settle_cherries(ci, inst, [c for c, _ in options], deleted)
        if child is not None:
            out.append(child)
    return out


def _settle_cherries(ci, inst, cherries, deleted):
    try:
        inst = inst.delete_edges(deleted)
        g = inst.graph
        drop = set()
        for c in cherries:
            reach = component_of(g.subgraph(c.body), c.attachment)
            drop |= c.inner - reach
            inst = inst.contract_set(sorted(reach - {c.attachment}), into=c.attachment) if len(reach) > 1 else inst
        if drop:
            inst = inst.remove_vertices(drop)
    except (UncuttableError, GraphError):
        return None
    child = replace(ci, instance=inst, committed=ci.committed | set(deleted), groups=_charge(ci.groups, deleted))
    return normalize(child)


def reduce_y_cherries(
    ci: ComponentInstance, reduce_terminals: bool = True, method: str = "recursive", max_k: int = DEFAULT_MAX_K
) -> list | None:
    """Remove every one-attachment component.

    If a request joins two such components on the same attachment, one of
    its endpoints must lose contact with the attachment: branch on which one
    is promoted. Otherwise branch over deletion sets drawn from the active
    sets of the cherries (at most the budget in total); the part still
    attached is contracted into the attachment and the rest is dropped.
    Returns None when the budget exceeds the enumeration cap.
    """
    comps = ci.components()
    cherries = [c for c in comps if len(c.attachments) == 1]
    if not cherries:
        return [ci]
    owner = {}
    for c in cherries:
        for v in c.vertices:
            owner[v] = c
    for u, v in sorted(ci.instance.requests):
        cu, cv = owner.get(u), owner.get(v)
        if cu is not None and cv is not None and cu is not cv and cu.attachments == cv.attachments:
            out = []
            for w in (u, v):
                child = promote(ci, w)
                if child is not None:
                    out.append(child)
            return out
    return _cherry_branches(ci, cherries, reduce_terminals, method, max_k)


def pick_component(ci: ComponentInstance, phase: str):
    """First component the given phase applies to, or None."""
    for comp in ci.components():
        atts = len(comp.attachments)
        if phase == "attach" and atts >= 3:
            return comp
        if phase == "xydeg" and atts == 2 and ci.backbone_of(comp) is None and not xy_degree_ok(ci, comp):
            return comp
        if phase == "backbone" and atts == 2 and ci.backbone_of(comp) is None:
            return comp
        if phase == "cherry" and atts == 1:
            return comp
    return None
