"""Contraction-capable multigraph, multicut instances and flow primitives."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from multicut import kernels


class GraphError(ValueError):
    """Precondition violation on a graph operation."""


class UncuttableError(GraphError):
    """A contraction merged both endpoints of a request."""


class MultiGraph:
    """Undirected multigraph with stable vertex and edge identifiers.

    Values are treated as immutable: every mutating operation returns a new
    graph. Parallel edges keep distinct identifiers and loops are dropped as
    soon as a contraction creates them. ``rep`` maps every vertex that ever
    existed to its current representative.
    """

    __slots__ = ("_edges", "_adj", "_rep")

    def __init__(self, vertices: Iterable[int] = (), edges=None, rep=None):
        if edges is None:
            edges = {}
        elif not isinstance(edges, dict):
            edges = dict(enumerate(edges))
        adj = {v: [] for v in vertices}
        clean = {}
        for eid, (u, v) in edges.items():
            if u == v:
                raise GraphError(f"edge {eid} is a loop at {u}")
            adj.setdefault(u, []).append(eid)
            adj.setdefault(v, []).append(eid)
            clean[eid] = (u, v)
        self._edges = clean
        self._adj = adj
        self._rep = dict(rep) if rep is not None else {}
        for v in adj:
            self._rep.setdefault(v, v)

    @classmethod
    def _raw(cls, edges, adj, rep):
        g = cls.__new__(cls)
        g._edges, g._adj, g._rep = edges, adj, rep
        return g

    # --- read access -----------------------------------------------------

    @property
    def vertices(self) -> frozenset:
        return frozenset(self._adj)

    @property
    def edges(self) -> dict:
        """Mapping edge id -> (u, v). Do not mutate."""
        return self._edges

    @property
    def rep(self) -> dict:
        return self._rep

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return len(self._edges)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"

    def find(self, v: int) -> int:
        """Current representative of an original vertex."""
        return self._rep[v]

    def incident(self, v: int) -> list:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def endpoints(self, eid: int) -> tuple:
        return self._edges[eid]

    def other(self, eid: int, v: int) -> int:
        a, b = self._edges[eid]
        return b if a == v else a

    def neighbors(self, v: int) -> set:
        return {self.other(e, v) for e in self._adj[v]}

    def border(self, members) -> list:
        """Sorted edge ids with exactly one endpoint in ``members``."""
        s = members if isinstance(members, (set, frozenset)) else set(members)
        return sorted(e for e, (a, b) in self._edges.items() if (a in s) != (b in s))

    def edges_within(self, members) -> list:
        s = members if isinstance(members, (set, frozenset)) else set(members)
        return sorted(e for e, (a, b) in self._edges.items() if a in s and b in s)

    # --- derived graphs ---------------------------------------------------

    def contract(self, u: int, v: int) -> "MultiGraph":
        """Merge ``v`` into ``u``; ``u`` stays the representative."""
        if u == v:
            raise GraphError(f"cannot contract vertex {u} with itself")
        if u not in self._adj or v not in self._adj:
            raise GraphError(f"contract({u}, {v}): vertex not live")
        edges = dict(self._edges)
        adj = dict(self._adj)
        keep_u = [e for e in adj[u] if v not in edges[e]]
        moved = []
        for e in adj[v]:
            a, b = edges[e]
            if a == u or b == u:
                del edges[e]
                continue
            edges[e] = (u, b) if a == v else (a, u)
            moved.append(e)
        adj[u] = sorted(keep_u + moved)
        del adj[v]
        rep = {k: (u if r == v else r) for k, r in self._rep.items()}
        return MultiGraph._raw(edges, adj, rep)

    def contract_set(self, group, into=None) -> "MultiGraph":
        """Identify every vertex of ``group`` with ``into`` (default: min)."""
        group = [w for w in group]
        if not group:
            return self
        if into is None:
            into = min(group)
        members = set(group) | {into}
        for w in members:
            if w not in self._adj:
                raise GraphError(f"contract_set: vertex {w} not live")
        edges = {}
        adj = {}
        for e, (a, b) in self._edges.items():
            a2 = into if a in members else a
            b2 = into if b in members else b
            if a2 != b2:
                edges[e] = (a2, b2)
        for w in self._adj:
            if w not in members or w == into:
                adj[w] = []
        for e, (a, b) in edges.items():
            adj[a].append(e)
            adj[b].append(e)
        rep = {k: (into if r in members else r) for k, r in self._rep.items()}
        return MultiGraph._raw(edges, adj, rep)

    def remove_edges(self, eids) -> "MultiGraph":
        drop = set(eids)
        missing = drop - self._edges.keys()
        if missing:
            raise GraphError(f"edges not present: {sorted(missing)}")
        edges = {e: uv for e, uv in self._edges.items() if e not in drop}
        adj = {v: [e for e in es if e not in drop] for v, es in self._adj.items()}
        return MultiGraph._raw(edges, adj, dict(self._rep))

    def remove_vertices(self, vs) -> "MultiGraph":
        drop = set(vs)
        edges = {e: (a, b) for e, (a, b) in self._edges.items() if a not in drop and b not in drop}
        adj = {v: [e for e in es if e in edges] for v, es in self._adj.items() if v not in drop}
        rep = {k: r for k, r in self._rep.items() if r not in drop}
        return MultiGraph._raw(edges, adj, rep)

    def subgraph(self, vs, eids=None) -> "MultiGraph":
        """Induced subgraph on ``vs`` (optionally restricted to ``eids``)."""
        keep = set(vs)
        allowed = None if eids is None else set(eids)
        edges = {
            e: (a, b)
            for e, (a, b) in self._edges.items()
            if a in keep and b in keep and (allowed is None or e in allowed)
        }
        adj = {v: [] for v in self._adj if v in keep}
        for e, (a, b) in edges.items():
            adj[a].append(e)
            adj[b].append(e)
        rep = {k: r for k, r in self._rep.items() if r in keep}
        return MultiGraph._raw(edges, adj, rep)

    def with_vertex(self, v: int) -> "MultiGraph":
        if v in self._adj:
            raise GraphError(f"vertex {v} already present")
        adj = dict(self._adj)
        adj[v] = []
        rep = dict(self._rep)
        rep[v] = v
        return MultiGraph._raw(dict(self._edges), adj, rep)

    def with_edges(self, pairs) -> tuple:
        """Add edges; returns ``(graph, new_ids)``."""
        edges = dict(self._edges)
        adj = {v: list(es) for v, es in self._adj.items()}
        nxt = max(edges, default=-1) + 1
        new = []
        for u, v in pairs:
            if u == v or u not in adj or v not in adj:
                raise GraphError(f"cannot add edge {u}-{v}")
            edges[nxt] = (u, v)
            adj[u].append(nxt)
            adj[v].append(nxt)
            new.append(nxt)
            nxt += 1
        return MultiGraph._raw(edges, adj, dict(self._rep)), new

    def fresh_vertex(self) -> int:
        return max(self._rep, default=-1) + 1


def contract(g: MultiGraph, u: int, v: int) -> MultiGraph:
    return g.contract(u, v)


# --- traversal ----------------------------------------------------------------


def components(g: MultiGraph, removed_edges=()) -> list:
    """Connected components as a list of frozensets, ordered by minimum vertex."""
    skip = set(removed_edges)
    seen = set()
    out = []
    for s in sorted(g.vertices):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for e in g.incident(a):
                if e in skip:
                    continue
                b = g.other(e, a)
                if b not in comp:
                    comp.add(b)
                    queue.append(b)
        seen |= comp
        out.append(frozenset(comp))
    return out


def component_of(g: MultiGraph, s: int, removed_edges=(), blocked=()) -> set:
    """Vertices reachable from ``s`` avoiding ``removed_edges``; ``blocked`` vertices are entered but not expanded."""
    skip = set(removed_edges)
    stop = set(blocked)
    comp = {s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        if a in stop and a != s:
            continue
        for e in g.incident(a):
            if e in skip:
                continue
            b = g.other(e, a)
            if b not in comp:
                comp.add(b)
                queue.append(b)
    return comp


def is_connected_set(g: MultiGraph, vs) -> bool:
    """True iff ``vs`` induces a connected subgraph (empty counts as connected)."""
    vs = set(vs)
    if not vs:
        return True
    start = min(vs)
    comp = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for e in g.incident(a):
            b = g.other(e, a)
            if b in vs and b not in comp:
                comp.add(b)
                queue.append(b)
    return len(comp) == len(vs)


# --- flows ------------------------------------------------------------------


class Flow(NamedTuple):
    value: int
    flow: dict  # edge id -> +1 (along stored orientation), -1 (against)
    source_side: frozenset  # residual reachability from the source


def _indexed(g: MultiGraph):
    order = sorted(g.vertices)
    index = {v: i for i, v in enumerate(order)}
    eids = sorted(g.edges)
    us = [index[g.edges[e][0]] for e in eids]
    vs = [index[g.edges[e][1]] for e in eids]
    return order, index, eids, us, vs


def max_flow(g: MultiGraph, x: int, y: int, limit: int = -1) -> Flow:
    """Unit-capacity max flow between ``x`` and ``y``, optionally capped at ``limit``."""
    if x == y:
        raise GraphError("source equals sink")
    order, index, eids, us, vs = _indexed(g)
    value, fl, reach = kernels.unit_max_flow(len(order), us, vs, index[x], index[y], limit)
    flow = {eids[i]: f for i, f in enumerate(fl) if f}
    side = frozenset(order[i] for i, r in enumerate(reach) if r)
    return Flow(value, flow, side)


def edge_connectivity(g: MultiGraph, x: int, y: int, limit: int = -1) -> int:
    """Size of a minimum x-y edge cut, counting parallel edges."""
    if x == y:
        raise GraphError("edge_connectivity needs distinct endpoints")
    return max_flow(g, x, y, limit).value


class Path(NamedTuple):
    vertices: tuple
    edges: tuple


def decompose_flow(g: MultiGraph, x: int, y: int, flow: dict) -> list:
    """Split an integral x-y flow into edge-disjoint paths (cycles discarded).

    Walks always take the lowest unused edge id, so the result is deterministic.
    """
    out_edges = {}
    for e, f in flow.items():
        a, b = g.edges[e]
        if f < 0:
            a, b = b, a
        out_edges.setdefault(a, []).append((e, b))
    for lst in out_edges.values():
        lst.sort()
    used = set()
    paths = []
    while True:
        verts = [x]
        path_edges = []
        pos = {x: 0}
        a = x
        while a != y:
            nxt = next(((e, b) for e, b in out_edges.get(a, ()) if e not in used), None)
            if nxt is None:
                break
            e, b = nxt
            used.add(e)
            if b in pos:
                # drop the cycle that closes at b
                cut = pos[b]
                for w in verts[cut + 1:]:
                    del pos[w]
                verts = verts[: cut + 1]
                path_edges = path_edges[:cut]
            else:
                pos[b] = len(verts)
                verts.append(b)
                path_edges.append(e)
            a = b
        if a != y:
            break
        paths.append(Path(tuple(verts), tuple(path_edges)))
    return paths


def path_system(g: MultiGraph, x: int, y: int) -> list:
    """Maximum family of pairwise edge-disjoint x-y paths from a flow decomposition."""
    f = max_flow(g, x, y)
    if f.value == 0:
        raise GraphError(f"{x} and {y} are disconnected")
    paths = decompose_flow(g, x, y, f.flow)
    assert len(paths) == f.value, "flow decomposition lost a path"
    return paths


# --- instances ------------------------------------------------------------------


def _pair(u, v):
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Instance:
    """Multicut instance: graph, requests, budget, optional half-requests.

    ``requests`` holds normalized (min, max) pairs. ``half_requests`` holds
    (u, y, v) triples: after deletion, u and v must not both stay connected
    to y. ``undeletable`` edges may not appear in a solution.
    """

    graph: MultiGraph
    requests: frozenset = frozenset()
    budget: int = 0
    half_requests: frozenset = frozenset()
    undeletable: frozenset = frozenset()

    def __post_init__(self):
        reqs = frozenset(_pair(u, v) for u, v in self.requests)
        object.__setattr__(self, "requests", reqs)
        object.__setattr__(self, "half_requests", frozenset(tuple(t) for t in self.half_requests))
        object.__setattr__(self, "undeletable", frozenset(self.undeletable))
        live = self.graph.vertices
        for u, v in reqs:
            if u == v:
                raise GraphError(f"request ({u}, {v}) has equal endpoints")
            if u not in live or v not in live:
                raise GraphError(f"request ({u}, {v}) uses a dead vertex")
        for u, y, v in self.half_requests:
            if y not in live or u not in live or v not in live:
                raise GraphError(f"half-request ({u}, {y}, {v}) uses a dead vertex")
        if self.budget < 0:
            raise GraphError("negative budget")

    @classmethod
    def build(cls, n_or_vertices, edges, requests=(), budget=0, half_requests=(), undeletable=()):
        """Convenience constructor: vertices 1..n (or an explicit iterable), edge list."""
        if isinstance(n_or_vertices, int):
            vertices = range(1, n_or_vertices + 1)
        else:
            vertices = n_or_vertices
        g = MultiGraph(vertices, list(edges))
        return cls(g, frozenset(requests), budget, frozenset(half_requests), frozenset(undeletable))

    def terminals(self) -> set:
        out = set()
        for u, v in self.requests:
            out.add(u)
            out.add(v)
        return out

    def partners(self, x: int) -> set:
        return {v if u == x else u for u, v in self.requests if x in (u, v)}

    def request_degree(self, x: int) -> int:
        return sum(1 for r in self.requests if x in r)

    def replace(self, **changes) -> "Instance":
        data = dict(
            graph=self.graph,
            requests=self.requests,
            budget=self.budget,
            half_requests=self.half_requests,
            undeletable=self.undeletable,
        )
        data.update(changes)
        return Instance(**data)

    def _remapped(self, g: MultiGraph) -> "Instance":
        find = g.find
        reqs = set()
        for u, v in self.requests:
            a, b = find(u), find(v)
            if a == b:
                raise UncuttableError(f"request ({u}, {v}) merged")
            reqs.add(_pair(a, b))
        halves = set()
        for u, y, v in self.half_requests:
            a, c, b = find(u), find(y), find(v)
            if a == c == b:
                raise UncuttableError(f"half-request ({u}, {y}, {v}) merged")
            halves.add((a, c, b))
        return Instance(g, frozenset(reqs), self.budget, frozenset(halves), self.undeletable & g.edges.keys())

    def contract(self, u: int, v: int) -> "Instance":
        """Contract ``v`` into ``u``; raises UncuttableError when a request collapses."""
        return self._remapped(self.graph.contract(u, v))

    def contract_set(self, group, into=None) -> "Instance":
        return self._remapped(self.graph.contract_set(group, into))

    def delete_edges(self, eids) -> "Instance":
        eids = set(eids)
        if eids & self.undeletable:
            raise GraphError("attempt to delete an undeletable edge")
        return Instance(
            self.graph.remove_edges(eids), self.requests, self.budget - len(eids), self.half_requests, self.undeletable
        )

    def remove_vertices(self, vs) -> "Instance":
        """Drop vertices together with every request touching them."""
        drop = set(vs)
        g = self.graph.remove_vertices(drop)
        reqs = frozenset(r for r in self.requests if r[0] not in drop and r[1] not in drop)
        halves = frozenset(t for t in self.half_requests if not (set(t) & drop))
        return Instance(g, reqs, self.budget, halves, self.undeletable & g.edges.keys())
