"""Structure of two-attachment components: critical edges, slices, tags,
slice connectivity, and detection of the fully subdivided endgame shape."""

from __future__ import annotations

from dataclasses import dataclass

from multicut.graph import GraphError, MultiGraph, Path, components, edge_connectivity, path_system


class StructuralError(GraphError):
    """A backbone does not have the structure the analysis relies on."""


def critical_edges(g: MultiGraph, x: int, y: int) -> frozenset:
    """Edges lying in some minimum x-y cut: deleting one copy drops the connectivity."""
    lam = edge_connectivity(g, x, y)
    if lam == 0:
        return frozenset()
    out = set()
    for e in sorted(g.edges):
        if edge_connectivity(g.remove_edges([e]), x, y, limit=lam) < lam:
            out.add(e)
    return frozenset(out)


@dataclass(frozen=True)
class Backbone:
    """A path between two attachment vertices; the solution takes exactly one of its edges."""

    source: int
    target: int
    edges: tuple  # ordered from source to target

    def walk(self, g: MultiGraph) -> tuple | None:
        """Vertex sequence of the path in ``g``, or None when it no longer is a simple path."""
        verts = [self.source]
        for e in self.edges:
            if e not in g.edges:
                return None
            a, b = g.edges[e]
            if a == verts[-1]:
                verts.append(b)
            elif b == verts[-1]:
                verts.append(a)
            else:
                return None
        if verts[-1] != self.target or len(set(verts)) != len(verts):
            return None
        return tuple(verts)


@dataclass(frozen=True)
class BackboneAnalysis:
    source: int
    target: int
    connectivity: int
    critical: frozenset
    slices: tuple  # partition of the component's vertices
    paths: tuple  # Path records; paths[0] is the backbone
    tags: dict  # backbone vertex -> frozenset of 1-based path indices
    slice_connectivity: dict  # backbone vertex -> int

    def slice_of(self, v: int) -> frozenset:
        return next(s for s in self.slices if v in s)


def analyze(g: MultiGraph, x: int, y: int, backbone) -> BackboneAnalysis:
    """Critical edges, slices, tags and slice connectivity of the component ``g``.

    ``backbone`` is an ordered edge sequence from ``x`` to ``y`` (or a
    Backbone). Every backbone edge must be critical, and the backbone must
    extend to a maximum family of edge-disjoint paths.
    """
    if isinstance(backbone, Backbone):
        bb = backbone
    else:
        bb = Backbone(x, y, tuple(backbone))
    verts = bb.walk(g)
    if verts is None:
        raise StructuralError("backbone is not a simple x-y path")
    lam = edge_connectivity(g, x, y)
    crit = critical_edges(g, x, y)
    loose = [e for e in bb.edges if e not in crit]
    if loose:
        raise StructuralError(f"backbone edges {loose} are not critical")
    first = Path(verts, tuple(bb.edges))
    rest = g.remove_edges(bb.edges)
    others = path_system(rest, x, y) if lam > 1 else []
    if len(others) != lam - 1:
        raise StructuralError("backbone does not extend to a maximum path family")
    paths = (first, *others)
    slices = tuple(components(g, removed_edges=crit))
    where = {}
    for i, s in enumerate(slices):
        for v in s:
            where[v] = i
    if len({where[v] for v in verts}) != len(verts):
        raise StructuralError("two backbone vertices share a slice")
    tags = {}
    sc = {}
    for v in verts:
        sl = slices[where[v]]
        tags[v] = frozenset(j + 1 for j, p in enumerate(paths) if sl.intersection(p.vertices))
        if x in sl or y in sl:
            sc[v] = 0
        else:
            sc[v] = edge_connectivity(g.remove_vertices(sl), x, y)
    return BackboneAnalysis(x, y, lam, crit, slices, paths, tags, sc)


# --- subdivided shape ----------------------------------------------------------------


@dataclass(frozen=True)
class ShapePath:
    source: int
    target: int
    vertices: tuple  # source, internal vertices..., target
    edges: tuple  # edges[r - 1] is the r-th edge from the source

    @property
    def length(self) -> int:
        return len(self.edges)

    def position(self, v: int) -> int | None:
        """Index i of an internal vertex (it sits between edges i and i + 1)."""
        try:
            i = self.vertices.index(v)
        except ValueError:
            return None
        return i if 0 < i < len(self.vertices) - 1 else None


@dataclass(frozen=True)
class SubdividedShape:
    branch_vertices: frozenset
    paths: tuple  # ShapePath records

    def locate(self, v: int):
        """``("branch", v)`` or ``("path", index, position)``; None when off the shape."""
        if v in self.branch_vertices:
            return ("branch", v)
        for a, p in enumerate(self.paths):
            i = p.position(v)
            if i is not None:
                return ("path", a, i)
        return None


def subdivided_shape(g: MultiGraph, cutset, backbones) -> SubdividedShape | None:
    """The shape when every component off ``cutset`` is exactly one backbone path."""
    cutset = frozenset(cutset)
    covered_edges = set()
    covered_vertices = set()
    paths = []
    for bb in backbones:
        verts = bb.walk(g)
        if verts is None or verts[0] not in cutset or verts[-1] not in cutset or verts[0] == verts[-1]:
            return None
        inner = verts[1:-1]
        if any(v in cutset or v in covered_vertices for v in inner):
            return None
        covered_vertices.update(inner)
        covered_edges.update(bb.edges)
        paths.append(ShapePath(verts[0], verts[-1], verts, tuple(bb.edges)))
    if covered_edges != set(g.edges):
        return None
    if covered_vertices != set(g.vertices) - cutset:
        return None
    return SubdividedShape(cutset, tuple(paths))


def detect_subdivided(ci) -> SubdividedShape | None:
    """Subdivided shape of a component instance (graph, cutset, backbones), if it has one."""
    return subdivided_shape(ci.instance.graph, ci.cutset, ci.backbones)
