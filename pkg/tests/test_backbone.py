import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicut.backbone import (
    Backbone,
    StructuralError,
    analyze,
    critical_edges,
    detect_subdivided,
    subdivided_shape,
)
from multicut.compress import ComponentInstance
from multicut.graph import Instance, MultiGraph, edge_connectivity, path_system
from oracles import minimum_cut_borders, random_graph, random_shape

PATH = MultiGraph([1, 2, 3], [(1, 2), (2, 3)])
THETA = MultiGraph(range(1, 5), [(1, 3), (3, 2), (1, 4), (4, 2)])
# edges: 0 = 1-3, 1 = 3-2, 2 = 1-4, 3 = 4-2, 4 = chord 3-4
THETA_CHORD = MultiGraph(range(1, 5), [(1, 3), (3, 2), (1, 4), (4, 2), (3, 4)])


def test_critical_edge_examples():
    assert critical_edges(PATH, 1, 3) == {0, 1}
    assert critical_edges(THETA, 1, 2) == {0, 1, 2, 3}
    assert critical_edges(THETA_CHORD, 1, 2) == {0, 1, 2, 3}
    assert critical_edges(MultiGraph([1, 2], []), 1, 2) == frozenset()


def test_critical_parallel_copies():
    g = MultiGraph([1, 2, 3], [(1, 2), (1, 2), (2, 3)])
    assert critical_edges(g, 1, 3) == {2}


@st.composite
def connected_graphs(draw):
    n = draw(st.integers(2, 7))
    m = draw(st.integers(0, 8))
    edges = [(draw(st.integers(1, v - 1)), v) for v in range(2, n + 1)]
    edges += [tuple(draw(st.lists(st.integers(1, n), min_size=2, max_size=2, unique=True))) for _ in range(m)]
    return MultiGraph(range(1, n + 1), edges)


@settings(max_examples=120, deadline=None)
@given(connected_graphs())
def test_critical_edges_are_union_of_min_cut_borders(g):
    x, y = 1, max(g.vertices)
    assert critical_edges(g, x, y) == minimum_cut_borders(g, x, y)


def test_analyze_bare_path():
    an = analyze(PATH, 1, 3, (0, 1))
    assert all(len(s) == 1 for s in an.slices)
    assert set(an.tags.values()) == {frozenset({1})}
    assert set(an.slice_connectivity.values()) == {0}
    assert an.connectivity == 1


def test_analyze_theta_chord():
    an = analyze(THETA_CHORD, 1, 2, Backbone(1, 2, (2, 3)))
    assert an.slice_of(4) == {3, 4}
    assert an.tags[4] == {1, 2}
    assert an.tags[1] == {1, 2} and an.tags[2] == {1, 2}
    assert an.critical == {0, 1, 2, 3}
    assert an.slice_connectivity[4] == 0


def test_analyze_rejects_non_critical_backbone():
    g = MultiGraph([1, 2, 3], [(1, 2), (1, 2), (2, 3)])
    with pytest.raises(StructuralError):
        analyze(g, 1, 3, (0, 2))
    with pytest.raises(StructuralError):
        analyze(PATH, 1, 3, (1, 0))


def _backbone_candidates(g, x, y):
    crit = critical_edges(g, x, y)
    for p in path_system(g, x, y):
        if all(e in crit for e in p.edges):
            yield p.edges


def test_analysis_invariants_on_random_components():
    rng = random.Random(41)
    analysed = 0
    for _ in range(300):
        g = random_graph(rng, rng.randint(3, 7), rng.randint(3, 9), connected=True)
        x, y = 1, g.n
        lam = edge_connectivity(g, x, y)
        for bb in _backbone_candidates(g, x, y):
            try:
                an = analyze(g, x, y, bb)
            except StructuralError:
                continue
            analysed += 1
            walk = Backbone(x, y, bb).walk(g)
            slices = [an.slice_of(v) for v in walk]
            assert len(set(slices)) == len(slices)
            for v in walk:
                assert 1 in an.tags[v]
                assert 0 <= an.slice_connectivity[v] <= lam - 1
            assert sorted(v for s in an.slices for v in s) == sorted(g.vertices)
    assert analysed > 50


def ci_of(edges, cutset, backbones, n=None):
    n = n or max(max(e) for e in edges)
    inst = Instance.build(n, edges, [], 2)
    return ComponentInstance(inst, frozenset(cutset), backbones=tuple(backbones))


def test_detect_two_bare_paths():
    ci = ci_of([(1, 3), (3, 2), (1, 4), (4, 5), (5, 2)], {1, 2}, [Backbone(1, 2, (0, 1)), Backbone(1, 2, (2, 3, 4))])
    shape = detect_subdivided(ci)
    assert shape is not None and len(shape.paths) == 2
    assert shape.paths[1].edges == (2, 3, 4)
    assert shape.paths[1].vertices == (1, 4, 5, 2)
    assert shape.locate(5) == ("path", 1, 2)
    assert shape.locate(1) == ("branch", 1)


def test_detect_rejects_chord_and_missing_backbones():
    edges = [(1, 3), (3, 2), (1, 4), (4, 2), (3, 4)]
    bbs = [Backbone(1, 2, (0, 1)), Backbone(1, 2, (2, 3))]
    assert detect_subdivided(ci_of(edges, {1, 2}, bbs)) is None
    assert detect_subdivided(ci_of(edges[:4], {1, 2}, bbs[:1])) is None
    assert detect_subdivided(ci_of(edges[:4], {1, 2}, bbs)) is not None


def test_shape_enumerations_follow_edge_order():
    rng = random.Random(43)
    for _ in range(100):
        inst, cutset, paths, ends = random_shape(rng, rng.randint(2, 4), rng.randint(1, 5), 5, 0, 0)
        shape = subdivided_shape(inst.graph, cutset, [Backbone(a, b, p) for (a, b), p in zip(ends, paths)])
        assert shape is not None and shape.branch_vertices == cutset
        for sp, p, (a, b) in zip(shape.paths, paths, ends):
            assert sp.edges == p and sp.source == a and sp.target == b
            for r, e in enumerate(sp.edges):
                assert set(inst.graph.edges[e]) == {sp.vertices[r], sp.vertices[r + 1]}
