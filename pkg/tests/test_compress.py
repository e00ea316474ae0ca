import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multicut.backbone import critical_edges
from multicut.compress import (
    ALLOWANCE,
    BACKBONE,
    ComponentInstance,
    EdgeGroup,
    InvariantLedger,
    absorb_free_edges,
    branch_y_partitions,
    component_graph,
    compositions,
    compression_vertex,
    find_backbone,
    is_vertex_multicut,
    iterative_compression,
    normalize,
    reduce_attachment,
    reduce_xy_degree,
    reduce_y_cherries,
    set_partitions,
    vertex_cover_of,
    xy_degree_ok,
    y_components,
)
from multicut.extract import Cherry, active_set
from multicut.graph import GraphError, Instance
from gadgets import gadget_corpus, star_triangle
from oracles import component_feasible, feasible, multicut, random_instance, vertex_multicut_ok
from shaping import applicable_ops, check_branching, ledger_improves, oracle_callback, pipeline_states


def shaped(n, edges, reqs, k, cutset, **extra):
    ci = normalize(ComponentInstance(Instance.build(n, edges, reqs, k), frozenset(cutset), **extra))
    assert ci is not None
    return ci


def only_comp(ci, atts):
    (comp,) = [c for c in ci.components() if len(c.attachments) == atts]
    return comp


# --- ledger ---------------------------------------------------------------------------------


def test_ledger_order_and_bounds():
    a = InvariantLedger(3, 2, 0, 1)
    b = InvariantLedger(3, 3, 0, 0)
    c = InvariantLedger(2, 2, 0, 0)
    assert b.improves_on(a) and c.improves_on(b)
    assert not a.improves_on(a)
    assert a.within_bounds(3)
    assert not InvariantLedger(3, 3, 4, 0).within_bounds(3)
    assert not InvariantLedger(1, 3, 0, 0, separation_demand=2).within_bounds(1)
    assert InvariantLedger.initial(Instance.build(3, [], [], 2)).key()[0] == -2


def test_ledger_of_component_instance():
    ci = shaped(4, [(1, 3), (3, 2), (1, 4), (4, 2)], [], 3, {1, 2})
    led = ci.ledger()
    # the two middles form separate components of connectivity one each
    assert led.cutset_size == 2 and led.two_attachment_count == 2
    assert led.connectivity_sum == 2 and led.budget == 3
    assert led.within_bounds(3)


# --- iterative compression --------------------------------------------------------------------


def test_compression_empty_requests():
    inst = Instance.build(3, [(1, 2)], [], 1)
    assert iterative_compression(inst, oracle_callback) == frozenset()


def test_compression_path():
    inst = Instance.build(3, [(1, 2), (2, 3)], [(1, 3)], 1)
    Y = iterative_compression(inst, oracle_callback)
    assert Y is not None and len(Y) <= 2
    assert is_vertex_multicut(inst, Y) and vertex_multicut_ok(inst, Y)


def test_compression_star_triangle():
    inst = star_triangle(2)
    Y = iterative_compression(inst, oracle_callback)
    assert Y is not None and len(Y) <= 3 and vertex_multicut_ok(inst, Y)
    # the centre alone is a vertex multicut even though no single edge suffices
    assert iterative_compression(star_triangle(1), oracle_callback) == {1}


def test_cover_prefers_high_degree():
    inst = star_triangle(2)
    assert compression_vertex(inst) == 1
    assert vertex_cover_of(inst.graph, [0, 1]) == {1}


def test_compression_on_random_instances():
    rng = random.Random(61)
    for _ in range(200):
        inst = random_instance(rng, rng.randint(3, 8), rng.randint(2, 12), rng.randint(1, 5), rng.randint(0, 3))
        Y = iterative_compression(inst, oracle_callback)
        if feasible(inst):
            assert Y is not None
            assert len(Y) <= inst.budget + 1
            assert vertex_multicut_ok(inst, Y) and is_vertex_multicut(inst, Y)
        else:
            # the smaller instance may still be solvable; Y is then a valid cutset anyway
            assert Y is None or vertex_multicut_ok(inst, Y)


# --- partitions -------------------------------------------------------------------------------


def test_bell_numbers():
    assert len(set_partitions([1, 2])) == 2
    assert len(set_partitions([1, 2, 3])) == 5
    assert len(set_partitions(range(4))) == 15
    assert set_partitions([]) == [[]]
    parts = set_partitions([1, 2, 3])
    assert len({tuple(map(tuple, p)) for p in parts}) == 5


def test_branch_y_partitions_drops_merged_requests():
    inst = Instance.build(3, [(1, 2), (2, 3)], [(1, 3)], 2)
    branches = branch_y_partitions(inst, {1, 3})
    assert len(branches) == 1
    ci, led = branches[0]
    assert ci.cutset == {1, 3} and led == ci.ledger()
    two = Instance.build(3, [(1, 2), (2, 3)], [(1, 2)], 2)
    assert len(branch_y_partitions(two, {1, 3})) == 2


def test_partition_or_equals_feasibility():
    rng = random.Random(67)
    for _ in range(120):
        inst = random_instance(rng, rng.randint(3, 8), rng.randint(2, 11), rng.randint(1, 4), rng.randint(0, 3))
        Y = iterative_compression(inst, oracle_callback)
        if Y is None:
            assert not feasible(inst)
            continue
        branches = branch_y_partitions(inst, Y)
        assert feasible(inst) == any(component_feasible(ci) for ci, _ in branches)


# --- normalize ------------------------------------------------------------------------------------


def test_normalize_deletes_cutset_edges():
    ci = normalize(ComponentInstance(Instance.build(3, [(1, 2), (2, 3)], [], 2), frozenset({1, 2})))
    assert ci.committed == {0} and ci.budget == 1


def test_normalize_rejects_hopeless_branches():
    inst = Instance.build(2, [(1, 2)] * 3, [], 2)
    assert normalize(ComponentInstance(inst, frozenset({1, 2}))) is None
    chain = Instance.build(3, [(1, 3), (3, 2), (1, 3), (3, 2)], [], 1)
    assert normalize(ComponentInstance(chain, frozenset({1, 2}))) is None


def test_normalize_drops_settled_requests():
    ci = shaped(5, [(1, 3), (3, 2), (1, 4), (2, 5)], [(4, 5), (3, 4)], 2, {1, 2})
    assert ci.instance.requests == {(3, 4)}


def test_y_components_attachments():
    comps = y_components(star_triangle(2).graph, {2, 3, 4})
    assert len(comps) == 1 and comps[0].attachments == {2, 3, 4}


# --- shaping operations -------------------------------------------------------------------------


def three_attachment_ci(k=3):
    # x=1, y=2 joined through 4 and 5; pendant 4-6-3 reaches z=3
    return shaped(6, [(1, 4), (4, 2), (1, 5), (5, 2), (4, 6), (6, 3)], [], k, {1, 2, 3})


def test_reduce_attachment_gadget():
    ci = three_attachment_ci()
    comp = only_comp(ci, 3)
    children = reduce_attachment(ci, comp)
    assert children
    assert not check_branching(ci, children)
    assert ledger_improves(ci, children)
    with pytest.raises(GraphError):
        reduce_attachment(ci, y_components(ci.graph, {1, 2})[0])


def test_reduce_attachment_random_gadgets():
    rng = random.Random(71)
    tried = 0
    for _ in range(1500):
        n = rng.randint(5, 8)
        inst = random_instance(rng, n, rng.randint(n, 12), rng.randint(0, 3), rng.randint(2, 4), connected=True)
        ci = normalize(ComponentInstance(inst, frozenset({1, 2, 3})))
        if ci is None:
            continue
        for comp in ci.components():
            if len(comp.attachments) >= 3:
                children = reduce_attachment(ci, comp)
                tried += 1
                assert not check_branching(ci, children)
                assert ledger_improves(ci, children)
                break
    assert tried > 40


def test_reduce_xy_degree_identity():
    ci = shaped(3, [(1, 3), (3, 2)], [], 2, {1, 2})
    comp = only_comp(ci, 2)
    assert xy_degree_ok(ci, comp)
    assert reduce_xy_degree(ci, comp) == [ci]


def test_reduce_xy_degree_chain():
    # x=1 =2= a=3 - b=4 =2= y=2
    ci = shaped(4, [(1, 3), (1, 3), (3, 4), (4, 2), (4, 2)], [], 3, {1, 2})
    comp = only_comp(ci, 2)
    assert not xy_degree_ok(ci, comp)
    children = reduce_xy_degree(ci, comp)
    assert len(children) >= 2
    assert not check_branching(ci, children)
    assert ledger_improves(ci, children)


def test_find_backbone_single_path():
    ci = shaped(3, [(1, 3), (3, 2)], [], 1, {1, 2})
    comp = only_comp(ci, 2)
    (child,) = find_backbone(ci, comp, 1)
    assert len(child.backbones) == 1
    assert set(child.backbones[0].edges) == {0, 1}
    assert any(g.kind == BACKBONE and g.lo == g.hi == 1 for g in child.groups)


def test_find_backbone_theta():
    # the chord 3-4 keeps both middles in one component
    edges = [(1, 3), (3, 2), (1, 4), (4, 2), (3, 4)]
    ci = shaped(4, edges, [], 3, {1, 2})
    comp = only_comp(ci, 2)
    # connectivity 2 exceeds an allowance of 1: no branch survives
    assert find_backbone(ci, comp, 1) == []
    children = find_backbone(ci, comp, 3)
    assert 1 <= len(children) <= 4
    assert not check_branching(ci, children)
    for child in children:
        for bb in child.backbones:
            h = child.graph
            assert set(bb.edges) <= critical_edges(h, bb.source, bb.target)
    # with room for all four end edges the delete-everything branch appears
    wide = shaped(4, edges, [], 4, {1, 2})
    kids = find_backbone(wide, only_comp(wide, 2), 4)
    assert any(c.committed >= {0, 1, 2, 3} for c in kids)
    assert not check_branching(wide, kids)


def test_find_backbone_not_applicable_when_cap_is_wide():
    # connectivity 1, three end edges, allowance 2: neither rule is exact
    edges = [(1, 3), (3, 4), (4, 2), (1, 5), (5, 3)]
    ci = shaped(5, edges, [], 2, {1, 2})
    assert find_backbone(ci, only_comp(ci, 2), 2) is None


def test_compositions_cover_budget():
    edges = [(1, 3), (3, 2), (1, 4), (4, 5), (5, 6), (6, 2)]
    ci = shaped(6, edges, [], 3, {1, 2})
    kids = compositions(ci)
    caps = {tuple(g.hi for g in c.groups if g.kind == ALLOWANCE) for c in kids}
    assert {tuple(sorted(c)) for c in caps} == {(1, 1), (1, 2)} and len(caps) == 3
    assert not check_branching(ci, kids)
    assert compositions(kids[0]) == [kids[0]]


def test_cherry_single_path():
    # two-attachment path 1-3-2 plus cherry 1-4 whose terminal 4 requests 3
    ci = shaped(4, [(1, 3), (3, 2), (1, 4)], [(3, 4)], 2, {1, 2})
    act = active_set(ci.graph, Cherry(1, frozenset({1, 4})), {4}, ci.budget)
    expected = sum(math.comb(len(act.edges), s) for s in range(min(ci.budget, len(act.edges)) + 1))
    children = reduce_y_cherries(ci, reduce_terminals=False)
    assert len(children) == expected == 2
    assert not check_branching(ci, children)
    for child in children:
        assert not any(len(c.attachments) == 1 for c in child.components())


def test_cherry_identity_and_unsafe_attachment():
    ci = shaped(3, [(1, 3), (3, 2)], [], 1, {1, 2})
    assert reduce_y_cherries(ci) == [ci]
    # two cherries on vertex 1 with a request between them: promote an endpoint
    ci = shaped(5, [(1, 3), (3, 2), (1, 4), (1, 5)], [(4, 5)], 2, {1, 2})
    children = reduce_y_cherries(ci)
    assert all(len(c.cutset) == 3 for c in children)
    assert not check_branching(ci, children)


def test_absorb_when_allowance_used_up():
    edges = [(1, 3), (3, 2), (1, 4), (4, 2), (3, 4)]
    ci = shaped(4, edges, [], 2, {1, 2})
    bb_group = EdgeGroup(frozenset({0, 1}), 1, 1, BACKBONE)
    cap = EdgeGroup(frozenset(range(5)), 0, 1, ALLOWANCE)
    tight = ComponentInstance(ci.instance, ci.cutset, groups=(cap, bb_group))
    out = absorb_free_edges(tight)
    assert out is None or not (set(out.graph.edges) - {0, 1})
    assert component_feasible(tight) == (out is not None and component_feasible(out))
    assert absorb_free_edges(ci) is ci


def test_component_graph_includes_attachments():
    ci = three_attachment_ci()
    comp = only_comp(ci, 3)
    h = component_graph(ci.graph, comp)
    assert h.vertices == {1, 2, 3, 4, 6} and h.m == 4


# --- ops along the pipeline ------------------------------------------------------------------


@pytest.mark.parametrize("name,inst", gadget_corpus()[::3], ids=lambda v: v if isinstance(v, str) else "")
def test_ops_on_gadget_states(name, inst):
    for ci in pipeline_states(inst, limit=25):
        for op, children, restricted in applicable_ops(ci):
            assert not check_branching(ci, children, restricted), op
            assert ledger_improves(ci, children), op


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_ops_on_random_states(seed):
    rng = random.Random(seed)
    inst = random_instance(rng, rng.randint(4, 8), rng.randint(4, 12), rng.randint(1, 4), rng.randint(1, 3))
    for ci in pipeline_states(inst, limit=15):
        for op, children, restricted in applicable_ops(ci):
            assert not check_branching(ci, children, restricted), op
            assert ledger_improves(ci, children), op


def test_oracle_sanity():
    assert multicut(star_triangle(2)) is not None
    assert multicut(star_triangle(1)) is None
