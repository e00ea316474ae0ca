import random

import pytest

from multicut.graph import Instance
from multicut.solver import (
    ALL_PASSES,
    OracleLimitError,
    SolveConfig,
    Verdict,
    brute_force,
    brute_force_vertex,
    drop_separated,
    solve,
    verify_multicut,
)
from gadgets import gadget_corpus, path3, star_triangle
from oracles import edge_list, feasible, multicut, random_instance, separates, vertex_multicut_ok


def bfs_cuts(inst, F):
    return separates(inst.graph.vertices, edge_list(inst.graph), set(F), inst.requests,
                     inst.half_requests) and not set(F) & inst.undeletable


# --- verify_multicut -------------------------------------------------------------------------


def test_verify_examples():
    split = Instance.build(4, [(1, 2), (3, 4)], [(1, 3)], 0)
    assert verify_multicut(split, set())
    path = path3(1)
    assert verify_multicut(path, {0})
    assert not verify_multicut(path, set())
    assert not verify_multicut(path, {7})


def test_verify_half_requests_and_undeletable():
    inst = Instance.build(3, [(1, 2), (2, 3)], [], 2, [(1, 2, 3)])
    assert not verify_multicut(inst, set())
    assert verify_multicut(inst, {0}) and verify_multicut(inst, {1})
    locked = Instance.build(3, [(1, 2), (2, 3)], [(1, 3)], 1, undeletable=[0])
    assert not verify_multicut(locked, {0})
    assert verify_multicut(locked, {1})


def test_verify_matches_path_search():
    rng = random.Random(81)
    for _ in range(400):
        inst = random_instance(rng, rng.randint(2, 8), rng.randint(0, 12), rng.randint(0, 4), 2)
        F = {e for e in inst.graph.edges if rng.random() < 0.4}
        assert verify_multicut(inst, F) == bfs_cuts(inst, F)


# --- brute force --------------------------------------------------------------------------------


def test_brute_force_examples():
    found = brute_force(star_triangle(2))
    assert found is not None and len(found) == 2 and verify_multicut(star_triangle(2), found)
    assert brute_force(star_triangle(1)) is None
    assert brute_force(Instance.build(3, [(1, 2), (2, 3)], [(1, 3)], 0)) is None
    assert brute_force(Instance.build(4, [(1, 2), (3, 4)], [(1, 3)], 0)) == frozenset()


def test_brute_force_threshold():
    inst = star_triangle(2)
    with pytest.raises(OracleLimitError):
        brute_force(inst, threshold=2)
    assert brute_force(inst, threshold=3) is not None


def test_brute_force_is_minimum():
    rng = random.Random(83)
    for _ in range(200):
        inst = random_instance(rng, rng.randint(2, 7), rng.randint(0, 10), rng.randint(1, 4), rng.randint(0, 4))
        found = brute_force(inst)
        ref = multicut(inst)
        assert (found is None) == (ref is None)
        if found is not None:
            assert len(found) == len(ref) and verify_multicut(inst, found)


def test_brute_force_vertex():
    assert brute_force_vertex(star_triangle(2), 1) == {1}
    inst = path3(1)
    Y = brute_force_vertex(inst, 1)
    assert Y is not None and vertex_multicut_ok(inst, Y)


# --- solve -------------------------------------------------------------------------------------------


def test_trivial_solves():
    res = solve(Instance.build(2, [(1, 2)], [], 0))
    assert res.verdict is Verdict.FEASIBLE and res.certificate == frozenset()
    assert solve(Instance.build(2, [(1, 2)], [(1, 2)], 0)).verdict is Verdict.INFEASIBLE
    assert drop_separated(Instance.build(4, [(1, 2)], [(1, 3)], 0)).requests == frozenset()


def checked(inst, cfg):
    res = solve(inst, cfg)
    assert res.verdict is not Verdict.RESOURCE
    assert res.feasible == feasible(inst), inst
    if res.feasible:
        assert verify_multicut(inst, res.certificate) and len(res.certificate) <= inst.budget
    return res


@pytest.mark.parametrize("name,inst", gadget_corpus(), ids=lambda v: v if isinstance(v, str) else "")
def test_solve_gadgets_through_pipeline(name, inst):
    checked(inst, SolveConfig(oracle_threshold=1))


def test_solve_random_through_pipeline():
    rng = random.Random(85)
    cfg = SolveConfig(oracle_threshold=1)
    for _ in range(150):
        inst = random_instance(rng, rng.randint(3, 9), rng.randint(2, 15), rng.randint(1, 5), rng.randint(0, 4))
        checked(inst, cfg)


@pytest.mark.parametrize("off", sorted(ALL_PASSES))
def test_pass_toggles_keep_verdicts(off):
    rng = random.Random(87)
    cfg = SolveConfig(oracle_threshold=1, passes=ALL_PASSES - {off})
    for _ in range(25):
        inst = random_instance(rng, rng.randint(3, 8), rng.randint(3, 12), rng.randint(1, 4), rng.randint(1, 3))
        checked(inst, cfg)


def test_sunflower_extraction_config():
    rng = random.Random(89)
    cfg = SolveConfig(oracle_threshold=1, extraction="sunflower", degree_trigger=1)
    for _ in range(40):
        inst = random_instance(rng, rng.randint(4, 8), rng.randint(4, 12), rng.randint(2, 5), rng.randint(1, 2))
        checked(inst, cfg)


def test_determinism():
    rng = random.Random(91)
    for _ in range(30):
        inst = random_instance(rng, 8, 13, 4, 3)
        cfg = SolveConfig(oracle_threshold=1, seed=5)
        a, b = solve(inst, cfg), solve(inst, cfg)
        assert a.verdict == b.verdict and a.certificate == b.certificate


def test_shuffled_order_keeps_verdict():
    rng = random.Random(93)
    for _ in range(30):
        inst = random_instance(rng, 7, 11, 4, 2)
        base = solve(inst, SolveConfig(oracle_threshold=1))
        for seed in (1, 2):
            res = checked(inst, SolveConfig(oracle_threshold=1, seed=seed, deterministic=False))
            assert res.verdict == base.verdict


def test_monotone_in_budget():
    rng = random.Random(95)
    for _ in range(40):
        inst = random_instance(rng, 7, 11, 4, rng.randint(0, 3))
        if solve(inst, SolveConfig(oracle_threshold=1)).feasible:
            bigger = inst.replace(budget=inst.budget + 1)
            assert solve(bigger, SolveConfig(oracle_threshold=1)).feasible


def test_resource_verdict_is_never_wrong():
    rng = random.Random(97)
    saw_resource = False
    for _ in range(40):
        inst = random_instance(rng, 9, 16, 5, 3)
        res = solve(inst, SolveConfig(oracle_threshold=1, branch_limit=1, fallback_limit=1))
        if res.verdict is Verdict.RESOURCE:
            saw_resource = True
            assert res.certificate is None and "reason" in res.stats
        else:
            assert res.feasible == feasible(inst)
    assert saw_resource


def test_workers_agree_with_sequential():
    rng = random.Random(99)
    insts = [random_instance(rng, 8, 13, 4, 3) for _ in range(6)]
    for inst in insts:
        seq = solve(inst, SolveConfig(oracle_threshold=1))
        par = checked(inst, SolveConfig(oracle_threshold=1, workers=2))
        assert par.verdict == seq.verdict


def test_threshold_from_environment(monkeypatch):
    monkeypatch.setenv("MULTICUT_ORACLE_THRESHOLD", "3")
    assert SolveConfig().oracle_threshold == 3
    monkeypatch.delenv("MULTICUT_ORACLE_THRESHOLD")
    assert SolveConfig().oracle_threshold == 8


def test_config_validation():
    for bad in ({"oracle_threshold": 0}, {"workers": 0}, {"extraction": "magic"}, {"passes": {"nope"}},
                {"degree_trigger": 0}):
        with pytest.raises(ValueError):
            SolveConfig(**bad)
