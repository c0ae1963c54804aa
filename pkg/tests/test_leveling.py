import random

import pytest
from hypothesis import given, settings, strategies as st

from dynsubmod.data import erdos_renyi_graph, random_insert_delete_sequence
from dynsubmod.errors import ConfigError, PreconditionError
from dynsubmod.leveling import LevelingInstance, ThresholdParams
from dynsubmod.oracle import CountingOracle, CoverageObjective, ModularObjective
from dynsubmod.verify import audit_chain, audit_lemma2, audit_property1


def make(obj, k, tau, seed=0):
    o = CountingOracle(obj)
    return LevelingInstance(ThresholdParams(k, tau), o, seed=seed), o


def test_init_is_empty():
    inst, o = make(ModularObjective([1.0] * 4), k=3, tau=1.0, seed=7)
    assert inst.T == 0
    assert inst.alive == set()
    assert inst.extract() == frozenset()
    assert o.set_queries == 0


@pytest.mark.parametrize("k, tau", [(0, 1.0), (2, 0.0), (2, -1.0)])
def test_bad_params(k, tau):
    with pytest.raises(ConfigError):
        ThresholdParams(k, tau)


def test_promote_size_guard_costs_nothing():
    inst, o = make(ModularObjective([5.0] * 4), k=2, tau=1.0)
    assert inst.promote(frozenset({0, 1}), 2) is False
    assert o.set_queries == 0


def test_promote_boundary_is_inclusive():
    inst, o = make(ModularObjective([1.5, 2.0]), k=1, tau=1.5)
    assert inst.promote(frozenset(), 0) is True
    assert o.set_queries == 2


def test_promote_triangle_gain_below_tau(triangle):
    inst, _ = make(triangle, k=3, tau=3.0)
    assert not any(inst.promote(frozenset(), v) for v in range(3))


def test_promote_rejects_member():
    inst, _ = make(ModularObjective([1.0, 1.0]), k=2, tau=0.5)
    with pytest.raises(PreconditionError):
        inst.promote(frozenset({0}), 0)


def test_construct_level_empty_pool():
    inst, o = make(ModularObjective([1.0] * 3), k=3, tau=1.0)
    inst.construct_level(1)
    assert inst.T == 0 and o.set_queries == 0


def test_construct_level_out_of_range():
    inst, _ = make(ModularObjective([1.0] * 3), k=3, tau=1.0)
    with pytest.raises(PreconditionError):
        inst.construct_level(2)


def test_construct_level_single_promoting_element():
    inst, _ = make(ModularObjective([2.0, 0.1]), k=2, tau=1.0)
    inst._set_level(0, 1)
    inst.construct_level(1)
    assert inst.chosen == [0] and inst.T == 1


def test_construct_level_no_promotions():
    # hand-placed pool whose members all miss the threshold against I_0
    inst, _ = make(ModularObjective([0.2, 0.3, 0.1]), k=2, tau=1.0)
    for v in range(3):
        inst._set_level(v, 1)
    inst.construct_level(1)
    assert inst.T == 0
    # empty binary-search range: nobody is added above the rebuilt level
    assert all(inst.level[v] <= 1 for v in range(3))


def test_first_insert_with_large_gain_is_taken():
    inst, _ = make(ModularObjective([3.0, 1.0]), k=2, tau=2.0)
    inst.insert(0)
    assert inst.extract() == {0}


def test_insert_below_threshold_stays_in_ground_pool():
    inst, _ = make(ModularObjective([0.5]), k=2, tau=1.0)
    inst.insert(0)
    assert inst.extract() == frozenset()
    assert inst.level[0] == 0


def test_insert_into_full_instance_stops_at_size_guard():
    inst, o = make(ModularObjective([5.0] * 6), k=2, tau=1.0)
    for v in range(4):
        inst.insert(v)
    assert inst.T == 2
    before = inst.extract()
    q0 = o.set_queries
    inst.insert(5)
    # I_0 and I_1 promote (2 queries each); |I_2| = k blocks level 3 for free
    assert inst.level[5] <= 2
    assert len(inst.extract()) == 2
    assert o.set_queries - q0 >= 2
    assert inst.extract() <= before | {5}


def test_duplicate_insert_and_absent_delete_are_noops():
    inst, o = make(ModularObjective([3.0, 1.0]), k=2, tau=2.0)
    inst.insert(0)
    snap = (inst.extract(), dict(inst.level), o.set_queries)
    assert inst.insert(0) is False
    assert inst.delete(1) is False
    assert (inst.extract(), dict(inst.level), o.set_queries) == snap
    assert inst.noop_updates == 2


def test_delete_ground_only_element_is_free():
    inst, o = make(ModularObjective([3.0, 0.5]), k=2, tau=2.0)
    inst.insert(0)
    inst.insert(1)
    q0 = o.set_queries
    inst.delete(1)
    assert o.set_queries == q0
    assert inst.extract() == {0}


def test_delete_sole_solution_element():
    inst, _ = make(ModularObjective([3.0]), k=1, tau=2.0)
    inst.insert(0)
    inst.delete(0)
    assert inst.extract() == frozenset()
    assert inst.alive == set()


def test_delete_pool_element_keeps_solution():
    # k=1: both elements qualify, only one is chosen; the other sits in R_1
    inst, _ = make(ModularObjective([3.0, 3.0]), k=1, tau=2.0)
    inst.insert(0)
    inst.insert(1)
    S = inst.extract()
    other = ({0, 1} - S).pop()
    inst.delete(other)
    assert inst.extract() == S


def test_dump_format():
    inst, _ = make(ModularObjective([3.0, 3.0]), k=2, tau=1.0)
    inst.insert(0)
    inst.insert(1)
    lines = inst.dump().splitlines()
    assert lines[0] == "0 - 2"
    assert len(lines) == 1 + inst.T


def _replay(obj, k, tau, events, seed):
    inst, o = make(obj, k, tau, seed)
    trace = []
    for ev in events:
        (inst.insert if ev.op == "insert" else inst.delete)(ev.element)
        trace.append((inst.extract(), o.set_queries))
    return trace


def test_determinism():
    g = erdos_renyi_graph(30, 0.2, seed=3)
    ev = random_insert_delete_sequence(30, 80, seed=3)
    assert _replay(g, 4, 1.5, ev, seed=11) == _replay(g, 4, 1.5, ev, seed=11)


def _objective(kind, n, seed):
    if kind == "maxcut":
        return erdos_renyi_graph(n, 0.3, seed=seed)
    rng = random.Random(seed)
    return CoverageObjective([{rng.randrange(3 * n) for _ in range(rng.randint(1, 5))} for _ in range(n)])


@settings(max_examples=40, deadline=None)
@given(kind=st.sampled_from(["maxcut", "coverage"]), n=st.integers(2, 30), k=st.integers(1, 6),
       tau=st.floats(0.3, 5.0), seed=st.integers(0, 2**16))
def test_stream_invariants(kind, n, k, tau, seed):
    obj = _objective(kind, n, seed)
    inst, o = make(obj, k, tau, seed)
    shadow = o.shadow()
    rng = random.Random(seed)
    for ev in random_insert_delete_sequence(n, 3 * n, seed=seed):
        before, q0 = inst.extract(), o.set_queries
        (inst.insert if ev.op == "insert" else inst.delete)(ev.element)
        dq = o.set_queries - q0
        changed = len(inst.extract() ^ before)
        # Property 2
        assert changed <= dq if dq else changed == 0
        assert audit_chain(inst)
        assert audit_property1(inst, shadow)
        if len(inst.extract()) < k:
            assert audit_lemma2(inst, shadow, trials=20, rng=rng)
        assert len(inst.extract()) <= k
        assert inst.extract() <= inst.alive


def test_shadow_queries_do_not_perturb_counter():
    g = erdos_renyi_graph(15, 0.3, seed=0)
    inst, o = make(g, 3, 1.0)
    for v in range(15):
        inst.insert(v)
    q = o.set_queries
    shadow = o.shadow()
    audit_property1(inst, shadow)
    audit_lemma2(inst, shadow, trials=10)
    assert o.set_queries == q
