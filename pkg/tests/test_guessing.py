import math

import pytest
from hypothesis import given, settings, strategies as st

from dynsubmod.data import erdos_renyi_graph, random_insert_delete_sequence
from dynsubmod.errors import ConfigError, UpdateError
from dynsubmod.guessing import GuessGrid, element_window, run_seed
from dynsubmod.oracle import ModularObjective
from dynsubmod.verify import brute_force_opt


def window_by_scan(fv, eps, k, span=1000):
    """Independent oracle: test every index against the two inequalities."""
    b = 1 + eps
    return [i for i in range(-span, span) if (eps / k) * b ** i <= fv * (1 + 1e-12) and fv <= b ** i * (1 + 1e-12)]


def test_window_example():
    assert list(element_window(10.0, 1.0, 4)) == [4, 5]


def test_window_boundaries_inclusive():
    assert 3 in element_window(8.0, 1.0, 4)          # fv = 2^3
    assert list(element_window(8.0, 1.0, 4)) == [3, 4, 5]   # 4*8/1 = 2^5
    assert 7 in element_window(1.1 ** 7, 0.1, 3)


def test_window_empty_for_zero():
    assert len(element_window(0.0, 0.5, 4)) == 0


@given(fv=st.floats(1e-3, 1e6), eps=st.floats(0.05, 1.0), k=st.integers(1, 50))
def test_window_matches_scan_and_width(fv, eps, k):
    w = list(element_window(fv, eps, k))
    assert w == window_by_scan(fv, eps, k)
    assert len(w) <= math.floor(math.log(k / eps) / math.log1p(eps)) + 2


def test_config_errors():
    f = ModularObjective([1.0])
    with pytest.raises(ConfigError):
        GuessGrid(f, 0, 0.5, "uniform")
    with pytest.raises(ConfigError):
        GuessGrid(f, 2, 0.0, "uniform")


def test_single_element():
    grid = GuessGrid(ModularObjective([3.0]), 2, 1.0, "local-search")
    assert grid.insert(0) == {0}
    assert set(grid.runs) == set(element_window(3.0, 1.0, 2))
    assert grid.last_fanout == len(grid.runs)
    assert grid.delete(0) == frozenset()
    assert grid.runs == {}


def test_disjoint_windows():
    grid = GuessGrid(ModularObjective([1.0, 8.0]), 1, 1.0, "uniform")
    grid.insert(0)
    grid.insert(1)
    assert set(grid.runs) == {0, 3}
    assert grid.runs[0].alive == {0} and grid.runs[3].alive == {1}
    assert grid.answer == {1} and grid.answer_value == 8.0


def test_rejects_inconsistent_events():
    grid = GuessGrid(ModularObjective([1.0, 2.0]), 1, 0.5, "uniform")
    grid.insert(0)
    with pytest.raises(UpdateError):
        grid.insert(0)
    with pytest.raises(UpdateError):
        grid.delete(1)


def test_total_queries_accounting():
    g = erdos_renyi_graph(20, 0.3, seed=2)
    grid = GuessGrid(g, 3, 0.5, "local-search", seed=1)
    assert grid.total_queries() == 0
    grid.insert(4)
    per_run = sum(r.oracle.set_queries for r in grid.runs.values())
    assert grid.total_queries() == 1 + per_run
    last = grid.total_queries()
    for ev in random_insert_delete_sequence(20, 60, seed=2):
        if ev.element == 4:
            continue
        if ev.op == "insert" and ev.element in grid.elements:
            continue
        if ev.op == "delete" and ev.element not in grid.elements:
            continue
        grid.apply_update(ev.op, ev.element)
        now = grid.total_queries()
        assert now >= last
        last = now


def test_fanout_equals_window():
    g = erdos_renyi_graph(25, 0.2, seed=4)
    grid = GuessGrid(g, 4, 0.3, "uniform", seed=0)
    for ev in random_insert_delete_sequence(25, 70, seed=4):
        grid.apply_update(ev.op, ev.element)
        rec_width = len(element_window(g.evaluate({ev.element}), 0.3, 4))
        assert grid.last_fanout == rec_width
        # runs exist exactly for indices covered by some alive element
        covered = set()
        for rec in grid.elements.values():
            covered.update(rec.window)
        assert set(grid.runs) == covered


def test_run_seeds_are_distinct_and_stable():
    seeds = [run_seed(7, i) for i in range(-20, 20)]
    assert len(set(seeds)) == len(seeds)
    assert seeds == [run_seed(7, i) for i in range(-20, 20)]


@settings(max_examples=15, deadline=None)
@given(n=st.integers(3, 12), k=st.integers(1, 4), seed=st.integers(0, 2**16))
def test_bracketing(n, k, seed):
    eps = 0.2
    g = erdos_renyi_graph(n, 0.4, seed=seed)
    grid = GuessGrid(g, k, eps, "uniform", seed=seed)
    for ev in random_insert_delete_sequence(n, 2 * n, seed=seed):
        grid.apply_update(ev.op, ev.element)
        opt = brute_force_opt(g, grid.alive, k).opt_value
        if opt > 0:
            assert any(opt * (1 - 1e-9) <= G <= (1 + eps) * opt * (1 + 1e-9)
                       for G in grid.active_guesses().values())


def test_window_misses_bracket_when_eps_large():
    # eps'(1+eps') > 1: with k=1 the window of fv=3 is empty, so a lone element
    # with value 3 leaves no run whose guess lies in [3, 6].
    assert len(element_window(3.0, 1.0, 1)) == 0
    grid = GuessGrid(ModularObjective([3.0]), 1, 1.0, "uniform")
    grid.insert(0)
    assert grid.active_guesses() == {}
    # inside the regime eps'(1+eps') <= 1 the bracketing index is always admitted
    for eps in (0.1, 0.5, 0.6):
        i = math.ceil(math.log(3.0) / math.log1p(eps) - 1e-9)
        assert i in element_window(3.0, eps, 1)
