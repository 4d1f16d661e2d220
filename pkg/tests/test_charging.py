from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ods.adversaries import delta_adversary, tree_adversary
from ods.algorithms import STOCK, AlgorithmSpec, run_algorithm
from ods.charging import (ModelViolation, at_most_three_sqrt, audit_bounded_degree, audit_even,
                          charge_one_structure, classify_heavy_light, concentration, conserved, heavy_ratio_ok,
                          spread_bounded_degree, spread_even)
from ods.graph import path_graph, star_graph
from ods.harness import random_bounded, random_cactus, random_connected_order, random_tree
from ods.opt import brute_force_opt, normalize_opt_no_leaves, tree_opt
from ods.revelation import OnlineInstance, replay

from conftest import instances, random_feasible_decider

TWO = AlgorithmSpec.k_dominate(2)


def _p2():
    return run_algorithm(OnlineInstance(path_graph(2), (0, 1)), TWO)


def test_even_examples():
    cm = spread_even(_p2())
    assert cm.charge == {0: Fraction(1, 2), 1: Fraction(1, 2)} and cm.total == 1
    star = run_algorithm(OnlineInstance(star_graph(4), (0, 1, 2, 3, 4)), TWO)
    assert spread_even(star).charge == {v: Fraction(1, 5) for v in range(5)}
    out = tree_adversary(TWO, 4)
    assert spread_even(out.trace).total == 8 == out.alg_size


def test_concentration_examples():
    trace = _p2()
    cm = spread_even(trace)
    assert concentration(cm, trace.instance.graph, {1}) == 1
    with pytest.raises(ValueError):
        concentration(cm, path_graph(3), {0})


def test_charge_one_examples():
    assert charge_one_structure(spread_even(_p2()), _p2())["charge_one"] == []
    out = tree_adversary(TWO, 4)
    report = charge_one_structure(spread_even(out.trace), out.trace)
    assert report["charge_one"] and report["ok"]


def test_empty_x_is_a_model_violation():
    # selecting an already dominated leaf contributes nothing new
    trace = replay(OnlineInstance(star_graph(2), (0, 1, 2)), [True, True, False])
    with pytest.raises(ModelViolation):
        spread_even(trace)


def test_heavy_light_examples():
    star = run_algorithm(OnlineInstance(star_graph(9), tuple(range(10))), AlgorithmSpec.sqrt_dominate(9))
    part = classify_heavy_light(star, 9)
    assert part.heavy == {0} and not part.light
    part = classify_heavy_light(_p2(), 4)
    assert part.light == {1} and not part.heavy
    for seed in range(20):
        alg = AlgorithmSpec.sqrt_dominate(16) if seed == 0 else random_feasible_decider(seed)
        out = delta_adversary(alg, 16)
        part = classify_heavy_light(out.trace, 16)
        assert part.heavy_bound_ok and len(part.heavy) <= out.instance.n // 4


def test_bounded_degree_example():
    trace = _p2()
    audit = spread_bounded_degree(trace, {1}, classify_heavy_light(trace, 4))
    assert audit.charges.charge == {1: 1} and audit.charges.total == 1


def test_exact_sqrt_comparisons():
    assert at_most_three_sqrt(Fraction(6), 4) and not at_most_three_sqrt(Fraction(61, 10), 4)
    assert at_most_three_sqrt(Fraction(9), 9)
    # sqrt(4) + 1/sqrt(4) = 5/2
    assert heavy_ratio_ok(5, 2, 4) and not heavy_ratio_ok(6, 2, 4)


@settings(max_examples=200, deadline=None)
@given(instances(), st.sampled_from(STOCK[:2]))
def test_even_conservation(inst, spec):
    trace = run_algorithm(inst, spec)
    cm = spread_even(trace)
    assert conserved(cm, trace)
    assert set(cm.charge) == set().union(*(set(inst.graph.closed(v)) for v in trace.selected))


def test_tree_concentration_and_structure_on_500_trees():
    for seed in range(500):
        g = random_tree(3 + seed % 18, seed)
        inst = OnlineInstance(g, tuple(random_connected_order(g, seed, ("bfs", "dfs", "random-connected")[seed % 3])))
        trace = run_algorithm(inst, TWO)
        opt = normalize_opt_no_leaves(g, tree_opt(g))
        cm = spread_even(trace)
        assert conserved(cm, trace)
        assert concentration(cm, g, opt) <= 2, seed
        assert charge_one_structure(cm, trace)["ok"], seed


def test_cactus_concentration():
    for seed in range(300):
        g = random_cactus(3 + seed % 18, seed)
        inst = OnlineInstance(g, tuple(random_connected_order(g, seed, "random-connected")))
        trace = run_algorithm(inst, TWO)
        report = audit_even(trace, brute_force_opt(g))
        assert report["conserved"]
        assert Fraction(report["concentration"]) <= Fraction(5, 2), seed


@pytest.mark.parametrize("delta", [4, 9, 16])
def test_bounded_degree_audit(delta):
    for seed in range(120):
        g = random_bounded(3 + seed % 18, delta, seed)
        inst = OnlineInstance(g, tuple(random_connected_order(g, seed, "dfs")))
        trace = run_algorithm(inst, AlgorithmSpec.sqrt_dominate(delta))
        opt = brute_force_opt(g)
        report = audit_bounded_degree(trace, opt, delta)
        assert report["conserved"] and report["violations"] == [], (seed, report)
        audit = spread_bounded_degree(trace, opt, classify_heavy_light(trace, delta))
        assert audit.charges.total == len(trace.selected)
        assert all(at_most_three_sqrt(c, delta) for c in audit.charges.charge.values())


def test_bounded_audit_reports_light_vertex_without_save():
    # on P5 revealed left to right, taking 0 then 1 makes 1 light (one undominated
    # neighbour) while it saves nothing, which rule 3 cannot route
    inst = OnlineInstance(path_graph(5), (0, 1, 2, 3, 4))
    trace = replay(inst, [True, True, False, True, False])
    assert brute_force_opt(inst.graph) == {0, 3}
    report = audit_bounded_degree(trace, {0, 3}, 4)
    assert any(v["kind"] == "light-without-save" for v in report["violations"])
