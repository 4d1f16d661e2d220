import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ods.adversaries import tree_adversary
from ods.algorithms import AlgorithmSpec, k_dominate_decide, run_algorithm, sqrt_ceil
from ods.graph import Graph, is_independent, path_graph, star_graph
from ods.harness import random_cactus, random_connected_order
from ods.revelation import Game, OnlineInstance, play

from conftest import instances, trees

GREEDY = AlgorithmSpec.greedy()
TWO = AlgorithmSpec.k_dominate(2)
ALL = AlgorithmSpec.accept_all()


def _views(inst, spec):
    seen = []
    decide = spec.decider()

    def spy(view):
        d = decide(view)
        seen.append((view, d))
        return d

    play(inst, spy)
    return seen


def test_greedy_examples():
    steps = _views(OnlineInstance(path_graph(3), (0, 1, 2)), GREEDY)
    assert steps[0][1] is True and steps[1][1] is False
    star = run_algorithm(OnlineInstance(star_graph(4), (0, 1, 2, 3, 4)), GREEDY)
    assert star.decisions == (True, False, False, False, False)
    assert len(star.selected) == 1


def test_k_dominate_examples():
    steps = _views(OnlineInstance(path_graph(2), (0, 1)), TWO)
    assert [d for _, d in steps] == [False, True]
    assert run_algorithm(OnlineInstance(path_graph(2), (0, 1)), TWO).selected == {1}
    assert _views(OnlineInstance(star_graph(3), (0, 1, 2, 3)), TWO)[0][1] is True


def test_k_dominate_counts_open_neighbourhood():
    # v itself is undominated but must not count towards k
    game = Game()
    view = game.reveal(0, {1})
    assert len(view.undominated_neighbors) == 1
    assert not k_dominate_decide(view, 2)


def test_chain_vertex_with_two_children_is_taken():
    out = tree_adversary(TWO, 4)
    rec = out.trace.record(2)  # first child of v_1 revealed with two fresh children
    assert len(rec.neighbors) == 3 and rec.selected


def test_accept_all_and_scripted():
    inst = OnlineInstance(path_graph(4), (0, 1, 2, 3))
    assert run_algorithm(inst, ALL).selected == {0, 1, 2, 3}
    assert run_algorithm(inst, AlgorithmSpec.scripted([0, 1, 1, 0])).selected == {1, 2}
    with pytest.raises(ValueError, match="length"):
        run_algorithm(inst, AlgorithmSpec.scripted([True]))


def test_spec_validation():
    with pytest.raises(ValueError):
        AlgorithmSpec("magic")
    with pytest.raises(ValueError):
        AlgorithmSpec.k_dominate(0)
    with pytest.raises(ValueError):
        AlgorithmSpec.parse("k-dominate")
    assert AlgorithmSpec.parse("k-dominate", 3).label == "3-dominate"
    assert AlgorithmSpec.parse("accept-all") == ALL
    assert AlgorithmSpec.sqrt_dominate(10).k == 4


def test_sqrt_ceil():
    assert [sqrt_ceil(d) for d in (1, 2, 4, 5, 9, 10, 16, 17)] == [1, 2, 2, 3, 3, 4, 4, 5]


@settings(max_examples=200, deadline=None)
@given(instances())
def test_greedy_is_feasible_and_independent(inst):
    trace = run_algorithm(inst, GREEDY)
    assert trace.feasible
    assert is_independent(inst.graph, trace.selected)


@settings(max_examples=200, deadline=None)
@given(instances(), st.integers(1, 4))
def test_k_dominate_is_feasible(inst, k):
    trace = run_algorithm(inst, AlgorithmSpec.k_dominate(k))
    assert trace.feasible
    for r in trace.records:
        if r.saves:
            assert r.selected


@settings(max_examples=200, deadline=None)
@given(instances(trees(max_n=18)))
def test_degree_three_tree_vertices_are_taken(inst):
    trace = run_algorithm(inst, TWO)
    for r in trace.records:
        if inst.graph.degree(r.vertex) >= 3:
            assert r.selected


def test_degree_four_cactus_vertices_are_taken():
    for seed in range(400):
        g = random_cactus(4 + seed % 17, seed)
        inst = OnlineInstance(g, tuple(random_connected_order(g, seed, "random-connected")))
        trace = run_algorithm(inst, TWO)
        for r in trace.records:
            if g.degree(r.vertex) >= 4:
                assert r.selected, seed


def test_single_vertex_is_selected_by_every_stock_algorithm():
    inst = OnlineInstance(Graph(1), (0,))
    for spec in (GREEDY, TWO, ALL):
        assert run_algorithm(inst, spec).selected == {0}
