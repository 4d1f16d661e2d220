import itertools
import math
from fractions import Fraction

import pytest

from ods.adversaries import (ADVERSARIES, cactus_adversary, cactus_regions, claw_adversary, delta_adversary,
                             planar_bipartite_adversary, sp_adversary, threshold_adversary, threshold_build,
                             tree_adversary)
from ods.algorithms import STOCK, AlgorithmSpec, run_algorithm
from ods.graph import complete_graph, max_degree
from ods.opt import brute_force_opt, domination_number, tree_opt
from ods.recognize import (euler_planar_bipartite_bound, is_bipartite, is_cactus, is_k1t_free, is_threshold,
                           is_tree, treewidth_at_most_2)
from ods.revelation import validate_order

from conftest import naive_dominates, random_decider, random_feasible_decider

GREEDY, TWO, ALL = STOCK

# small parameters for exhaustive OPT checks; gamma() raises the opt cap since
# cactus traps and the planar bipartite extension can pass the default
SMALL = {"tree": 4, "cactus": 2, "delta": 4, "claw": 4, "threshold": 3, "planar-bipartite": 2, "sp": 2}


def gamma(g, cap=64):
    return len(tree_opt(g)) if is_tree(g) else domination_number(g, cap)


def check_outcome(out):
    """Invariants every adversary outcome must satisfy."""
    g = out.instance.graph
    assert naive_dominates(g.n, g.edges, out.opt_witness)
    assert out.class_ok()
    assert validate_order(g, out.instance.order) is None
    if out.feasible:
        assert out.bound_holds()
    # the materialised instance replays to the same trace
    again = run_algorithm(out.instance, AlgorithmSpec.scripted(out.trace.decisions))
    assert again.to_dict() == out.trace.to_dict()


# -- worked examples ---------------------------------------------------------------

@pytest.mark.parametrize("alg, alg_size", [(GREEDY, 9), (TWO, 8), (ALL, 16)])
def test_tree_examples(alg, alg_size):
    out = tree_adversary(alg, 4)
    check_outcome(out)
    assert out.alg_size == alg_size and len(out.opt_witness) == 5
    assert is_tree(out.instance.graph)
    # v_1 is always in the witness, which may overcount by one
    assert len(out.opt_witness) - 1 <= len(brute_force_opt(out.instance.graph)) <= 5


def test_tree_greedy_ratio():
    assert tree_adversary(GREEDY, 4).ratio == Fraction(9, 5)
    assert tree_adversary(TWO, 4).ratio == Fraction(8, 5)


def test_cactus_examples():
    out = cactus_adversary(GREEDY, 1)
    check_outcome(out)
    (region,) = cactus_regions(out)
    # GREEDY takes the child, rejects c, and the three leaves of c are forced
    assert region["kind"] == "root-rejected" and region["alg"] == 3 and len(region["opt"]) == 1
    for alg in STOCK:
        out = cactus_adversary(alg, 1)
        check_outcome(out)
        assert is_cactus(out.instance.graph)
        for r in cactus_regions(out):
            if not r["closing"]:
                assert Fraction(r["alg"], len(r["opt"])) >= Fraction(5, 2)


def test_delta_examples():
    out = delta_adversary(GREEDY, 4)
    check_outcome(out)
    assert out.alg_size == 9 and len(out.opt_witness) == 5
    assert out.ratio == Fraction(9, 5)
    assert len(brute_force_opt(out.instance.graph)) <= 5
    out = delta_adversary(ALL, 4)
    check_outcome(out)
    assert out.details["j"] == 4
    assert out.alg_size >= 4 + 2 + 1 and len(out.opt_witness) <= 1 + 0 + 2
    with pytest.raises(ValueError):
        delta_adversary(GREEDY, 8)


def test_claw_examples():
    out = claw_adversary(ALL, 5)
    check_outcome(out)
    assert out.alg_size >= 4 and len(out.opt_witness) == 1
    assert out.details["case"] == "all-selected"
    out = claw_adversary(GREEDY, 5)
    check_outcome(out)
    assert out.details["case"] == "c1-rejected" and out.alg_size == 4
    assert is_k1t_free(out.instance.graph, 5)


def test_threshold_examples():
    out = threshold_adversary(ALL, 3)
    check_outcome(out)
    assert out.instance.n == 9 and len(out.opt_witness) == 1
    assert out.alg_size ** 2 >= out.instance.n
    out = threshold_adversary(GREEDY, 3)
    check_outcome(out)
    assert out.alg_size == 4 and out.details["case"] == "c1-rejected"
    assert out.alg_size ** 2 >= out.instance.n
    assert is_threshold(out.instance.graph)


def test_planar_bipartite_examples():
    out = planar_bipartite_adversary(GREEDY, 4)
    check_outcome(out)
    assert out.alg_size == 11 and len(out.opt_witness) == 4 and out.ratio == Fraction(11, 4)
    g = out.instance.graph
    assert is_bipartite(g) and euler_planar_bipartite_bound(g)
    assert domination_number(g, 40) <= 4
    out = planar_bipartite_adversary(ALL, 4)
    check_outcome(out)
    assert len(out.details["traps"]) == 2  # no path vertex rejected, so the input was extended
    assert out.ratio >= 2


def test_sp_examples():
    out = sp_adversary(GREEDY, 2)
    check_outcome(out)
    assert out.details["p"] == 0 and out.alg_size == 6 and len(out.opt_witness) == 3
    assert len(brute_force_opt(out.instance.graph)) == 3
    out = sp_adversary(ALL, 2)
    check_outcome(out)
    assert out.details["p"] == 2 and len(out.opt_witness) <= 2 - 2 + 2
    assert treewidth_at_most_2(out.instance.graph)


def test_threshold_build_examples():
    assert threshold_build(2, [0, 0]) == complete_graph(3)
    g = threshold_build(2, [1, 0])
    assert is_threshold(g)
    for k in range(2, 5):
        for sizes in itertools.product(range(3), repeat=k):
            g = threshold_build(k, list(sizes))
            assert is_threshold(g)
            assert naive_dominates(g.n, g.edges, {k})  # v_k sees everything
            if g.n <= 12:
                assert len(brute_force_opt(g)) == 1
    g = threshold_build(3, [1, 2, 1])
    # I_{j_i} members are adjacent to exactly v_i..v_k
    assert set(g.neighbors(4)) == {1, 2, 3}
    assert set(g.neighbors(5)) == {2, 3} == set(g.neighbors(6))
    assert set(g.neighbors(7)) == {3}
    with pytest.raises(ValueError):
        threshold_build(1, [0])


def test_parameter_validation():
    for name, bad in [("tree", 3), ("cactus", 0), ("delta", 3), ("claw", 2), ("threshold", 2),
                      ("planar-bipartite", 1), ("sp", 1)]:
        with pytest.raises(ValueError):
            ADVERSARIES[name](GREEDY, bad)


# -- sweeps over random algorithms ---------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL))
def test_witness_bounds_opt_against_random_algorithms(name):
    param = SMALL[name]
    for seed in range(500):
        decide = random_feasible_decider(seed) if seed % 2 else random_decider(seed)
        out = ADVERSARIES[name](decide, param)
        check_outcome(out)
        g = out.instance.graph
        assert gamma(g) <= len(out.opt_witness), (name, seed)
        if name == "delta":
            assert max_degree(g) <= param
        if name == "claw":
            assert is_k1t_free(g, param)


@pytest.mark.parametrize("name, param", [("tree", 6), ("delta", 9), ("claw", 6), ("threshold", 5),
                                         ("planar-bipartite", 4), ("sp", 4), ("cactus", 4)])
def test_bounds_hold_for_feasible_random_algorithms(name, param):
    for seed in range(60):
        out = ADVERSARIES[name](random_feasible_decider(seed, p=(seed % 5) / 4), param)
        assert out.feasible
        check_outcome(out)


def test_cactus_regions_are_optimal_locally():
    """Each region's witness is a minimum set dominating the region (children of v_1 excluded)."""
    for seed in range(150):
        for alg in (random_feasible_decider(seed), GREEDY, TWO, ALL):
            out = cactus_adversary(alg, 1 + seed % 3)
            g = out.instance.graph
            kids = set(g.neighbors(out.instance.order[0]))
            for r in cactus_regions(out):
                target = set(r["vertices"]) - kids
                assert all(set(g.closed(x)) & set(r["opt"]) for x in target)
                pool = sorted(set().union(*(g.closed(x) for x in target)))
                smaller = any(target <= set().union(*(g.closed(v) for v in c))
                              for c in itertools.combinations(pool, len(r["opt"]) - 1))
                assert not smaller, (seed, r)
                if out.feasible and not r["closing"]:
                    assert Fraction(r["alg"], len(r["opt"])) >= Fraction(5, 2)


def test_small_parameter_witnesses_near_gamma():
    for name, params in [("tree", (4, 5, 6)), ("planar-bipartite", (2, 3)), ("sp", (2, 3))]:
        for k in params:
            for alg in STOCK:
                out = ADVERSARIES[name](alg, k)
                assert len(out.opt_witness) <= gamma(out.instance.graph) + 1, (name, k, alg.label)


def test_delta_heavy_count_against_sqrt_dominate():
    from ods.charging import classify_heavy_light
    for d in (4, 9, 16):
        spec = AlgorithmSpec.sqrt_dominate(d)
        out = delta_adversary(spec, d)
        check_outcome(out)
        part = classify_heavy_light(out.trace, d)
        assert len(part.heavy) <= out.instance.n // math.isqrt(d)
