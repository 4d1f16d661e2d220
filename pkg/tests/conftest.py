"""Shared oracles and strategies.

The oracles here are deliberately naive and written without the package's
helpers, so a bug in the library cannot hide behind the same bug here.
"""

from __future__ import annotations

import random
import sys
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import strategies as st

from ods.graph import Graph
from ods.harness import POLICIES, random_connected_order
from ods.revelation import OnlineInstance


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def naive_gamma(n: int, edges) -> int:
    """Smallest k such that some k-subset dominates, by plain enumeration."""
    closed = [{v} for v in range(n)]
    for a, b in edges:
        closed[a].add(b)
        closed[b].add(a)
    everything = set(range(n))
    for k in range(1, n + 1):
        for combo in combinations(range(n), k):
            covered = set()
            for v in combo:
                covered |= closed[v]
            if covered == everything:
                return k
    return 0


def naive_dominates(n: int, edges, d) -> bool:
    d = set(d)
    nbr = {v: set() for v in range(n)}
    for a, b in edges:
        nbr[a].add(b)
        nbr[b].add(a)
    return all(v in d or nbr[v] & d for v in range(n))


def recompute_model(instance: OnlineInstance, decisions):
    """Per-step model sets straight from their definitions.

    Returns a list of dicts with R, V, S_before, D_before, U, saves, X.
    """
    g = nx.Graph(list(instance.graph.edges))
    g.add_nodes_from(range(instance.n))

    def closed(s):
        out = set(s)
        for v in s:
            out |= set(g[v])
        return out

    steps = []
    order = list(instance.order)
    for i, v in enumerate(order, start=1):
        revealed = set(order[:i])
        visible = closed(revealed)
        s_before = {order[j] for j in range(i - 1) if decisions[j]}
        d_before = closed(s_before)
        u = visible - d_before
        saves = set()
        for w in visible:
            nw = closed({w})
            if not nw <= revealed:
                continue
            last = max(order.index(x) for x in nw) + 1
            if last == i and not ((nw - {v}) & s_before):
                saves.add(w)
        x = (closed({v}) & u) if decisions[i - 1] else set()
        steps.append({"R": revealed, "V": visible, "S_before": s_before, "D_before": d_before,
                      "U": u, "saves": saves, "X": x})
    return steps


@st.composite
def connected_graphs(draw, min_n=1, max_n=12, extra=None):
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        p = draw(st.integers(0, v - 1))
        edges.add((p, v))
    if n >= 3:
        pool = [(a, b) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
        k = draw(st.integers(0, min(len(pool), extra if extra is not None else n)))
        picked = draw(st.lists(st.sampled_from(pool), min_size=k, max_size=k, unique=True)) if pool and k else []
        edges.update(picked)
    perm = draw(st.permutations(range(n)))
    return Graph(n, sorted((min(perm[a], perm[b]), max(perm[a], perm[b])) for a, b in edges))


@st.composite
def trees(draw, min_n=1, max_n=14):
    return draw(connected_graphs(min_n, max_n, extra=0))


@st.composite
def instances(draw, graphs=None):
    g = draw(graphs if graphs is not None else connected_graphs())
    seed = draw(st.integers(0, 2**16))
    policy = draw(st.sampled_from(POLICIES))
    return OnlineInstance(g, tuple(random_connected_order(g, seed, policy)))


def random_feasible_decider(seed: int, p: float = 0.5):
    """Random coin per step, but never reject a vertex that saves something."""
    rng = random.Random(seed)
    return lambda view: bool(view.saves) or rng.random() < p


def random_decider(seed: int, p: float = 0.5):
    rng = random.Random(seed)
    return lambda view: rng.random() < p


@pytest.fixture
def p4():
    return Graph(4, [(0, 1), (1, 2), (2, 3)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
