"""Random instance generators, connected revelation orders and ratio sweeps."""

from __future__ import annotations

import csv
import io
import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algorithms import AlgorithmSpec, run_algorithm, sqrt_ceil
from .graph import Graph
from .opt import DEFAULT_OPT_CAP, brute_force_opt, tree_opt
from .recognize import certificate_name, certify, is_tree
from .revelation import GameTrace, OnlineInstance

POLICIES = ("bfs", "dfs", "random-connected")
SWEEP_CLASSES = ("tree", "cactus", "bounded", "claw")
CSV_COLUMNS = ["class", "n", "param", "algorithm", "alg_size", "opt_size",
               "ratio_num", "ratio_den", "feasible", "certificate"]


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


# -- generators ---------------------------------------------------------------

def random_tree(n: int, seed=0) -> Graph:
    """Uniform labelled tree from a random Pruefer sequence."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    rng = _rng(seed)
    code = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = min(v for v in range(n) if degree[v] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, w = (v for v in range(n) if degree[v] == 1)
    edges.append((u, w))
    return Graph(n, edges)


def _tree_path(parent: dict[int, int | None], depth: dict[int, int], a: int, b: int) -> list[tuple[int, int]]:
    path = []
    while a != b:
        if depth[a] < depth[b]:
            a, b = b, a
        path.append((min(a, parent[a]), max(a, parent[a])))
        a = parent[a]
    return path


def _tree_distance(parent, depth, a: int, b: int) -> int:
    return len(_tree_path(parent, depth, a, b))


def random_cactus(n: int, seed=0, cycle_rate: float = 1.0) -> Graph:
    """Random tree plus chords whose fundamental cycles are edge-disjoint."""
    rng = _rng(seed)
    tree = random_tree(n, rng)
    if n < 3:
        return tree
    parent: dict[int, int | None] = {0: None}
    depth = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in tree.neighbors(v):
            if w not in depth:
                parent[w] = v
                depth[w] = depth[v] + 1
                queue.append(w)
    edges = set(tree.edges)
    on_cycle: set[tuple[int, int]] = set()
    for _ in range(int(n * cycle_rate) + 1):
        # short cycles pack better, so pick b within tree distance 4 of a
        a = rng.randrange(n)
        near = [b for b in range(n) if 2 <= _tree_distance(parent, depth, a, b) <= 4]
        if not near:
            continue
        b = rng.choice(near)
        if (min(a, b), max(a, b)) in edges:
            continue
        path = _tree_path(parent, depth, a, b)
        if any(e in on_cycle for e in path):
            continue
        on_cycle.update(path)
        edges.add((min(a, b), max(a, b)))
    return Graph(n, sorted(edges))


def random_bounded(n: int, delta: int, seed=0, extra_rate: float = 0.6) -> Graph:
    """Connected graph with maximum degree <= delta: a degree-capped random
    tree with extra edges added between vertices that still have room."""
    if delta < 2 and n > 2:
        raise ValueError(f"no connected graph on {n} vertices has maximum degree {delta}")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = _rng(seed)
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    for v in range(1, n):
        u = rng.choice([x for x in range(v) if deg[x] < delta])
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    for _ in range(int(n * extra_rate)):
        room = [x for x in range(n) if deg[x] < delta]
        if len(room) < 2:
            break
        a, b = sorted(rng.sample(room, 2))
        if (a, b) not in edges:
            edges.add((a, b))
            deg[a] += 1
            deg[b] += 1
    return Graph(n, sorted(edges))


def random_k1t_free(n: int, t: int, seed=0, tries: int = 8) -> Graph:
    """Grow a K_(1,t)-free graph one vertex at a time.

    Each new vertex joins a random earlier vertex u and a random part of
    N[u]; if that creates an induced K_(1,t) a few more draws are made and,
    failing those, the vertex becomes a true twin of u (which never does).
    """
    if t < 3:
        raise ValueError("t must be >= 3")
    rng = _rng(seed)
    adj: list[set[int]] = [set() for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        chosen = None
        for _ in range(tries):
            cand = {u} | {w for w in adj[u] if rng.random() < 0.5}
            if _k1t_free_at(adj, v, cand, t):
                chosen = cand
                break
        if chosen is None:
            chosen = {u} | adj[u]
        for w in chosen:
            adj[v].add(w)
            adj[w].add(v)
    return Graph(n, [(a, b) for a in range(n) for b in adj[a] if a < b])


def _k1t_free_at(adj: list[set[int]], v: int, nbrs: set[int], t: int) -> bool:
    """Would adding v with neighbours ``nbrs`` keep the graph K_(1,t)-free?

    Only stars centred at v or at one of its new neighbours can appear.
    """
    def around(c):
        return set(nbrs) if c == v else adj[c] | {v}

    def linked(a, b):
        if a == v:
            return b in nbrs
        if b == v:
            return a in nbrs
        return b in adj[a]

    for c in nbrs | {v}:
        ring = sorted(around(c))
        for combo in combinations(ring, t):
            if not any(linked(a, b) for a, b in combinations(combo, 2)):
                return False
    return True


def random_connected_order(g: Graph, seed=0, policy: str = "random-connected") -> list[int]:
    """A revelation order whose every prefix induces a connected subgraph."""
    if policy not in POLICIES:
        raise ValueError(f"unknown order policy {policy!r}")
    rng = _rng(seed)
    start = rng.randrange(g.n)
    order = [start]
    seen = {start}
    if policy == "bfs":
        queue = deque([start])
        while queue:
            v = queue.popleft()
            nbrs = list(g.neighbors(v))
            rng.shuffle(nbrs)
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    queue.append(w)
    elif policy == "dfs":
        stack = [start]
        while stack:
            v = stack[-1]
            fresh = [w for w in g.neighbors(v) if w not in seen]
            if not fresh:
                stack.pop()
                continue
            w = rng.choice(fresh)
            seen.add(w)
            order.append(w)
            stack.append(w)
    else:
        frontier = set(g.neighbors(start))
        while frontier:
            w = rng.choice(sorted(frontier))
            frontier.discard(w)
            seen.add(w)
            order.append(w)
            frontier.update(x for x in g.neighbors(w) if x not in seen)
    return order


def generate(cls: str, n: int, param: int | None, seed) -> Graph:
    if cls == "tree":
        return random_tree(n, seed)
    if cls == "cactus":
        return random_cactus(n, seed)
    if cls == "bounded":
        return random_bounded(n, param, seed)
    if cls == "claw":
        return random_k1t_free(n, param, seed)
    raise ValueError(f"unknown sweep class {cls!r}")


def default_algorithm(cls: str, param: int | None) -> AlgorithmSpec:
    """The algorithm each class's upper bound is about."""
    if cls == "bounded":
        return AlgorithmSpec.sqrt_dominate(param)
    if cls == "claw":
        return AlgorithmSpec.greedy()
    return AlgorithmSpec.k_dominate(2)


# -- sweeps -------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    cls: str
    n_min: int = 3
    n_max: int = 20
    param: int | None = None
    algorithms: tuple[AlgorithmSpec, ...] = ()
    seed: int = 0
    reps: int = 100
    policies: tuple[str, ...] = POLICIES
    opt_cap: int = DEFAULT_OPT_CAP

    def __post_init__(self):
        if self.cls not in SWEEP_CLASSES:
            raise ValueError(f"unknown sweep class {self.cls!r}")
        if self.cls in ("bounded", "claw") and self.param is None:
            raise ValueError(f"class {self.cls} needs a parameter")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")
        if self.reps < 0:
            raise ValueError("reps must be >= 0")
        for p in self.policies:
            if p not in POLICIES:
                raise ValueError(f"unknown order policy {p!r}")
        if not self.algorithms:
            object.__setattr__(self, "algorithms", (default_algorithm(self.cls, self.param),))


@dataclass
class RunRecord:
    index: int
    cls: str
    param: int | None
    policy: str
    algorithm: str
    instance: OnlineInstance
    trace: GameTrace
    opt: frozenset[int]
    certificate: str

    @property
    def n(self) -> int:
        return self.instance.n

    @property
    def alg_size(self) -> int:
        return len(self.trace.selected)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.alg_size, len(self.opt))

    def row(self) -> dict:
        return {
            "class": self.cls, "n": self.n, "param": "" if self.param is None else self.param,
            "algorithm": self.algorithm, "alg_size": self.alg_size, "opt_size": len(self.opt),
            "ratio_num": self.ratio.numerator, "ratio_den": self.ratio.denominator,
            "feasible": self.trace.feasible, "certificate": self.certificate,
        }


@dataclass
class RatioReport:
    runs: list[RunRecord] = field(default_factory=list)

    def aggregates(self) -> dict:
        out = {}
        for alg in sorted({r.algorithm for r in self.runs}):
            mine = [r for r in self.runs if r.algorithm == alg]
            ok = [r.ratio for r in mine if r.trace.feasible]
            worst = max(ok, default=None)
            mean = sum(ok, Fraction(0)) / len(ok) if ok else None
            out[alg] = {
                "count": len(ok),
                "infeasible": len(mine) - len(ok),
                "max_ratio": None if worst is None else f"{worst.numerator}/{worst.denominator}",
                "mean_ratio": None if mean is None else f"{mean.numerator}/{mean.denominator}",
            }
        return out

    def max_ratio(self, algorithm: str | None = None) -> Fraction | None:
        ok = [r.ratio for r in self.runs if r.trace.feasible and algorithm in (None, r.algorithm)]
        return max(ok, default=None)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in self.runs:
            w.writerow(r.row())
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"runs": [r.row() for r in self.runs], "aggregates": self.aggregates()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def exact_opt_for(g: Graph, cap: int = DEFAULT_OPT_CAP) -> frozenset[int]:
    """tree_opt on trees, brute force (refusing n > cap) everywhere else."""
    return tree_opt(g) if is_tree(g) else brute_force_opt(g, cap)


def sweep(config: ExperimentConfig) -> RatioReport:
    """Runs are seeded individually from (seed, index), so reports do not
    depend on execution order."""
    report = RatioReport()
    tag = "delta" if config.cls == "bounded" else config.cls
    cert = certificate_name(tag, config.param)
    for i in range(config.reps):
        rng = random.Random(f"{config.seed}:{config.cls}:{config.param}:{i}")
        n = rng.randint(config.n_min, config.n_max)
        g = generate(config.cls, n, config.param, rng)
        if not certify(g, tag, config.param):
            raise AssertionError(f"run {i}: generated graph is not {cert}")
        policy = config.policies[i % len(config.policies)]
        inst = OnlineInstance(g, tuple(random_connected_order(g, rng, policy)))
        opt = exact_opt_for(g, config.opt_cap)
        for spec in config.algorithms:
            trace = run_algorithm(inst, spec)
            report.runs.append(RunRecord(i, config.cls, config.param, policy, spec.label,
                                         inst, trace, opt, cert))
    return report


def ratio_bound(cls: str, param: int | None) -> Fraction | None:
    """The proven strict ratio for each sweep class; for bounded degree the
    value is delta and the bound is 3 sqrt(delta), compared via squares."""
    if cls == "tree":
        return Fraction(2)
    if cls == "cactus":
        return Fraction(5, 2)
    if cls == "claw":
        return Fraction(param - 1)
    if cls == "bounded":
        return Fraction(param)
    return None


def within_bound(cls: str, param: int | None, ratio: Fraction) -> bool:
    bound = ratio_bound(cls, param)
    if cls == "bounded":
        return ratio * ratio <= 9 * bound
    return ratio <= bound


__all__ = [
    "CSV_COLUMNS", "ExperimentConfig", "POLICIES", "RatioReport", "RunRecord", "SWEEP_CLASSES",
    "default_algorithm", "exact_opt_for", "generate", "random_bounded", "random_cactus",
    "random_connected_order", "random_k1t_free", "random_tree", "ratio_bound", "sqrt_ceil",
    "sweep", "within_bound",
]
