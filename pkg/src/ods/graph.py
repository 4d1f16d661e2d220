"""Immutable simple undirected graphs on dense integer vertex ids."""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable


class GraphError(ValueError):
    """Raised for malformed graphs: loops, duplicate edges, bad ids, disconnection."""


class Graph:
    """A connected simple undirected graph with vertices ``0..n-1``.

    Adjacency is stored both as sorted tuples (deterministic iteration) and as
    frozensets (membership tests). Instances are never mutated after
    construction, so they can be shared freely.
    """

    __slots__ = ("n", "_adj", "_nbr", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), *, require_connected: bool = True):
        if n < 1:
            raise GraphError(f"graph needs at least one vertex, got n={n}")
        nbr: list[set[int]] = [set() for _ in range(n)]
        seen = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an id outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise GraphError(f"duplicate edge {key}")
            seen.add(key)
            nbr[u].add(v)
            nbr[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbr)
        self._nbr = tuple(frozenset(s) for s in nbr)
        self._edges = tuple(sorted(seen))
        if require_connected and not self.is_connected():
            raise GraphError("graph is not connected")

    # -- basic queries -------------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check(v)
        return self._adj[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._nbr[v]

    def closed(self, v: int) -> frozenset[int]:
        self._check(v)
        return self._nbr[v] | {v}

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._nbr[u]

    def is_connected(self) -> bool:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} outside 0..{self.n - 1}")

    def check_vertices(self, vs: Iterable[int]) -> frozenset[int]:
        """Validate ids and return them as a frozenset."""
        out = frozenset(vs)
        for v in out:
            self._check(v)
        return out

    # -- derived graphs ------------------------------------------------------

    def adjacency_sets(self) -> dict[int, set[int]]:
        """A fresh, mutable copy of the adjacency (for reduction-style recognizers)."""
        return {v: set(self._nbr[v]) for v in range(self.n)}

    def closed_masks(self) -> list[int]:
        """Bitmask of N[v] for every vertex."""
        masks = []
        for v in range(self.n):
            m = 1 << v
            for w in self._adj[v]:
                m |= 1 << w
            masks.append(m)
        return masks

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self._edges]}

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        """Load from ``{"n": int, "edges": [[u, v], ...]}``; field errors name the field."""
        if not isinstance(data, dict):
            raise GraphError("top-level JSON value must be an object")
        if "n" not in data:
            raise GraphError("missing field 'n'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise GraphError("field 'n' must be an integer")
        edges = data.get("edges")
        if not isinstance(edges, list):
            raise GraphError("field 'edges' must be a list of [u, v] pairs")
        pairs = []
        for i, e in enumerate(edges):
            if (not isinstance(e, list) or len(e) != 2
                    or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
                raise GraphError(f"field 'edges[{i}]' must be a pair of integers")
            pairs.append((e[0], e[1]))
        try:
            return cls(n, pairs)
        except GraphError as exc:
            raise GraphError(f"field 'edges': {exc}") from None

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- constructors used throughout tests and examples ---------------------------

def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """N[S]: S together with every vertex adjacent to a member of S."""
    s = g.check_vertices(s)
    out = set(s)
    for v in s:
        out.update(g.neighbor_set(v))
    return frozenset(out)


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    d = g.check_vertices(d)
    # Independent of closed_neighborhood on purpose: every vertex must see D.
    return all(v in d or not d.isdisjoint(g.neighbor_set(v)) for v in g.vertices)


def is_independent(g: Graph, s: Iterable[int]) -> bool:
    s = g.check_vertices(s)
    return all(s.isdisjoint(g.neighbor_set(v)) for v in s)


def max_degree(g: Graph) -> int:
    return max(g.degree(v) for v in g.vertices)
