"""The online game: vertices arrive with their whole neighbourhood, prefixes stay connected,
and every decision is final.

Steps are numbered from 1 (step ``i`` reveals the ``i``-th vertex of the order).
The engine computes the model sets itself (visible, dominated, undominated,
save sets, newly dominated sets) so that algorithms and auditors share one
implementation of the definitions.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field

from .graph import Graph, GraphError, is_dominating


class GameError(RuntimeError):
    """Protocol misuse: double decisions, reveals after completion, inconsistent neighbourhoods."""


class OrderError(GameError):
    """A revelation order whose prefix would induce a disconnected subgraph."""


def validate_order(g: Graph, order: Sequence[int]) -> int | None:
    """Return ``None`` when every prefix is connected, else the first bad step (1-based).

    Step ``i`` is bad when the ``i``-th vertex has no neighbour among the
    earlier ones, i.e. the prefix of length ``i`` is disconnected.
    """
    if sorted(order) != list(range(g.n)):
        raise ValueError("order is not a permutation of the vertices")
    seen = set()
    for i, v in enumerate(order):
        if i and seen.isdisjoint(g.neighbor_set(v)):
            return i + 1
        seen.add(v)
    return None


@dataclass(frozen=True)
class OnlineInstance:
    graph: Graph
    order: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        bad = validate_order(self.graph, self.order)
        if bad is not None:
            raise OrderError(f"prefix of length {bad} is disconnected")

    @property
    def n(self) -> int:
        return self.graph.n

    def to_dict(self) -> dict:
        d = self.graph.to_dict()
        d["order"] = list(self.order)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> OnlineInstance:
        g = Graph.from_dict(data)
        order = data.get("order")
        if not isinstance(order, list) or not all(isinstance(x, int) for x in order):
            raise GraphError("field 'order' must be a list of vertex ids")
        try:
            return cls(g, tuple(order))
        except (ValueError, OrderError) as exc:
            raise GraphError(f"field 'order': {exc}") from None


@dataclass(frozen=True)
class StepView:
    """What an online algorithm may look at before deciding on ``vertex``."""

    step: int
    vertex: int
    neighbors: frozenset[int]
    undominated: frozenset[int]  # U_i: visible and not dominated before this decision
    saves: frozenset[int]  # s(v_i); rejecting a vertex with a non-empty save set is fatal
    revealed: frozenset[int]
    selected: frozenset[int]

    @property
    def undominated_neighbors(self) -> frozenset[int]:
        return self.neighbors & self.undominated


@dataclass(frozen=True)
class StepRecord:
    step: int
    vertex: int
    neighbors: frozenset[int]
    newly_visible: frozenset[int]  # C_i = V_i \ V_{i-1}
    undominated: frozenset[int]  # U_i
    saves: frozenset[int]  # s(v_i)
    selected: bool
    newly_dominated: frozenset[int]  # X_i = N[v_i] & U_i when selected, else empty

    @property
    def undominated_neighbor_count(self) -> int:
        return len(self.neighbors & self.undominated)


@dataclass(frozen=True)
class GameTrace:
    instance: OnlineInstance
    records: tuple[StepRecord, ...]
    parent: dict[int, int] = field(compare=False)
    edge_labels: dict[tuple[int, int], str] = field(compare=False)

    @property
    def decisions(self) -> tuple[bool, ...]:
        return tuple(r.selected for r in self.records)

    @property
    def selected(self) -> frozenset[int]:
        return frozenset(r.vertex for r in self.records if r.selected)

    @property
    def feasible(self) -> bool:
        return is_dominating(self.instance.graph, self.selected)

    @property
    def position(self) -> dict[int, int]:
        """vertex -> step at which it was revealed."""
        return {r.vertex: r.step for r in self.records}

    def record(self, step: int) -> StepRecord:
        if not 1 <= step <= len(self.records):
            raise IndexError(f"step {step} outside 1..{len(self.records)}")
        return self.records[step - 1]

    def saved_by(self, step: int) -> frozenset[int]:
        return self.record(step).saves

    @property
    def saves(self) -> list[tuple[int, list[int]]]:
        return [(r.step, sorted(r.saves)) for r in self.records if r.saves]

    @property
    def x_sets(self) -> list[tuple[int, list[int]]]:
        return [(r.step, sorted(r.newly_dominated)) for r in self.records if r.selected]

    def cross_edges(self) -> list[tuple[int, int]]:
        return sorted(e for e, kind in self.edge_labels.items() if kind == "cross")

    def to_dict(self) -> dict:
        return {
            "decisions": list(self.decisions),
            "selected": sorted(self.selected),
            "feasible": self.feasible,
            "saves": [[j, ids] for j, ids in self.saves],
            "x_sets": [[i, ids] for i, ids in self.x_sets],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


class Game:
    """Incremental game state.

    Call :meth:`reveal` with a vertex and its full neighbour set, then
    :meth:`decide`. Neighbourhoods may mention vertices nobody has seen yet,
    which is how adversaries grow the graph lazily; :meth:`finalize` builds
    the graph from what was revealed once nothing visible is left unrevealed.
    """

    def __init__(self):
        self.step = 0
        self.order: list[int] = []
        self.adj: dict[int, frozenset[int]] = {}
        self.revealed: set[int] = set()
        self.visible: set[int] = set()
        self.selected: set[int] = set()
        self.dominated: set[int] = set()
        self.parent: dict[int, int] = {}
        self.edge_labels: dict[tuple[int, int], str] = {}
        self.records: list[StepRecord] = []
        self._pending: tuple | None = None
        self._mentions: dict[int, int] = {}  # how many revealed vertices list each id

    @property
    def pending(self) -> int | None:
        return None if self._pending is None else self._pending[0]

    @property
    def complete(self) -> bool:
        return self.step > 0 and self._pending is None and self.visible == self.revealed

    def reveal(self, v: int, neighbors: Iterable[int]) -> StepView:
        if self._pending is not None:
            raise GameError(f"vertex {self._pending[0]} is still waiting for a decision")
        if self.step and self.visible == self.revealed:
            raise GameError("game already complete")
        nbrs = frozenset(neighbors)
        if v in nbrs:
            raise GameError(f"vertex {v} lists itself as a neighbour")
        if v in self.revealed:
            raise GameError(f"vertex {v} was already revealed")
        if self.step and v not in self.visible:
            raise OrderError(f"vertex {v} is not adjacent to any revealed vertex")
        earlier = nbrs & self.revealed
        if len(earlier) != self._mentions.get(v, 0) or any(v not in self.adj[u] for u in earlier):
            raise GameError(f"neighbourhood of {v} disagrees with earlier reveals")

        self.step += 1
        self.order.append(v)
        self.revealed.add(v)
        self.adj[v] = nbrs
        for u in nbrs:
            self._mentions[u] = self._mentions.get(u, 0) + 1
        closed = nbrs | {v}
        fresh = closed - self.visible
        self.visible |= closed
        for u in nbrs:
            key = (u, v) if u < v else (v, u)
            if u in fresh:
                self.parent[u] = v
                self.edge_labels[key] = "tree"
            else:
                self.edge_labels.setdefault(key, "cross")

        undominated = frozenset(self.visible - self.dominated)
        # v_i saves u iff every vertex of N[u] is now revealed (so v_i is the last)
        # and nothing in N[u] was selected before this step.
        saves = frozenset(
            u for u in closed
            if u in self.revealed and self.adj[u] <= self.revealed and u not in self.dominated
        )
        self._pending = (v, nbrs, frozenset(fresh), undominated, saves)
        return StepView(self.step, v, nbrs, undominated, saves,
                        frozenset(self.revealed), frozenset(self.selected))

    def decide(self, select: bool) -> None:
        if self._pending is None:
            raise GameError("no revealed vertex is waiting for a decision")
        v, nbrs, fresh, undominated, saves = self._pending
        self._pending = None
        x = frozenset()
        if select:
            closed = nbrs | {v}
            x = closed & undominated
            self.selected.add(v)
            self.dominated |= closed
        self.records.append(StepRecord(self.step, v, nbrs, fresh, undominated, saves, bool(select), x))

    def finalize(self, instance: OnlineInstance | None = None) -> GameTrace:
        if not self.complete:
            raise GameError("game incomplete: visible vertices remain unrevealed")
        if instance is None:
            n = len(self.revealed)
            if self.revealed != set(range(n)):
                raise GameError("revealed vertex ids are not 0..n-1")
            edges = {(u, w) if u < w else (w, u) for u, s in self.adj.items() for w in s}
            instance = OnlineInstance(Graph(n, sorted(edges)), tuple(self.order))
        elif tuple(self.order) != instance.order:
            raise GameError("game order differs from the instance order")
        return GameTrace(instance, tuple(self.records), dict(self.parent), dict(self.edge_labels))


Decider = Callable[[StepView], bool]


def play(instance: OnlineInstance, decide: Decider) -> GameTrace:
    """Run a complete game on a fixed instance."""
    g = instance.graph
    game = Game()
    for v in instance.order:
        view = game.reveal(v, g.neighbor_set(v))
        game.decide(bool(decide(view)))
    return game.finalize(instance)


def replay(instance: OnlineInstance, decisions: Sequence[bool]) -> GameTrace:
    """Re-run a recorded decision stream."""
    if len(decisions) != instance.n:
        raise ValueError(f"{len(decisions)} decisions for {instance.n} vertices")
    return play(instance, lambda view: decisions[view.step - 1])


def trace_from_dict(instance: OnlineInstance, data: dict) -> GameTrace:
    """Rebuild a trace from its JSON form, checking every recorded field against a replay."""
    if not isinstance(data, dict):
        raise GraphError("trace JSON must be an object")
    decisions = data.get("decisions")
    if not isinstance(decisions, list) or not all(isinstance(d, bool) for d in decisions):
        raise GraphError("field 'decisions' must be a list of booleans")
    try:
        trace = replay(instance, decisions)
    except ValueError as exc:
        raise GraphError(f"field 'decisions': {exc}") from None
    expected = trace.to_dict()
    for key in ("selected", "feasible", "saves", "x_sets"):
        if key in data and data[key] != expected[key]:
            raise GraphError(f"field '{key}' does not match a replay of the decisions")
    return trace
