from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from ..algorithms import AlgorithmSpec
from ..graph import is_dominating
from ..recognize import certify, certificate_name
from ..revelation import Decider, Game, GameTrace, OnlineInstance


@dataclass(frozen=True)
class AdversaryOutcome:
    """A finished adversarial game.

    ``guaranteed_ratio_lower_bound`` is what the construction promises for
    |selected| / |opt_witness| against any feasible algorithm. When
    ``bound_is_sqrt`` is set the promise is ``sqrt(bound)`` instead (threshold
    graphs, where it is stated against the input size).
    """

    instance: OnlineInstance
    trace: GameTrace
    opt_witness: frozenset[int]
    claimed_class: str
    class_param: int | None
    guaranteed_ratio_lower_bound: Fraction
    bound_is_sqrt: bool = False
    details: dict = field(default_factory=dict, compare=False)

    @property
    def alg_size(self) -> int:
        return len(self.trace.selected)

    @property
    def feasible(self) -> bool:
        return self.trace.feasible

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.alg_size, len(self.opt_witness))

    def witness_dominating(self) -> bool:
        return is_dominating(self.instance.graph, self.opt_witness)

    def class_ok(self) -> bool:
        return certify(self.instance.graph, self.claimed_class, self.class_param)

    def bound_holds(self) -> bool | None:
        """``None`` for infeasible runs, which the lower bounds say nothing about."""
        if not self.feasible:
            return None
        if self.bound_is_sqrt:
            return self.ratio * self.ratio >= self.guaranteed_ratio_lower_bound
        return self.ratio >= self.guaranteed_ratio_lower_bound

    def report(self) -> dict:
        bound = self.guaranteed_ratio_lower_bound
        out = {
            "class": self.claimed_class,
            "certificate": certificate_name(self.claimed_class, self.class_param),
            "class_ok": self.class_ok(),
            "n": self.instance.n,
            "alg": self.alg_size,
            "opt_witness": sorted(self.opt_witness),
            "opt_witness_size": len(self.opt_witness),
            "witness_dominating": self.witness_dominating(),
            "feasible": self.feasible,
            "ratio": f"{self.ratio.numerator}/{self.ratio.denominator}",
            "ratio_bound": (f"sqrt({bound})" if self.bound_is_sqrt
                            else f"{bound.numerator}/{bound.denominator}"),
            "bound_holds": self.bound_holds(),
        }
        out["details"] = self.details
        return out


def as_decider(alg: AlgorithmSpec | Decider) -> Decider:
    return alg.decider() if isinstance(alg, AlgorithmSpec) else alg


class Builder:
    """Grows a graph lazily while the game is played.

    Ids are handed out in creation order, so the final vertex set is dense.
    ``reveal(v, extra)`` adds edges from ``v`` to ``extra`` (fresh or visible,
    never already revealed) and reveals ``v`` with everything it is adjacent
    to so far; it returns the algorithm's decision.
    """

    def __init__(self, alg: AlgorithmSpec | Decider):
        self.decide = as_decider(alg)
        self.game = Game()
        self.adj: dict[int, set[int]] = defaultdict(set)
        self.count = 0

    def new(self, count: int = 1) -> list[int]:
        ids = list(range(self.count, self.count + count))
        self.count += count
        return ids

    def reveal(self, v: int, extra: Iterable[int] = ()) -> bool:
        for w in extra:
            if w != v:
                self.adj[v].add(w)
                self.adj[w].add(v)
        view = self.game.reveal(v, self.adj[v])
        choice = bool(self.decide(view))
        self.game.decide(choice)
        return choice

    def selected(self, v: int) -> bool:
        return v in self.game.selected

    def finish(self, witness: Iterable[int], claimed_class: str, class_param: int | None,
               bound: Fraction, *, bound_is_sqrt: bool = False, details: dict | None = None) -> AdversaryOutcome:
        trace = self.game.finalize()
        return AdversaryOutcome(trace.instance, trace, frozenset(witness), claimed_class, class_param,
                                Fraction(bound), bound_is_sqrt, details or {})
