"""Online algorithms as pure decision functions over a :class:`StepView`."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .revelation import Decider, GameTrace, OnlineInstance, StepView, play

KINDS = ("greedy", "k_dominate", "accept_all", "scripted")


def greedy_decide(view: StepView) -> bool:
    """Take the vertex iff it is not yet dominated."""
    return view.vertex in view.undominated


def k_dominate_decide(view: StepView, k: int) -> bool:
    """Take the vertex iff it has >= k undominated (open) neighbours or saves anything."""
    return len(view.neighbors & view.undominated) >= k or bool(view.saves)


def accept_all_decide(view: StepView) -> bool:
    return True


def sqrt_ceil(delta: int) -> int:
    """ceil(sqrt(delta)) in integers."""
    r = math.isqrt(delta)
    return r if r * r == delta else r + 1


@dataclass(frozen=True)
class AlgorithmSpec:
    kind: str
    k: int | None = None
    script: tuple[bool, ...] | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown algorithm kind {self.kind!r}")
        if self.kind == "k_dominate" and (self.k is None or self.k < 1):
            raise ValueError("k_dominate needs k >= 1")
        if self.kind == "scripted":
            if self.script is None:
                raise ValueError("scripted algorithm needs a script")
            object.__setattr__(self, "script", tuple(bool(x) for x in self.script))

    @classmethod
    def greedy(cls) -> AlgorithmSpec:
        return cls("greedy")

    @classmethod
    def k_dominate(cls, k: int) -> AlgorithmSpec:
        return cls("k_dominate", k=k)

    @classmethod
    def sqrt_dominate(cls, delta: int) -> AlgorithmSpec:
        return cls("k_dominate", k=sqrt_ceil(delta))

    @classmethod
    def accept_all(cls) -> AlgorithmSpec:
        return cls("accept_all")

    @classmethod
    def scripted(cls, script: Sequence[bool]) -> AlgorithmSpec:
        return cls("scripted", script=tuple(script))

    @classmethod
    def parse(cls, name: str, k: int | None = None, script: Sequence[bool] | None = None) -> AlgorithmSpec:
        """CLI names: greedy, k-dominate, accept-all, scripted."""
        kind = name.replace("-", "_")
        if kind == "k_dominate" and k is None:
            raise ValueError("k-dominate needs --k")
        return cls(kind, k=k if kind == "k_dominate" else None,
                   script=script if kind == "scripted" else None)

    @property
    def label(self) -> str:
        if self.kind == "k_dominate":
            return f"{self.k}-dominate"
        return self.kind.replace("_", "-")

    def decider(self) -> Decider:
        if self.kind == "greedy":
            return greedy_decide
        if self.kind == "accept_all":
            return accept_all_decide
        if self.kind == "k_dominate":
            k = self.k
            return lambda view: k_dominate_decide(view, k)
        script = self.script

        def scripted(view: StepView) -> bool:
            if view.step > len(script):
                raise ValueError(f"script has {len(script)} decisions, step {view.step} needs another")
            return script[view.step - 1]

        return scripted


def run_algorithm(instance: OnlineInstance, spec: AlgorithmSpec) -> GameTrace:
    if spec.kind == "scripted" and len(spec.script) != instance.n:
        raise ValueError(f"script length {len(spec.script)} != n = {instance.n}")
    return play(instance, spec.decider())


STOCK = (AlgorithmSpec.greedy(), AlgorithmSpec.k_dominate(2), AlgorithmSpec.accept_all())
