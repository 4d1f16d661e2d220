"""Lower-bound constructions for bounded degree and K_(1,t)-free graphs."""

from __future__ import annotations

import math
from fractions import Fraction

from ..algorithms import AlgorithmSpec
from ..revelation import Decider
from ._base import AdversaryOutcome, Builder


def delta_adversary(alg: AlgorithmSpec | Decider, delta: int) -> AdversaryOutcome:
    """v_1 with delta children, each with sqrt(delta) children of its own.

    Grandchildren under rejected children are leaves. Grandchildren under
    selected children are cut into groups of delta (the last may be short)
    and every group is tied to a fresh common neighbour y.
    """
    r = math.isqrt(delta)
    if delta < 4 or r * r != delta:
        raise ValueError("delta adversary needs a perfect square delta >= 4")
    b = Builder(alg)
    (v1,) = b.new()
    children = b.new(delta)
    b.reveal(v1, children)
    grand = {}
    for c in children:
        grand[c] = b.new(r)
        b.reveal(c, grand[c])
    picked = [c for c in children if b.selected(c)]
    rejected = [c for c in children if not b.selected(c)]
    for c in rejected:
        for x in grand[c]:
            b.reveal(x)
    pool = [x for c in picked for x in grand[c]]
    hubs = []
    for start in range(0, len(pool), delta):
        (y,) = b.new()
        hubs.append(y)
        for x in pool[start:start + delta]:
            b.reveal(x, (y,))
        b.reveal(y)
    witness = {v1, *rejected, *hubs}
    return b.finish(witness, "delta", delta, Fraction(r, 2),
                    details={"delta": delta, "j": len(picked), "hubs": len(hubs)})


def claw_adversary(alg: AlgorithmSpec | Decider, t: int) -> AdversaryOutcome:
    """Force t - 1 picks against a single dominating vertex in a K_(1,t)-free graph.

    v_1 arrives with t - 1 children. If it is rejected the input is a star.
    Otherwise c_1 arrives adjacent to all its siblings with t - 2 children,
    and every later c_j arrives adjacent to everything visible with t - 3
    children. The first rejected c_j gets leaf children; the siblings of v_1
    close into a clique and the waiting grandchildren into another.
    """
    if t < 3:
        raise ValueError("claw adversary needs t >= 3")
    b = Builder(alg)
    (v1,) = b.new()
    cs = b.new(t - 1)
    if not b.reveal(v1, cs):
        for c in cs:
            b.reveal(c)
        return b.finish({v1}, "claw", t, Fraction(t - 1), details={"t": t, "case": "star"})

    grandchildren: list[int] = []
    kids = b.new(t - 2)
    accepted = b.reveal(cs[0], [*cs[1:], *kids])
    j = 0
    while accepted and j + 1 < t - 2:
        grandchildren.extend(kids)
        j += 1
        kids = b.new(t - 3)
        accepted = b.reveal(cs[j], [*cs, *grandchildren, *kids])
    # cs[j] is the last vertex revealed among the children of v_1
    hub = cs[j]
    if accepted:
        grandchildren.extend(kids)
        case = "all-selected"
    else:
        for x in kids:
            b.reveal(x)
        case = f"c{j + 1}-rejected"
    for c in cs[j + 1:]:
        b.reveal(c, cs)
    for x in grandchildren:
        b.reveal(x, grandchildren)
    return b.finish({hub}, "claw", t, Fraction(t - 1), details={"t": t, "case": case})
