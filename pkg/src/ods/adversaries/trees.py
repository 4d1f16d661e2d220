"""Lower-bound constructions for trees (ratio 2) and cactus graphs (ratio 5/2)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algorithms import AlgorithmSpec
from ..revelation import Decider
from ._base import AdversaryOutcome, Builder


def tree_adversary(alg: AlgorithmSpec | Decider, k: int) -> AdversaryOutcome:
    """v_1 with k children; below each child grow a chain of selected vertices.

    Each chain vertex arrives with two children and the chain continues at
    one of them while the algorithm keeps selecting. A rejected chain vertex
    gets two leaf children; every selected chain vertex's other child becomes
    a support vertex with one leaf. Once some chain reaches k selections, its
    last vertex gets two leaves and the remaining children of v_1 are leaves.
    """
    if k < 4:
        raise ValueError("tree adversary needs k >= 4")
    b = Builder(alg)
    (v1,) = b.new()
    children = b.new(k)
    b.reveal(v1, children)
    witness = {v1}
    chain_counts = []
    stopped = False
    for c in children:
        if stopped:
            b.reveal(c)
            continue
        chain, spare = [], []
        x = c
        while True:
            nxt, other = b.new(2)
            if not b.reveal(x, (nxt, other)):
                break
            chain.append(x)
            spare.append(other)
            if len(chain) == k:
                break
            x = nxt
        # x is either the first rejected chain vertex or the k-th selected one
        if len(chain) == k:
            supports = spare[:-1]
            stopped = True
        else:
            supports = spare
        witness.add(x)
        witness.update(supports)
        b.reveal(nxt)
        b.reveal(other)
        for s in supports:
            (leaf,) = b.new()
            b.reveal(s, (leaf,))
            b.reveal(leaf)
        chain_counts.append(len(chain))
    return b.finish(witness, "tree", None, 2 - Fraction(3, k),
                    details={"k": k, "j": chain_counts})


@dataclass(frozen=True)
class CactusRegion:
    """A vertex-disjoint piece of the cactus with the witness vertices charged to it."""

    kind: str
    vertices: frozenset[int]
    opt: frozenset[int]
    closing: bool = False

    def alg(self, selected) -> int:
        return len(self.vertices & selected)

    def to_dict(self, selected) -> dict:
        return {"kind": self.kind, "vertices": sorted(self.vertices), "opt": sorted(self.opt),
                "alg": self.alg(selected), "closing": self.closing}


def _gadget(b: Builder, root: int) -> tuple[list[int], int]:
    """Reveal ``root`` as the root of a 2-gadget; returns (gadget vertices, its witness vertex).

    Rejected root: both children are leaves (two forced picks, witness = root).
    Selected root: the first child is adjacent to the second, which gets a
    pendant; one of those two is forced and the second child is the witness.
    """
    c1, c2 = b.new(2)
    if b.reveal(root, (c1, c2)):
        (x,) = b.new()
        b.reveal(c1, (c2,))
        b.reveal(c2, (x,))
        b.reveal(x)
        return [root, c1, c2, x], c2
    b.reveal(c1)
    b.reveal(c2)
    return [root, c1, c2], root


def _cactus_child(b: Builder, c: int, rounds: int, regions: list[CactusRegion]) -> bool:
    """Run the trap below child ``c`` of v_1; True if it ran out of rounds."""

    def region(kind, vertices, opt, closing=False):
        regions.append(CactusRegion(kind, frozenset(vertices), frozenset(opt), closing))

    c1, c2, c3 = b.new(3)
    if not b.reveal(c, (c1, c2, c3)):
        for x in (c1, c2, c3):
            b.reveal(x)
        region("root-rejected", (c, c1, c2, c3), (c,))
        return False
    g1, g2 = b.new(2)
    if not b.reveal(c1, (c2, g1, g2)):
        b.reveal(g1)
        b.reveal(g2)
        b.reveal(c2)
        gadget, w = _gadget(b, c3)
        region("first-rejected", [c, c1, c2, g1, g2, *gadget], (c1, w))
        return False
    gadget2, w2 = _gadget(b, c2)
    gadget3, w3 = _gadget(b, c3)
    region("first-selected", [c, *gadget2, *gadget3], (w2, w3))

    root, a, bb = c1, g1, g2
    played = 1
    while True:
        if played >= rounds:
            b.reveal(a)
            b.reveal(bb)
            region("closing", (root, a, bb), (root,), closing=True)
            return True
        played += 1
        a1, a2 = b.new(2)
        if not b.reveal(a, (bb, a1, a2)):
            b.reveal(a1)
            b.reveal(a2)
            b.reveal(bb)
            region("trap-a-rejected", (root, a, bb, a1, a2), (a,))
            return False
        d1, d2 = b.new(2)
        if not b.reveal(a1, (a2, d1, d2)):
            b.reveal(d1)
            b.reveal(d2)
            (leaf,) = b.new()
            b.reveal(bb, (leaf,))
            b.reveal(leaf)
            b.reveal(a2)
            region("trap-b-rejected", (root, a, bb, leaf, a1, a2, d1, d2), (a1, bb))
            return False
        (leaf,) = b.new()
        b.reveal(bb, (leaf,))
        b.reveal(leaf)
        gadget, w = _gadget(b, a2)
        region("trap-continued", [root, a, bb, leaf, *gadget], (bb, w))
        root, a, bb = a1, d1, d2


def cactus_adversary(alg: AlgorithmSpec | Decider, rounds: int) -> AdversaryOutcome:
    """v_1 with ``rounds`` children, each the root of the 5-for-2 trap.

    Every non-closing region forces at least 5/2 times as many algorithm
    picks as witness vertices it holds (for a feasible algorithm). A child
    whose trap survives ``rounds`` rounds is closed off with two leaves under
    its selected root, and the remaining children of v_1 are leaves.
    """
    if rounds < 1:
        raise ValueError("cactus adversary needs rounds >= 1")
    b = Builder(alg)
    (v1,) = b.new()
    children = b.new(rounds)
    b.reveal(v1, children)
    regions: list[CactusRegion] = []
    stopped = False
    for c in children:
        if stopped:
            b.reveal(c)
            continue
        stopped = _cactus_child(b, c, rounds, regions)
    witness = {v1}
    for r in regions:
        witness |= r.opt
    closing = sum(r.closing for r in regions)
    w = len(witness)
    bound = Fraction(5, 2) * Fraction(w - 1 - closing, w)
    outcome = b.finish(witness, "cactus", None, bound, details={"rounds": rounds})
    outcome.details["regions"] = [r.to_dict(outcome.trace.selected) for r in regions]
    return outcome


def cactus_regions(outcome: AdversaryOutcome) -> list[dict]:
    return outcome.details["regions"]
