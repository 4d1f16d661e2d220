"""Omega(sqrt n) constructions: threshold, planar bipartite and series-parallel graphs."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from ..algorithms import AlgorithmSpec
from ..graph import Graph
from ..revelation import Decider
from ._base import AdversaryOutcome, Builder


def threshold_build(k: int, sizes: Sequence[int]) -> Graph:
    """Clique on u, v_1..v_k plus independent sets I_i (|I_i| = sizes[i-1]) joined to v_i..v_k.

    Ids: u = 0, v_i = i, then the members of I_1, I_2, ... in order.
    """
    if k < 2 or len(sizes) != k or any(s < 0 for s in sizes):
        raise ValueError("threshold_build needs k >= 2 and k non-negative sizes")
    edges = [(a, b) for a in range(k + 1) for b in range(a + 1, k + 1)]
    nxt = k + 1
    for i, size in enumerate(sizes, start=1):
        for _ in range(size):
            edges.extend((vi, nxt) for vi in range(i, k + 1))
            nxt += 1
    return Graph(nxt, edges)


def threshold_adversary(alg: AlgorithmSpec | Decider, k: int) -> AdversaryOutcome:
    """Same skeleton as the claw construction but every c_j brings k children
    and the grandchildren stay independent, which keeps the graph threshold.

    The promise is ALG >= sqrt(n) against a witness of size one.
    """
    if k < 3:
        raise ValueError("threshold adversary needs k >= 3")
    b = Builder(alg)
    (v1,) = b.new()
    cs = b.new(k - 1)
    if not b.reveal(v1, cs):
        for c in cs:
            b.reveal(c)
        return _sqrt_finish(b, v1, {"k": k, "case": "star"})

    grandchildren: list[int] = []
    kids = b.new(k)
    accepted = b.reveal(cs[0], [*cs[1:], *kids])
    j = 0
    while accepted and j + 1 < k - 1:
        grandchildren.extend(kids)
        j += 1
        kids = b.new(k)
        accepted = b.reveal(cs[j], [*cs, *grandchildren, *kids])
    hub = cs[j]
    grandchildren.extend(kids)
    case = "all-selected" if accepted else f"c{j + 1}-rejected"
    for c in cs[j + 1:]:
        b.reveal(c, cs)
    for x in grandchildren:
        b.reveal(x)
    return _sqrt_finish(b, hub, {"k": k, "case": case})


def _sqrt_finish(b: Builder, hub: int, details: dict) -> AdversaryOutcome:
    # |witness| = 1, so ratio >= sqrt(n) is the ALG >= sqrt(n) promise
    return b.finish({hub}, "threshold", None, Fraction(b.count), bound_is_sqrt=True, details=details)


def _bipartite_trap(b: Builder, first: int, k: int, extensions: int, log: list) -> set[int]:
    """One path-with-pendants trap starting at the visible vertex ``first``; returns its witness."""
    path = [first]
    pendants = []
    o, e = b.new(2)
    for i in range(k):
        v = path[i]
        pend = b.new(k)
        pendants.append(pend)
        hub = o if i % 2 == 0 else e  # 1-based odd positions hang off o
        nbrs = [*pend, hub]
        if i + 1 < k:
            (nxt,) = b.new()
            path.append(nxt)
            nbrs.append(nxt)
        b.reveal(v, nbrs)
    picked = [b.selected(v) for v in path]
    for i, v in enumerate(path):
        other_hub = e if i % 2 == 0 else o
        for p in pendants[i]:
            b.reveal(p, (other_hub,) if picked[i] else ())
    rejected = {v for v, s in zip(path, picked) if not s}
    log.append({"path": path, "rejected": len(rejected)})
    witness = {o, e} | rejected
    if not rejected and extensions > 0:
        (u1,) = b.new()
        b.reveal(o, (u1,))
        witness |= _bipartite_trap(b, u1, k, extensions - 1, log)
    else:
        b.reveal(o)
    b.reveal(e)
    return witness


def planar_bipartite_adversary(alg: AlgorithmSpec | Decider, k: int, extensions: int = 1) -> AdversaryOutcome:
    """A k-vertex path, each vertex with k pendants; odd positions also see o, even ones e.

    Pendants of rejected path vertices stay leaves. Pendants of selected
    ones attach to the hub of the opposite parity, so {o, e} plus the
    rejected path vertices dominate. When every path vertex was selected the
    witness is just {o, e}; o then gets a fresh neighbour and the trap is
    repeated from it, up to ``extensions`` times.
    """
    if k < 2:
        raise ValueError("planar bipartite adversary needs k >= 2")
    b = Builder(alg)
    (start,) = b.new()
    log: list = []
    witness = _bipartite_trap(b, start, k, extensions, log)
    return b.finish(witness, "planar-bipartite", None, Fraction(k, 2),
                    details={"k": k, "traps": log})


def sp_adversary(alg: AlgorithmSpec | Decider, k: int) -> AdversaryOutcome:
    """s with k neighbours c_i, each bringing k new neighbours d_ij.

    d_ij under a rejected c_i gets its own neighbour f_ij; under a selected
    c_i it gets the common sink t. The f_ij then attach to t. The witness is
    t, the rejected c_i, and s when some c_i was selected (otherwise a
    rejected c_i already covers s).
    """
    if k < 2:
        raise ValueError("series-parallel adversary needs k >= 2")
    b = Builder(alg)
    (s,) = b.new()
    cs = b.new(k)
    b.reveal(s, cs)
    ds = {}
    for c in cs:
        ds[c] = b.new(k)
        b.reveal(c, ds[c])
    picked = [c for c in cs if b.selected(c)]
    sink: list[int] = []

    def t_vertex() -> int:
        if not sink:
            sink.extend(b.new())
        return sink[0]

    fs = []
    for c in cs:
        for d in ds[c]:
            if b.selected(c):
                b.reveal(d, (t_vertex(),))
            else:
                (f,) = b.new()
                fs.append(f)
                b.reveal(d, (f,))
    for f in fs:
        b.reveal(f, (t_vertex(),))
    b.reveal(t_vertex())
    witness = {t_vertex(), *(c for c in cs if c not in picked)}
    if picked:
        witness.add(s)
    return b.finish(witness, "sp", None, Fraction(k, 2), details={"k": k, "p": len(picked)})
