"""Exact offline dominating sets and the combinatorial lower bounds used by the audits."""

from __future__ import annotations

from collections.abc import Iterable

from .graph import Graph, is_dominating, is_independent
from .recognize import is_k1t_free, is_tree

DEFAULT_OPT_CAP = 26


class OptCapExceeded(ValueError):
    """The instance is larger than the exhaustive-search cap; no approximation is offered."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def domination_number(g: Graph, cap: int = DEFAULT_OPT_CAP) -> int:
    """gamma(G) by branch and bound over "some vertex of N[u] is chosen" for an undominated u."""
    if g.n > cap:
        raise OptCapExceeded(f"n={g.n} exceeds the exhaustive-search cap {cap}")
    masks = g.closed_masks()
    full = (1 << g.n) - 1
    cover = [[w for w in sorted(g.closed(u), key=lambda x: -_popcount(masks[x]))] for u in g.vertices]
    maxcov = max(_popcount(m) for m in masks)

    # greedy upper bound
    dom, best = 0, 0
    while dom != full:
        w = max(g.vertices, key=lambda x: _popcount(masks[x] & ~dom))
        dom |= masks[w]
        best += 1
    best_box = [best]

    def rec(dom: int, count: int) -> None:
        if dom == full:
            best_box[0] = count
            return
        rest = full & ~dom
        if count + -(-_popcount(rest) // maxcov) >= best_box[0]:
            return
        # branch on the undominated vertex with the fewest candidates
        u, fewest = -1, 1 << 30
        r = rest
        while r:
            low = r & -r
            x = low.bit_length() - 1
            r ^= low
            if len(cover[x]) < fewest:
                u, fewest = x, len(cover[x])
                if fewest == 1:
                    break
        for w in cover[u]:
            rec(dom | masks[w], count + 1)

    rec(0, 0)
    return best_box[0]


def brute_force_opt(g: Graph, cap: int = DEFAULT_OPT_CAP) -> frozenset[int]:
    """The lexicographically smallest minimum dominating set.

    The size comes from :func:`domination_number`; the set itself from a
    depth-first walk over increasing vertex sequences of that size, which
    meets candidates in lexicographic order, so the first hit is the answer.
    """
    size = domination_number(g, cap)
    masks = g.closed_masks()
    full = (1 << g.n) - 1
    # highest id in N[u]: every pick after v must stay <= this for undominated u
    top = [max(g.closed(u)) for u in g.vertices]

    chosen: list[int] = []

    def rec(start: int, dom: int, left: int) -> bool:
        if dom == full:
            return True
        if left == 0:
            return False
        rest = full & ~dom
        limit = g.n - 1
        r = rest
        while r:
            low = r & -r
            x = low.bit_length() - 1
            r ^= low
            if top[x] < limit:
                limit = top[x]
        for v in range(start, limit + 1):
            chosen.append(v)
            if rec(v + 1, dom | masks[v], left - 1):
                return True
            chosen.pop()
        return False

    if not rec(0, 0, size):  # pragma: no cover - size is attainable by definition
        raise RuntimeError("failed to rebuild a minimum dominating set")
    return frozenset(chosen)


def tree_opt(g: Graph) -> frozenset[int]:
    """Minimum dominating set of a tree by the selected / dominated / waiting DP."""
    if not is_tree(g):
        raise ValueError("tree_opt requires a tree")
    if g.n == 1:
        return frozenset({0})
    INF = float("inf")
    parent = [-1] * g.n
    order = [0]
    seen = [False] * g.n
    seen[0] = True
    for u in order:
        for w in g.neighbors(u):
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                order.append(w)
    children: list[list[int]] = [[] for _ in g.vertices]
    for v in order[1:]:
        children[parent[v]].append(v)

    # sel: v in D; cov: v not in D but dominated by a child; wait: v not in D, undominated below
    sel = [0] * g.n
    cov = [0.0] * g.n
    wait = [0] * g.n
    for v in reversed(order):
        kids = children[v]
        sel[v] = 1 + sum(min(sel[c], cov[c], wait[c]) for c in kids)
        wait[v] = sum(cov[c] for c in kids)
        if kids:
            base = sum(min(sel[c], cov[c]) for c in kids)
            extra = min(sel[c] - min(sel[c], cov[c]) for c in kids)
            cov[v] = base + extra
        else:
            cov[v] = INF

    out: set[int] = set()
    # (vertex, state) with state in {"sel", "cov", "wait"}
    stack = [(0, "sel" if sel[0] <= cov[0] else "cov")]
    while stack:
        v, state = stack.pop()
        kids = children[v]
        if state == "sel":
            out.add(v)
            for c in kids:
                best = min(sel[c], cov[c], wait[c])
                stack.append((c, "sel" if sel[c] == best else "cov" if cov[c] == best else "wait"))
        elif state == "wait":
            for c in kids:
                stack.append((c, "cov"))
        else:
            forced = min(kids, key=lambda c: (sel[c] - min(sel[c], cov[c]), c))
            for c in kids:
                if c == forced:
                    stack.append((c, "sel"))
                else:
                    stack.append((c, "sel" if sel[c] <= cov[c] else "cov"))
    return frozenset(out)


def exact_opt(g: Graph, cap: int = DEFAULT_OPT_CAP) -> frozenset[int]:
    """tree_opt on trees, brute_force_opt otherwise."""
    return tree_opt(g) if is_tree(g) else brute_force_opt(g, cap)


def normalize_opt_no_leaves(g: Graph, opt: Iterable[int]) -> frozenset[int]:
    """Swap every degree-1 member of a minimum dominating set for its only neighbour."""
    if g.n < 3:
        raise ValueError("leaf exchange needs n >= 3")
    opt = g.check_vertices(opt)
    if not is_dominating(g, opt):
        raise ValueError("opt is not a dominating set")
    return frozenset(g.neighbors(v)[0] if g.degree(v) == 1 else v for v in opt)


def berge_bound(n: int, delta: int) -> int:
    """ceil(n / (delta + 1)): no vertex dominates more than delta + 1 vertices."""
    if delta < 1:
        raise ValueError("delta must be >= 1")
    return -(-n // (delta + 1))


def independent_set_bound_check(g: Graph, i: Iterable[int], t: int, cap: int = DEFAULT_OPT_CAP) -> bool:
    """Confirm gamma(G) >= ceil(|I| / (t - 1)) for an independent I in a K_(1,t)-free G."""
    i = g.check_vertices(i)
    if not is_independent(g, i):
        raise ValueError("i is not an independent set")
    if not is_k1t_free(g, t):
        raise ValueError(f"graph is not K_(1,{t})-free")
    return domination_number(g, cap) * (t - 1) >= len(i)
