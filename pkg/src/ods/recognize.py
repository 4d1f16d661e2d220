"""Graph-class recognizers for the classes the adversaries claim to build."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph, max_degree


def is_tree(g: Graph) -> bool:
    # Graph is connected by construction, so |E| = n - 1 suffices.
    return g.m == g.n - 1


def biconnected_blocks(g: Graph) -> list[list[tuple[int, int]]]:
    """Edge sets of the blocks (biconnected components), iterative Tarjan."""
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    blocks = []
    edge_stack: list[tuple[int, int]] = []
    for root in g.vertices:
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(g.neighbors(root)))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append((u, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(g.neighbors(w))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[u]:
                    edge_stack.append((u, w))
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[u])
                if low[u] >= disc[p]:
                    block = []
                    while True:
                        e = edge_stack.pop()
                        block.append(e)
                        if e == (p, u):
                            break
                    blocks.append(block)
    return blocks


def is_cactus(g: Graph) -> bool:
    """Every block is a single edge or a simple cycle (|E_b| == |V_b|)."""
    for block in biconnected_blocks(g):
        if len(block) == 1:
            continue
        verts = {x for e in block for x in e}
        if len(block) != len(verts):
            return False
    return True


def is_k1t_free(g: Graph, t: int) -> bool:
    """No vertex has ``t`` pairwise non-adjacent neighbours."""
    if t < 3:
        raise ValueError(f"K_(1,t)-freeness needs t >= 3, got {t}")
    for v in g.vertices:
        nbrs = g.neighbors(v)
        if len(nbrs) < t:
            continue
        for combo in combinations(nbrs, t):
            if all(not g.has_edge(a, b) for a, b in combinations(combo, 2)):
                return False
    return True


def is_threshold(g: Graph) -> bool:
    """Peel isolated or dominating vertices until nothing is left."""
    adj = g.adjacency_sets()
    while adj:
        size = len(adj)
        pick = next((v for v, s in adj.items() if not s or len(s) == size - 1), None)
        if pick is None:
            return False
        for w in adj.pop(pick):
            adj[w].discard(pick)
    return True


def is_bipartite(g: Graph) -> bool:
    color = {0: 0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in g.neighbors(u):
            if w not in color:
                color[w] = 1 - color[u]
                stack.append(w)
            elif color[w] == color[u]:
                return False
    return True


def euler_planar_bipartite_bound(g: Graph) -> bool:
    """|E| <= 2n - 4 for n >= 3: necessary for planar bipartite, not sufficient."""
    return g.n < 3 or g.m <= 2 * g.n - 4


def treewidth_at_most_2(g: Graph) -> bool:
    """Series/pendant reduction: delete degree <= 1, bypass degree 2 (merging parallel edges)."""
    adj = g.adjacency_sets()
    todo = [v for v in adj if len(adj[v]) <= 2]
    while todo and len(adj) > 1:
        v = todo.pop()
        if v not in adj or len(adj[v]) > 2:
            continue
        nbrs = adj.pop(v)
        for w in nbrs:
            adj[w].discard(v)
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
        todo.extend(w for w in nbrs if len(adj[w]) <= 2)
    return len(adj) <= 1


def certify(g: Graph, tag: str, param: int | None = None) -> bool:
    """Dispatch a class tag (as used in reports) to its recognizer."""
    if tag == "tree":
        return is_tree(g)
    if tag == "cactus":
        return is_cactus(g)
    if tag in ("delta", "bounded"):
        return max_degree(g) <= param if g.n > 1 else True
    if tag in ("claw", "k1t-free"):
        return is_k1t_free(g, param)
    if tag == "threshold":
        return is_threshold(g)
    if tag == "planar-bipartite":
        return is_bipartite(g) and euler_planar_bipartite_bound(g)
    if tag in ("sp", "tw<=2"):
        return treewidth_at_most_2(g)
    raise ValueError(f"unknown class tag {tag!r}")


def certificate_name(tag: str, param: int | None = None) -> str:
    return {
        "tree": "tree",
        "cactus": "cactus",
        "delta": f"maxdeg<={param}",
        "bounded": f"maxdeg<={param}",
        "claw": f"K1,{param}-free",
        "k1t-free": f"K1,{param}-free",
        "threshold": "threshold",
        "planar-bipartite": "bipartite+euler",
        "sp": "tw<=2",
        "tw<=2": "tw<=2",
    }[tag]
