"""Charging-scheme audits on finished traces, in exact rational arithmetic.

Two schemes are covered: even spreading over newly dominated vertices
(trees and cacti under 2-DOMINATE) and the heavy/light scheme that moves
charge onto a minimum dominating set (bounded degree under
ceil(sqrt(delta))-DOMINATE).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algorithms import sqrt_ceil
from .graph import Graph, is_dominating
from .revelation import GameTrace


class ModelViolation(ValueError):
    """A trace that the charging scheme cannot be applied to."""


@dataclass(frozen=True)
class ChargeMap:
    charge: dict[int, Fraction]
    source: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> Fraction:
        return sum(self.charge.values(), Fraction(0))

    def of(self, vertices: Iterable[int]) -> Fraction:
        return sum((self.charge.get(v, Fraction(0)) for v in vertices), Fraction(0))

    def to_dict(self) -> dict:
        return {str(v): _frac(c) for v, c in sorted(self.charge.items())}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def spread_even(trace: GameTrace) -> ChargeMap:
    """Each selected v_i gives 1/|X_i| to every vertex of X_i = N[v_i] & U_i."""
    charge: dict[int, Fraction] = {}
    source: dict[int, int] = {}
    for r in trace.records:
        if not r.selected:
            continue
        if not r.newly_dominated:
            raise ModelViolation(f"step {r.step}: selected vertex {r.vertex} dominates nothing new")
        share = Fraction(1, len(r.newly_dominated))
        for x in r.newly_dominated:
            if x in source:
                raise ModelViolation(f"vertex {x} charged by both {source[x]} and {r.vertex}")
            source[x] = r.vertex
            charge[x] = share
    return ChargeMap(charge, source)


def conserved(chargemap: ChargeMap, trace: GameTrace) -> bool:
    return chargemap.total == len(trace.selected)


def concentration(chargemap: ChargeMap, g: Graph, opt: Iterable[int]) -> Fraction:
    """max over v in OPT of the charge sitting on N[v]."""
    opt = g.check_vertices(opt)
    if not is_dominating(g, opt):
        raise ValueError("opt is not a dominating set")
    return max(chargemap.of(g.closed(v)) for v in opt)


def charge_one_structure(chargemap: ChargeMap, trace: GameTrace) -> dict:
    """Vertices of charge exactly 1 must be pairwise non-adjacent, share no neighbour,
    and no closed neighbourhood may hold two of them."""
    g = trace.instance.graph
    ones = sorted(v for v, c in chargemap.charge.items() if c == 1)
    violations = []
    for a, b in combinations(ones, 2):
        if g.has_edge(a, b):
            violations.append({"kind": "adjacent", "vertices": [a, b]})
        common = sorted(g.neighbor_set(a) & g.neighbor_set(b))
        if common:
            violations.append({"kind": "common-neighbour", "vertices": [a, b], "via": common})
    ones_set = set(ones)
    for v in g.vertices:
        inside = sorted(g.closed(v) & ones_set)
        if len(inside) > 1:
            violations.append({"kind": "crowded-neighbourhood", "centre": v, "vertices": inside})
    return {"charge_one": ones, "violations": violations, "ok": not violations}


@dataclass(frozen=True)
class HeavyLightPartition:
    heavy: frozenset[int]
    light: frozenset[int]
    threshold: int
    heavy_bound: int  # floor(n / ceil(sqrt(delta)))

    @property
    def heavy_bound_ok(self) -> bool:
        return len(self.heavy) <= self.heavy_bound


def classify_heavy_light(trace: GameTrace, delta: int) -> HeavyLightPartition:
    """Heavy: selected with at least ceil(sqrt(delta)) undominated neighbours at its step."""
    k = sqrt_ceil(delta)
    heavy, light = set(), set()
    for r in trace.records:
        if r.selected:
            (heavy if r.undominated_neighbor_count >= k else light).add(r.vertex)
    return HeavyLightPartition(frozenset(heavy), frozenset(light), k, trace.instance.n // k)


@dataclass(frozen=True)
class BoundedDegreeAudit:
    charges: ChargeMap  # on OPT vertices only
    light_chargers: dict[int, frozenset[int]]  # OPT vertex -> light non-OPT vertices charging it
    violations: list

    def max_charge(self) -> Fraction:
        return max(self.charges.charge.values(), default=Fraction(0))


def spread_bounded_degree(trace: GameTrace, opt: Iterable[int], partition: HeavyLightPartition) -> BoundedDegreeAudit:
    """Move all charge from S onto OPT.

    S & OPT keeps its unit; heavy vertices outside OPT spread evenly over
    OPT; light vertices outside OPT split their unit over the vertices they
    save, each share going to the saved vertex itself if it is in OPT, else
    to its earliest-revealed neighbour in OPT.
    """
    g = trace.instance.graph
    opt = g.check_vertices(opt)
    if not is_dominating(g, opt):
        raise ValueError("opt is not a dominating set")
    pos = trace.position
    charge = {v: Fraction(0) for v in opt}
    source: dict[int, int] = {}
    chargers: dict[int, set[int]] = {v: set() for v in opt}
    violations = []
    by_vertex = {r.vertex: r for r in trace.records}
    for v in sorted(trace.selected, key=pos.get):
        if v in opt:
            charge[v] += 1
        elif v in partition.heavy:
            share = Fraction(1, len(opt))
            for w in opt:
                charge[w] += share
        else:
            saved = by_vertex[v].saves
            if not saved:
                violations.append({"kind": "light-without-save", "vertex": v})
                continue
            share = Fraction(1, len(saved))
            for u in saved:
                target = u if u in opt else min(g.neighbor_set(u) & opt, key=pos.get)
                charge[target] += share
                chargers[target].add(v)
    return BoundedDegreeAudit(ChargeMap(charge, source),
                              {v: frozenset(s) for v, s in chargers.items()}, violations)


def at_most_three_sqrt(x: Fraction, delta: int) -> bool:
    """x <= 3 sqrt(delta), exactly: compare squares."""
    return x <= 0 or x * x <= 9 * delta


def heavy_ratio_ok(heavy: int, opt: int, delta: int) -> bool:
    """|H| / |OPT| <= sqrt(delta) + 1/sqrt(delta), i.e. |H| sqrt(delta) <= (delta + 1) |OPT|."""
    return heavy * heavy * delta <= (delta + 1) ** 2 * opt * opt


def audit_even(trace: GameTrace, opt: Iterable[int], normalize: bool = True) -> dict:
    """Full even-spread audit as a JSON-ready report."""
    from .opt import normalize_opt_no_leaves
    from .recognize import is_tree

    g = trace.instance.graph
    opt = frozenset(opt)
    if normalize and is_tree(g) and g.n >= 3:
        opt = normalize_opt_no_leaves(g, opt)
    cm = spread_even(trace)
    structure = charge_one_structure(cm, trace)
    conc = concentration(cm, g, opt)
    return {
        "scheme": "even",
        "conserved": conserved(cm, trace),
        "concentration": _frac(conc),
        "opt": sorted(opt),
        "violations": structure["violations"],
    }


def audit_bounded_degree(trace: GameTrace, opt: Iterable[int], delta: int) -> dict:
    part = classify_heavy_light(trace, delta)
    audit = spread_bounded_degree(trace, opt, part)
    opt = frozenset(opt)
    violations = list(audit.violations)
    if not part.heavy_bound_ok:
        violations.append({"kind": "too-many-heavy", "heavy": len(part.heavy), "bound": part.heavy_bound})
    if not heavy_ratio_ok(len(part.heavy), len(opt), delta):
        violations.append({"kind": "heavy-ratio", "heavy": len(part.heavy), "opt": len(opt)})
    for v, who in sorted(audit.light_chargers.items()):
        if len(who) > part.threshold:
            violations.append({"kind": "light-chargers", "vertex": v, "count": len(who)})
    for v, c in sorted(audit.charges.charge.items()):
        if not at_most_three_sqrt(c, delta):
            violations.append({"kind": "charge-over-3sqrt", "vertex": v, "charge": _frac(c)})
    return {
        "scheme": "bounded-degree",
        "conserved": audit.charges.total == len(trace.selected),
        "concentration": _frac(audit.max_charge()),
        "heavy": sorted(part.heavy),
        "light": sorted(part.light),
        "opt": sorted(opt),
        "violations": violations,
    }
