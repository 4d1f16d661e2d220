"""Adaptive adversaries that build lower-bound instances against a given algorithm."""

from ._base import AdversaryOutcome, Builder
from .bounded import claw_adversary, delta_adversary
from .noncompetitive import planar_bipartite_adversary, sp_adversary, threshold_adversary, threshold_build
from .trees import CactusRegion, cactus_adversary, cactus_regions, tree_adversary

ADVERSARIES = {
    "tree": tree_adversary,
    "cactus": cactus_adversary,
    "delta": delta_adversary,
    "claw": claw_adversary,
    "threshold": threshold_adversary,
    "planar-bipartite": planar_bipartite_adversary,
    "sp": sp_adversary,
}

__all__ = [
    "ADVERSARIES",
    "AdversaryOutcome",
    "Builder",
    "CactusRegion",
    "cactus_adversary",
    "cactus_regions",
    "claw_adversary",
    "delta_adversary",
    "planar_bipartite_adversary",
    "sp_adversary",
    "threshold_adversary",
    "threshold_build",
    "tree_adversary",
]
