"""Online dominating set where each vertex arrives with its entire neighbourhood."""

from .algorithms import AlgorithmSpec, run_algorithm
from .graph import Graph, closed_neighborhood, is_dominating
from .revelation import Game, GameTrace, OnlineInstance, play, validate_order

__all__ = [
    "AlgorithmSpec",
    "Game",
    "GameTrace",
    "Graph",
    "OnlineInstance",
    "closed_neighborhood",
    "is_dominating",
    "play",
    "run_algorithm",
    "validate_order",
]
