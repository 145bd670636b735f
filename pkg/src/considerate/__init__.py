"""Considerate equilibria in resource selection games with social networks."""

from considerate.game import GameInstance, load_profile, player_cost, total_cost
from considerate.social import SocialGraph, enumerate_cliques, neighborhood
from considerate.moves import Deviation, MoveClass, apply_deviation, classify_move
from considerate.solver import SolverConfig, greedy_nash, solve_ce
from considerate.oracle import Budget, classify_state, find_weak_considerate_clique_move

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "Deviation",
    "GameInstance",
    "MoveClass",
    "SocialGraph",
    "SolverConfig",
    "apply_deviation",
    "classify_move",
    "classify_state",
    "enumerate_cliques",
    "find_weak_considerate_clique_move",
    "greedy_nash",
    "load_profile",
    "neighborhood",
    "player_cost",
    "solve_ce",
    "total_cost",
]
