"""Altruistic coalition formation games over networks of friends."""

__version__ = "0.1.0"

from .game import (
    CapExceeded,
    CoalitionStructure,
    ContractViolation,
    FriendGraph,
    GameError,
    ParseError,
    bell,
    carve_out,
    coalition_of,
    connected_components,
    diameter,
    enemies,
    enumerate_partitions,
    friends,
    is_clique,
    move_player,
    parse_graph,
    parse_partition,
)
from .valuation import ALL_MODELS, Model, Preference, compare, count_prefers, utility, value
from .stability import Notion, StabilityVerdict, is_blocking, is_weakly_blocking, verify
from .search import ExistenceResult, exists_stable, nash_construct, sf_perfect

__all__ = [
    "ALL_MODELS", "CapExceeded", "CoalitionStructure", "ContractViolation", "ExistenceResult",
    "FriendGraph", "GameError", "Model", "Notion", "ParseError", "Preference", "StabilityVerdict",
    "bell", "carve_out", "coalition_of", "compare", "connected_components", "count_prefers",
    "diameter", "enemies", "enumerate_partitions", "exists_stable", "friends", "is_blocking",
    "is_clique", "is_weakly_blocking", "move_player", "nash_construct", "parse_graph",
    "parse_partition", "sf_perfect", "utility", "value", "verify",
]
