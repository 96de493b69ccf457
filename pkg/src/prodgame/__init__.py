"""Exact solver for a two-player Stackelberg production game.

A leader spreads a production budget over facilities with known production
rates; a follower then spends a destruction budget against them, each
facility requiring a known quantity to destroy. All arithmetic is exact
rational, so solver outputs and oracle comparisons are exact equalities.
"""

from .classify import StrategyClass, StrategyKind, classify
from .core import (
    EmptyInstance,
    EmptySupport,
    Facility,
    FollowerStrategy,
    GameError,
    InfeasibleStrategy,
    Instance,
    InvalidSupport,
    LeaderStrategy,
    NonPositiveBudget,
    NonPositiveQuantity,
    NonPositiveRate,
    NotSemiBalanced,
    ParseError,
    Ratio,
    TooLarge,
    TrivialFollower,
    ValidationError,
    ZeroResolution,
    format_ratio,
    instance_from_json,
    instance_to_json,
    parse_ratio,
    validate_instance,
)
from .follower import (
    FollowerBestResponse,
    best_response,
    destruction_ratios,
    evaluate,
    production_breakdown,
    worst_case,
)
from .leader import (
    SolveReport,
    balanced_allocation,
    composed_net_rate,
    semi_balanced_allocation,
    semi_balanced_value,
    solve,
)
from .oracle import (
    OracleVerdict,
    follower_oracle,
    leader_grid_oracle,
    leader_subset_oracle,
)
from .sampling import random_follower_strategy, random_instance, random_leader_strategy

__version__ = "0.1.0"

__all__ = [
    "EmptyInstance",
    "EmptySupport",
    "Facility",
    "FollowerBestResponse",
    "FollowerStrategy",
    "GameError",
    "InfeasibleStrategy",
    "Instance",
    "InvalidSupport",
    "LeaderStrategy",
    "NonPositiveBudget",
    "NonPositiveQuantity",
    "NonPositiveRate",
    "NotSemiBalanced",
    "OracleVerdict",
    "ParseError",
    "Ratio",
    "SolveReport",
    "StrategyClass",
    "StrategyKind",
    "TooLarge",
    "TrivialFollower",
    "ValidationError",
    "ZeroResolution",
    "balanced_allocation",
    "best_response",
    "classify",
    "composed_net_rate",
    "destruction_ratios",
    "evaluate",
    "follower_oracle",
    "format_ratio",
    "instance_from_json",
    "instance_to_json",
    "leader_grid_oracle",
    "leader_subset_oracle",
    "parse_ratio",
    "production_breakdown",
    "random_follower_strategy",
    "random_instance",
    "random_leader_strategy",
    "semi_balanced_allocation",
    "semi_balanced_value",
    "solve",
    "validate_instance",
    "worst_case",
]
