"""Classification of leader strategies by destruction-ratio structure.

A full-budget allocation is *balanced* when every supported facility shares
one destruction ratio, *semi-balanced* when exactly one supported facility
sits strictly below the single ratio shared by all the others, and
*seried-balanced* when it is balanced with support forming a prefix of the
normalized (non-increasing production rate) order. Everything else,
including any allocation that underspends the budget, is Other.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import Instance, LeaderStrategy, ensure_leader_feasible, exact_sum
from .follower import destruction_ratios


class StrategyKind(enum.Enum):
    BALANCED = "balanced"
    SEMI_BALANCED = "semi-balanced"
    SERIED_BALANCED = "seried-balanced"
    OTHER = "other"


@dataclass(frozen=True)
class StrategyClass:
    """Classification verdict with its witnesses.

    support: original ids of the equal-ratio set (balanced kinds) or of the
        equal-ratio majority (semi-balanced); None for Other.
    residual: original id of the strictly-lowest-ratio facility; present
        only when semi-balanced.
    top_index: highest supported position in normalized order, 1-based;
        present only for the balanced kinds. Equals len(support) exactly
        when the support is a prefix, i.e. for seried-balanced strategies.
    """

    kind: StrategyKind
    support: frozenset[int] | None = None
    residual: int | None = None
    top_index: int | None = None

    @property
    def is_balanced(self) -> bool:
        return self.kind in (StrategyKind.BALANCED, StrategyKind.SERIED_BALANCED)


def classify(inst: Instance, x: LeaderStrategy) -> StrategyClass:
    """Classify a feasible leader strategy, most specific kind first."""
    ensure_leader_feasible(inst, x)
    if exact_sum(x.allocation) != inst.leader_budget:
        return StrategyClass(StrategyKind.OTHER)
    ratios = destruction_ratios(inst, x)
    positions = [pos for pos, v in enumerate(x.allocation) if v > 0]
    ids = inst.original_ids
    distinct = set(ratios[pos] for pos in positions)
    if len(distinct) == 1:
        top = max(positions) + 1
        kind = (
            StrategyKind.SERIED_BALANCED
            if top == len(positions)
            else StrategyKind.BALANCED
        )
        return StrategyClass(
            kind,
            support=frozenset(ids[pos] for pos in positions),
            top_index=top,
        )
    if len(distinct) == 2:
        low = min(distinct)
        low_holders = [pos for pos in positions if ratios[pos] == low]
        if len(low_holders) == 1:
            rest = [pos for pos in positions if pos != low_holders[0]]
            return StrategyClass(
                StrategyKind.SEMI_BALANCED,
                support=frozenset(ids[pos] for pos in rest),
                residual=ids[low_holders[0]],
            )
    return StrategyClass(StrategyKind.OTHER)
