"""Follower side of the game: destruction ratios, the greedy best response,
and evaluation of total production after destruction.

Given a leader allocation, the follower's optimal move is a fractional-
knapsack greedy: destroy facilities in non-increasing order of destruction
ratio (production destroyed per unit of destructive resource) until the
budget runs out, partially destroying at most the last facility reached.
Ties between equal ratios are broken by ascending original id, which picks
one canonical optimum out of the (possibly many) equally good orderings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ZERO,
    FollowerStrategy,
    Instance,
    LeaderStrategy,
    Ratio,
    ensure_follower_feasible,
    ensure_leader_feasible,
)


@dataclass(frozen=True)
class FollowerBestResponse:
    """Canonical optimal follower move against a fixed leader allocation.

    order: all facilities (original ids) sorted by non-increasing
        destruction ratio, ties by ascending id; the destruction sequence.
    threshold: id of the last facility the budget reaches (the only one
        that may be partially destroyed).
    destroyed: ids of every fully or partially destroyed facility.
    strategy: the destructive allocation itself, normalized order.
    value: the leader's total production after this destruction, i.e. the
        worst case over all feasible follower moves.
    """

    order: tuple[int, ...]
    threshold: int
    destroyed: frozenset[int]
    strategy: FollowerStrategy
    value: Ratio


def destruction_ratios(inst: Instance, x: LeaderStrategy) -> tuple[Ratio, ...]:
    """Production destroyed per unit of destructive resource, per facility,
    in normalized instance order."""
    ensure_leader_feasible(inst, x)
    return tuple(
        p * xi / a
        for p, xi, a in zip(
            inst.production_rates, x.allocation, inst.destruction_quantities
        )
    )


def _greedy_fill(inst: Instance, order: list[int]) -> tuple[list[Ratio], int, list[int]]:
    """Spend the full follower budget along `order` (normalized positions).

    Returns the allocation, the threshold position, and the destroyed
    positions. The threshold always exists because the follower budget is
    strictly below the total destruction quantity.
    """
    y: list[Ratio] = [ZERO] * inst.n
    quantities = inst.destruction_quantities
    budget = inst.follower_budget
    cum = ZERO
    destroyed: list[int] = []
    for pos in order:
        a = quantities[pos]
        if cum + a < budget:
            y[pos] = a
            destroyed.append(pos)
            cum += a
        else:
            y[pos] = budget - cum
            destroyed.append(pos)
            return y, pos, destroyed
    raise AssertionError("follower budget below total quantity; unreachable")


def _total_after_destruction(
    inst: Instance, x: tuple[Ratio, ...], y: list[Ratio] | tuple[Ratio, ...]
) -> Ratio:
    total = ZERO
    for p, xi, a, yi in zip(
        inst.production_rates, x, inst.destruction_quantities, y
    ):
        if xi:
            total += p * xi * (a - yi) / a
    return total


def best_response(inst: Instance, x: LeaderStrategy) -> FollowerBestResponse:
    """Compute the canonical optimal follower response to `x`.

    The returned value minimizes total production after destruction over
    every feasible follower strategy; the follower's whole budget is spent.
    """
    ratios = destruction_ratios(inst, x)
    ids = inst.original_ids
    order = sorted(range(inst.n), key=lambda pos: (-ratios[pos], ids[pos]))
    y, threshold_pos, destroyed = _greedy_fill(inst, order)
    value = _total_after_destruction(inst, x.allocation, y)
    return FollowerBestResponse(
        order=tuple(ids[pos] for pos in order),
        threshold=ids[threshold_pos],
        destroyed=frozenset(ids[pos] for pos in destroyed),
        strategy=FollowerStrategy(tuple(y)),
        value=value,
    )


def evaluate(inst: Instance, x: LeaderStrategy, y: FollowerStrategy) -> Ratio:
    """Total production after destruction: the sum over facilities of
    production minus the destroyed share, p_i * x_i * (1 - y_i / a_i)."""
    ensure_leader_feasible(inst, x)
    ensure_follower_feasible(inst, y)
    return _total_after_destruction(inst, x.allocation, y.allocation)


def production_breakdown(
    inst: Instance, x: LeaderStrategy, y: FollowerStrategy
) -> tuple[tuple[Ratio, ...], tuple[Ratio, ...]]:
    """Per-facility productions p_i*x_i and reductions p_i*x_i*y_i/a_i, in
    normalized order. Their difference sums to `evaluate`."""
    ensure_leader_feasible(inst, x)
    ensure_follower_feasible(inst, y)
    productions = tuple(
        p * xi for p, xi in zip(inst.production_rates, x.allocation)
    )
    reductions = tuple(
        prod * yi / a
        for prod, yi, a in zip(
            productions, y.allocation, inst.destruction_quantities
        )
    )
    return productions, reductions


def worst_case(inst: Instance, x: LeaderStrategy) -> Ratio:
    """Total production after destruction under the follower's best response."""
    return best_response(inst, x).value
