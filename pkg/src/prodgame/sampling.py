"""Seeded random instances and strategies for oracle checks and tests.

Values are drawn on small-denominator grids so every generated quantity is
an exact rational with a compact representation; validity of generated
instances is guaranteed by construction (positive rates and quantities,
follower budget strictly inside the total destruction quantity).
"""

from __future__ import annotations

from fractions import Fraction
from random import Random
from typing import Sequence

from .core import (
    ZERO,
    FollowerStrategy,
    Instance,
    LeaderStrategy,
    Ratio,
    exact_sum,
    validate_instance,
)

# dyadic denominators keep common denominators tiny even at n = 1e6
DEFAULT_DENOMINATORS = (1, 2, 4)
RATE_LIMIT = 20
QUANTITY_LIMIT = 2
LEADER_BUDGET_LIMIT = 10
BUDGET_GRID = 256


class _FractionCache:
    """Memoized Fraction(num, den) construction; generated values repeat."""

    def __init__(self) -> None:
        self._cache: dict[tuple[int, int], Fraction] = {}

    def __call__(self, num: int, den: int) -> Fraction:
        key = (num, den)
        f = self._cache.get(key)
        if f is None:
            f = Fraction(num, den)
            self._cache[key] = f
        return f


def random_instance(
    rng: Random,
    n: int,
    denominators: Sequence[int] = DEFAULT_DENOMINATORS,
    budget_fraction: Fraction | None = None,
) -> Instance:
    """A valid random instance with production rates in (0, 20], destruction
    quantities in (0, 2], leader budget in (0, 10], and follower budget
    uniform on a fine grid over (0, total destruction quantity).

    `budget_fraction` pins the follower budget to that fraction of the
    total destruction quantity instead of drawing it; benchmarks use this
    to generate instances of comparable difficulty at different sizes.
    """
    if n < 1:
        raise ValueError(f"need at least one facility, got {n}")
    if budget_fraction is not None and not 0 < budget_fraction < 1:
        raise ValueError(f"budget fraction must lie in (0, 1), got {budget_fraction}")
    rand = rng.random
    frac = _FractionCache()
    dens = tuple(denominators)
    n_dens = len(dens)
    rates = []
    quantities = []
    for _ in range(n):
        d = dens[int(rand() * n_dens)]
        rates.append(frac(int(rand() * (RATE_LIMIT * d)) + 1, d))
        d = dens[int(rand() * n_dens)]
        quantities.append(frac(int(rand() * (QUANTITY_LIMIT * d)) + 1, d))
    d = dens[int(rand() * n_dens)]
    leader_budget = frac(int(rand() * (LEADER_BUDGET_LIMIT * d)) + 1, d)
    total_quantity = exact_sum(quantities)
    if budget_fraction is None:
        budget_fraction = Fraction(rng.randint(1, BUDGET_GRID - 1), BUDGET_GRID)
    follower_budget = total_quantity * budget_fraction
    return validate_instance(rates, quantities, leader_budget, follower_budget)


def random_leader_strategy(rng: Random, inst: Instance) -> LeaderStrategy:
    """A feasible leader allocation: weights on a random support, scaled to
    spend the whole budget or (one time in four) only part of it."""
    n = inst.n
    support_size = rng.randint(1, n)
    support = rng.sample(range(n), support_size)
    weights = [0] * n
    for pos in support:
        weights[pos] = rng.randint(1, 16)
    total = sum(weights)
    spend = inst.leader_budget
    if rng.random() < 0.25:
        spend = spend * Fraction(rng.randint(1, 15), 16)
    return LeaderStrategy(tuple(Fraction(w, total) * spend for w in weights))


def random_follower_strategy(rng: Random, inst: Instance) -> FollowerStrategy:
    """A feasible follower allocation, mixing polytope vertices (greedy fills
    along a random facility order, possibly with a partial budget) with
    interior points (random caps scaled back inside the budget)."""
    n = inst.n
    quantities = inst.destruction_quantities
    budget = inst.follower_budget
    if rng.random() < 0.5:
        budget = budget * Fraction(rng.randint(0, 16), 16)
    if rng.random() < 0.5:
        # vertex: fill facilities in random order until the budget runs out
        y: list[Ratio] = [ZERO] * n
        remaining = budget
        for pos in rng.sample(range(n), n):
            if remaining <= 0:
                break
            amount = min(quantities[pos], remaining)
            y[pos] = amount
            remaining -= amount
        return FollowerStrategy(tuple(y))
    raw = [quantities[pos] * Fraction(rng.randint(0, 8), 8) for pos in range(n)]
    total = exact_sum(raw)
    if total > budget:
        scale = budget / total
        raw = [v * scale for v in raw]
    return FollowerStrategy(tuple(raw))
