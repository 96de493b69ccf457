"""Independent brute-force verification of both players' optima.

Three oracles, each attacking the problem without trusting the solver's
shortcuts:

* `follower_oracle` enumerates every facility permutation and greedily
  fills the follower budget along each one. The follower's problem is a
  linear program over a box-with-budget polytope whose value-relevant
  vertices are exactly these greedy fillings, so the enumeration minimum
  is the true optimum.
* `leader_subset_oracle` maximizes the composed net production rate over
  all nonempty facility subsets, not just prefixes, times the leader
  budget. Some balanced strategy is optimal, so this max is the true
  leader optimum.
* `leader_grid_oracle` attacks the raw max-min problem head on: it sweeps
  leader allocations over an exact rational simplex grid and evaluates the
  follower's best response at every point, lower-bounding the continuum
  optimum. Its inner loop is integer-scaled so fine grids stay cheap.

All enumeration is sequential and reduced with exact comparisons, so
results are deterministic and order-independent.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Union

from . import follower as _follower
from . import leader as _leader
from .core import (
    FollowerStrategy,
    Instance,
    LeaderStrategy,
    Ratio,
    TooLarge,
    ZeroResolution,
    ensure_leader_feasible,
)

FOLLOWER_LIMIT = 7
SUBSET_LIMIT = 20
GRID_LIMIT = 4


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of one oracle-versus-solver comparison.

    gap is oracle_value - solver_value, signed. For the exact oracles
    agreement means gap == 0; for the grid oracle, whose value only
    lower-bounds the continuum optimum, agreement means gap <= 0.
    """

    oracle_value: Ratio
    solver_value: Ratio
    agree: bool
    witness: Optional[Union[LeaderStrategy, FollowerStrategy]]
    gap: Ratio


def follower_oracle(
    inst: Instance, x: LeaderStrategy, *, limit: int = FOLLOWER_LIMIT
) -> OracleVerdict:
    """Compare the greedy best response against the minimum over all
    permutation-greedy vertex strategies."""
    if inst.n > limit:
        raise TooLarge(f"{inst.n} facilities exceeds the permutation limit {limit}")
    ensure_leader_feasible(inst, x)
    best_value: Ratio | None = None
    best_y: list[Ratio] | None = None
    for perm in itertools.permutations(range(inst.n)):
        y, _, _ = _follower._greedy_fill(inst, list(perm))
        value = _follower._total_after_destruction(inst, x.allocation, y)
        if best_value is None or value < best_value:
            best_value = value
            best_y = y
    assert best_value is not None and best_y is not None
    solver_value = _follower.best_response(inst, x).value
    gap = best_value - solver_value
    return OracleVerdict(
        oracle_value=best_value,
        solver_value=solver_value,
        agree=gap == 0,
        witness=FollowerStrategy(tuple(best_y)),
        gap=gap,
    )


def leader_subset_oracle(inst: Instance, *, limit: int = SUBSET_LIMIT) -> OracleVerdict:
    """Compare the solver's value against the exhaustive maximum of the
    composed net production rate over every nonempty facility subset."""
    n = inst.n
    if n > limit:
        raise TooLarge(f"{n} facilities exceeds the subset limit {limit} (2^n subsets)")
    best_rate: Ratio | None = None
    best_positions: tuple[int, ...] | None = None
    for mask in range(1, 1 << n):
        positions = tuple(pos for pos in range(n) if mask >> pos & 1)
        rate = _leader._rate_from_sums(inst, *_leader._subset_sums(inst, positions))
        if best_rate is None or rate > best_rate:
            best_rate = rate
            best_positions = positions
    assert best_rate is not None and best_positions is not None
    oracle_value = best_rate * inst.leader_budget
    solver_value = _leader.solve(inst).value
    gap = oracle_value - solver_value
    return OracleVerdict(
        oracle_value=oracle_value,
        solver_value=solver_value,
        agree=gap == 0,
        witness=_leader._balanced_positions(inst, best_positions),
        gap=gap,
    )


def _grid_points(n: int, cap: int) -> Iterator[list[int]]:
    """All nonnegative integer vectors of length n summing to at most cap.

    Yields one shared mutable list; callers must copy what they keep.
    """
    point = [0] * n

    def rec(i: int, rem: int) -> Iterator[list[int]]:
        if i == n - 1:
            for v in range(rem + 1):
                point[i] = v
                yield point
            return
        for v in range(rem + 1):
            point[i] = v
            yield from rec(i + 1, rem - v)

    return rec(0, cap)


def leader_grid_oracle(
    inst: Instance, resolution: int, *, limit: int = GRID_LIMIT
) -> OracleVerdict:
    """Lower-bound the leader's optimum by exhausting the simplex grid of
    allocations with entries at integer multiples of budget/resolution,
    evaluating the follower's best response at each point exactly.

    The grid has (resolution + n choose n) points; the inner evaluation is
    pure integer arithmetic on pre-scaled rates and quantities.
    """
    if resolution < 1:
        raise ZeroResolution(f"resolution must be at least 1, got {resolution}")
    n = inst.n
    if n > limit:
        raise TooLarge(f"{n} facilities exceeds the grid limit {limit}")

    rate_den = math.lcm(*(p.denominator for p in inst.production_rates))
    scaled_rates = [p.numerator * (rate_den // p.denominator) for p in inst.production_rates]
    quantity_den = math.lcm(
        inst.follower_budget.denominator,
        *(a.denominator for a in inst.destruction_quantities),
    )
    scaled_quantities = [
        a.numerator * (quantity_den // a.denominator)
        for a in inst.destruction_quantities
    ]
    scaled_budget = inst.follower_budget.numerator * (
        quantity_den // inst.follower_budget.denominator
    )
    # ratio ordering key: p_i*k_i/a_i, cleared to integers by lcm(a)
    quantity_lcm = math.lcm(*scaled_quantities)
    ratio_scale = [
        scaled_rates[i] * (quantity_lcm // scaled_quantities[i]) for i in range(n)
    ]

    best_num = 0
    best_den = 1
    best_point = [0] * n
    for point in _grid_points(n, resolution):
        order = sorted(range(n), key=lambda i: -ratio_scale[i] * point[i])
        cum = 0
        value_num = 0
        threshold = -1
        for rank, pos in enumerate(order):
            a = scaled_quantities[pos]
            if cum + a < scaled_budget:
                cum += a
            else:
                threshold = pos
                partial = a - (scaled_budget - cum)
                value_num = scaled_rates[pos] * point[pos] * partial
                for surv in order[rank + 1 :]:
                    value_num += scaled_rates[surv] * point[surv] * a
                break
        assert threshold >= 0, "follower budget below total quantity; unreachable"
        value_den = scaled_quantities[threshold]
        if value_num * best_den > best_num * value_den:
            best_num = value_num
            best_den = value_den
            best_point = list(point)

    step = inst.leader_budget / resolution
    oracle_value = (
        Fraction(best_num, best_den) * inst.leader_budget / (resolution * rate_den)
    )
    solver_value = _leader.solve(inst).value
    gap = oracle_value - solver_value
    return OracleVerdict(
        oracle_value=oracle_value,
        solver_value=solver_value,
        agree=solver_value >= oracle_value,
        witness=LeaderStrategy(tuple(k * step for k in best_point)),
        gap=gap,
    )
