"""Core value types for the Stackelberg production game.

Everything the solver touches is an exact rational (`fractions.Fraction`):
production rates, destruction quantities, budgets, and allocations. No
floating point enters any computation, so every downstream equality test
is exact. Floats appear only as presentation-side approximations and as
monotone sort pre-keys (see `_descending_order`), never in arithmetic.

An `Instance` is stored in *normalized order*: facilities sorted by
non-increasing production rate, ties broken by ascending original id
(1-based input position). All module-level operations work in normalized
order; `Instance.from_input_order` / `Instance.to_input_order` convert
allocation vectors between the two orderings.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence, Union

Ratio = Fraction
RatioLike = Union[Fraction, int, str]

ZERO = Fraction(0)


class GameError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(GameError):
    """Malformed rational string, JSON document, or input shape."""


class ValidationError(GameError):
    """An instance-level invariant is violated."""


class EmptyInstance(ValidationError):
    """The instance has no facilities."""


class NonPositiveRate(ValidationError):
    """Some production rate is zero or negative."""


class NonPositiveQuantity(ValidationError):
    """Some destruction quantity is zero or negative."""


class NonPositiveBudget(ValidationError):
    """A budget is zero or negative."""


class TrivialFollower(ValidationError):
    """The follower budget covers every facility, so everything can be
    destroyed and the game is trivial. Excluded by assumption."""


class InfeasibleStrategy(GameError):
    """A strategy violates its feasibility constraints."""


class EmptySupport(GameError):
    """A support set that must be nonempty is empty."""


class InvalidSupport(GameError):
    """A support set references unknown or duplicate facility ids."""


class NotSemiBalanced(GameError):
    """The requested residual allocation does not describe a
    semi-balanced strategy."""


class TooLarge(GameError):
    """The instance exceeds a brute-force oracle's size limit."""


class ZeroResolution(GameError):
    """A grid resolution below one was requested."""


def parse_ratio(text: RatioLike) -> Ratio:
    """Parse an exact rational from a fraction string ("9/10"), a decimal
    string ("0.9", converted exactly to 9/10), or an integer.

    JSON floats are rejected: a float like 0.9 is not the rational 9/10,
    and silently converting it would smuggle rounding error into an
    otherwise exact pipeline.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        raise ParseError(
            f"refusing inexact float {text!r}; pass a string such as '9/10' or '0.9'"
        )
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not a rational: {text!r}") from exc
    raise ParseError(f"not a rational: {text!r}")


def format_ratio(value: Ratio) -> str:
    """Format a rational as a fraction string that `parse_ratio` round-trips."""
    return str(value)


def approx(value: Ratio, digits: int = 6) -> str:
    """Decimal approximation for human-facing output only."""
    return f"{float(value):.{digits}g}"


class Facility(NamedTuple):
    """One production facility.

    ident is the 1-based position of the facility in the original input;
    every reported strategy, support set, and permutation uses these ids.
    """

    ident: int
    production_rate: Ratio
    destruction_quantity: Ratio


@dataclass(frozen=True)
class Instance:
    """A validated game instance in normalized (sorted) facility order.

    Construct through `validate_instance` or `instance_from_json`; the
    constructor itself performs no checking.
    """

    production_rates: tuple[Ratio, ...]
    destruction_quantities: tuple[Ratio, ...]
    original_ids: tuple[int, ...]
    leader_budget: Ratio
    follower_budget: Ratio

    @property
    def n(self) -> int:
        return len(self.production_rates)

    @property
    def facilities(self) -> tuple[Facility, ...]:
        return tuple(
            Facility(i, p, a)
            for i, p, a in zip(
                self.original_ids, self.production_rates, self.destruction_quantities
            )
        )

    @cached_property
    def _id_to_position(self) -> dict[int, int]:
        return {ident: pos for pos, ident in enumerate(self.original_ids)}

    def position_of(self, ident: int) -> int:
        """Normalized position of the facility with the given original id."""
        try:
            return self._id_to_position[ident]
        except KeyError:
            raise InvalidSupport(f"unknown facility id {ident}") from None

    def positions_of(self, idents: Iterable[int]) -> tuple[int, ...]:
        """Normalized positions for a set of original ids, rejecting duplicates."""
        seen: set[int] = set()
        positions = []
        for ident in idents:
            if ident in seen:
                raise InvalidSupport(f"duplicate facility id {ident}")
            seen.add(ident)
            positions.append(self.position_of(ident))
        return tuple(positions)

    def from_input_order(self, values: Sequence[RatioLike]) -> tuple[Ratio, ...]:
        """Reorder a vector given in original input order into normalized order."""
        if len(values) != self.n:
            raise InfeasibleStrategy(
                f"expected {self.n} entries, got {len(values)}"
            )
        ratios = [parse_ratio(v) for v in values]
        return tuple(ratios[ident - 1] for ident in self.original_ids)

    def to_input_order(self, values: Sequence[Ratio]) -> tuple[Ratio, ...]:
        """Reorder a normalized-order vector back into original input order."""
        if len(values) != self.n:
            raise InfeasibleStrategy(
                f"expected {self.n} entries, got {len(values)}"
            )
        out: list[Ratio] = [ZERO] * self.n
        for pos, ident in enumerate(self.original_ids):
            out[ident - 1] = values[pos]
        return tuple(out)


@dataclass(frozen=True)
class LeaderStrategy:
    """An allocation of the leader's resources, in normalized facility order.

    Feasibility (nonnegative entries summing to at most the leader budget)
    is checked against an instance by `ensure_leader_feasible`, not here.
    """

    allocation: tuple[Ratio, ...]

    @classmethod
    def of(cls, values: Iterable[RatioLike]) -> "LeaderStrategy":
        return cls(tuple(parse_ratio(v) for v in values))

    @property
    def spent(self) -> Ratio:
        return sum(self.allocation, ZERO)


@dataclass(frozen=True)
class FollowerStrategy:
    """An allocation of the follower's destructive resources, in normalized
    facility order."""

    allocation: tuple[Ratio, ...]

    @classmethod
    def of(cls, values: Iterable[RatioLike]) -> "FollowerStrategy":
        return cls(tuple(parse_ratio(v) for v in values))

    @property
    def spent(self) -> Ratio:
        return sum(self.allocation, ZERO)


def exact_sum(values: Iterable[Ratio]) -> Ratio:
    """Exact sum of rationals, linear in the input size.

    Accumulates integer numerators per distinct denominator and combines
    the handful of buckets at the end, avoiding a gcd per addition.
    """
    buckets: dict[int, int] = {}
    for v in values:
        d = v.denominator
        buckets[d] = buckets.get(d, 0) + v.numerator
    total = ZERO
    for den, num in buckets.items():
        total += Fraction(num, den)
    return total


def _descending_order(values: Sequence[Ratio]) -> list[int]:
    """Indices sorting `values` into non-increasing order, ties by ascending
    index, using exact comparisons throughout.

    A float pre-key does the bulk sort: rounding to nearest is monotone, so
    the order across distinct pre-keys is exact, and sort stability gives
    the ascending-index tie-break for free. Runs of equal pre-keys whose
    exact values differ (distinct rationals closer than float resolution,
    or values overflowing float range) are re-sorted exactly.
    """
    n = len(values)
    keys = [0.0] * n
    for i, v in enumerate(values):
        try:
            keys[i] = -float(v)
        except OverflowError:
            keys[i] = -math.inf if v > 0 else math.inf
    order = sorted(range(n), key=keys.__getitem__)
    out: list[int] = []
    start = 0
    while start < n:
        stop = start + 1
        k = keys[order[start]]
        while stop < n and keys[order[stop]] == k:
            stop += 1
        run = order[start:stop]
        first = values[run[0]]
        if any(values[i] != first for i in run):
            run.sort(key=lambda i: (-values[i], i))
        out.extend(run)
        start = stop
    return out


def validate_instance(
    production_rates: Sequence[RatioLike],
    destruction_quantities: Sequence[RatioLike],
    leader_budget: RatioLike,
    follower_budget: RatioLike,
) -> Instance:
    """Validate raw instance data and return a normalized `Instance`.

    Raises:
        EmptyInstance: no facilities.
        ParseError: malformed rationals or mismatched vector lengths.
        NonPositiveRate / NonPositiveQuantity / NonPositiveBudget:
            a rate, quantity, or budget is not strictly positive.
        TrivialFollower: the follower budget is at least the total
            destruction quantity, so the whole instance can be destroyed.
    """
    rates = [parse_ratio(v) for v in production_rates]
    quantities = [parse_ratio(v) for v in destruction_quantities]
    if len(rates) != len(quantities):
        raise ParseError(
            f"{len(rates)} production rates but {len(quantities)} destruction quantities"
        )
    n = len(rates)
    if n == 0:
        raise EmptyInstance("instance has no facilities")
    r_l = parse_ratio(leader_budget)
    r_f = parse_ratio(follower_budget)
    for i, p in enumerate(rates):
        if p.numerator <= 0:
            raise NonPositiveRate(f"facility {i + 1} has production rate {p} <= 0")
    for i, a in enumerate(quantities):
        if a.numerator <= 0:
            raise NonPositiveQuantity(
                f"facility {i + 1} has destruction quantity {a} <= 0"
            )
    if r_l <= 0 or r_f <= 0:
        raise NonPositiveBudget(f"budgets must be positive, got {r_l} and {r_f}")
    total_quantity = exact_sum(quantities)
    if r_f >= total_quantity:
        raise TrivialFollower(
            f"follower budget {r_f} >= total destruction quantity {total_quantity}; "
            "the follower could destroy everything"
        )
    order = _descending_order(rates)
    return Instance(
        production_rates=tuple(rates[i] for i in order),
        destruction_quantities=tuple(quantities[i] for i in order),
        original_ids=tuple(i + 1 for i in order),
        leader_budget=r_l,
        follower_budget=r_f,
    )


def ensure_leader_feasible(inst: Instance, strategy: LeaderStrategy) -> None:
    """Raise `InfeasibleStrategy` unless the allocation is a feasible leader
    strategy: one entry per facility, all nonnegative, total at most the
    leader budget. Underspending is feasible; only the solver insists on
    spending the whole budget."""
    x = strategy.allocation
    if len(x) != inst.n:
        raise InfeasibleStrategy(f"expected {inst.n} entries, got {len(x)}")
    for pos, v in enumerate(x):
        if v < 0:
            raise InfeasibleStrategy(
                f"facility {inst.original_ids[pos]}: allocation {v} < 0"
            )
    total = exact_sum(x)
    if total > inst.leader_budget:
        raise InfeasibleStrategy(
            f"total allocation {total} exceeds leader budget {inst.leader_budget}"
        )


def ensure_follower_feasible(inst: Instance, strategy: FollowerStrategy) -> None:
    """Raise `InfeasibleStrategy` unless the allocation is a feasible follower
    strategy: nonnegative, capped per facility by its destruction quantity,
    total at most the follower budget."""
    y = strategy.allocation
    if len(y) != inst.n:
        raise InfeasibleStrategy(f"expected {inst.n} entries, got {len(y)}")
    for pos, v in enumerate(y):
        if v < 0:
            raise InfeasibleStrategy(
                f"facility {inst.original_ids[pos]}: allocation {v} < 0"
            )
        if v > inst.destruction_quantities[pos]:
            raise InfeasibleStrategy(
                f"facility {inst.original_ids[pos]}: allocation {v} exceeds "
                f"destruction quantity {inst.destruction_quantities[pos]}"
            )
    total = exact_sum(y)
    if total > inst.follower_budget:
        raise InfeasibleStrategy(
            f"total allocation {total} exceeds follower budget {inst.follower_budget}"
        )


def instance_from_json(text: str) -> Instance:
    """Parse and validate an instance from its JSON document form.

    The document is `{"facilities": [{"p": ..., "a": ...}, ...],
    "R_l": ..., "R_f": ...}` with rationals as fraction or decimal
    strings; facility order in the file is original id order.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("instance document must be a JSON object")
    try:
        facilities = doc["facilities"]
        r_l = doc["R_l"]
        r_f = doc["R_f"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc} in instance document") from exc
    if not isinstance(facilities, list):
        raise ParseError('"facilities" must be a JSON array')
    rates: list[RatioLike] = []
    quantities: list[RatioLike] = []
    for entry in facilities:
        if not isinstance(entry, dict) or "p" not in entry or "a" not in entry:
            raise ParseError('each facility needs "p" and "a" fields')
        rates.append(entry["p"])
        quantities.append(entry["a"])
    return validate_instance(rates, quantities, r_l, r_f)


def instance_to_json(inst: Instance) -> str:
    """Serialize an instance back to its JSON document form, in original id
    order, with exact fraction strings."""
    rates = inst.to_input_order(inst.production_rates)
    quantities = inst.to_input_order(inst.destruction_quantities)
    doc = {
        "facilities": [
            {"p": format_ratio(p), "a": format_ratio(a)}
            for p, a in zip(rates, quantities)
        ],
        "R_l": format_ratio(inst.leader_budget),
        "R_f": format_ratio(inst.follower_budget),
    }
    return json.dumps(doc, indent=2) + "\n"
