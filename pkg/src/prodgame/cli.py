"""Command-line front end: solve instances, query best responses, evaluate
strategy pairs, run oracle checks, and generate random instances.

Exit codes: 0 success (and oracle agreement), 1 usage or parse failure,
2 instance or strategy validation failure, 3 oracle disagreement.

JSON output carries exact fraction strings only; the human format adds
decimal approximations as a courtesy.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from random import Random
from typing import Any, Callable, Sequence

from . import follower as _follower
from .classify import classify as _classify_strategy
from . import leader as _leader
from . import oracle as _oracle
from . import sampling as _sampling
from .core import (
    EmptySupport,
    FollowerStrategy,
    InfeasibleStrategy,
    Instance,
    InvalidSupport,
    LeaderStrategy,
    NotSemiBalanced,
    ParseError,
    TooLarge,
    ValidationError,
    ZeroResolution,
    approx,
    format_ratio,
    instance_from_json,
    instance_to_json,
)

USAGE_ERROR = 1
VALIDATION_ERROR = 2
DISAGREEMENT = 3


@dataclass
class RunReport:
    command: str
    instance: dict[str, Any] | None
    result: dict[str, Any]
    elapsed_ms: float = 0.0
    exit_code: int = 0


class _Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on usage errors; the contract is 1
    def error(self, message: str) -> "argparse.NoReturn":  # type: ignore[name-defined]
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE_ERROR)


def _load_instance(path: str) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        return instance_from_json(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_allocation_text(text: str) -> list[str]:
    text = text.strip()
    if text.startswith("["):
        try:
            entries = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad allocation array: {exc}") from exc
        if not isinstance(entries, list):
            raise ParseError("allocation JSON must be an array")
        return [str(e) for e in entries]
    return [part.strip() for part in text.split(",") if part.strip()]


def _parse_allocation(inst: Instance, spec: str, *, who: str) -> tuple[Fraction, ...]:
    """Allocation from inline comma-separated rationals in original facility
    order, or `@path` to a file holding the same (or a JSON array)."""
    if spec.startswith("@"):
        try:
            text = Path(spec[1:]).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {spec[1:]}: {exc}") from exc
    else:
        text = spec
    entries = _parse_allocation_text(text)
    if len(entries) != inst.n:
        raise InfeasibleStrategy(
            f"{who} allocation has {len(entries)} entries, instance has {inst.n} facilities"
        )
    return inst.from_input_order(entries)


def _instance_summary(inst: Instance) -> dict[str, Any]:
    return {
        "n": inst.n,
        "facilities": [
            {"id": f.ident, "p": f.production_rate, "a": f.destruction_quantity}
            for f in inst.facilities
        ],
        "R_l": inst.leader_budget,
        "R_f": inst.follower_budget,
    }


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return format_ratio(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _human_value(value: Any) -> str:
    if isinstance(value, Fraction):
        return f"{format_ratio(value)} (~{approx(value)})"
    if isinstance(value, (list, tuple)):
        return ", ".join(_human_value(v) for v in value)
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_human_value(v)}" for k, v in value.items()) + "}"
    return str(value)


def _emit(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        doc = {
            "command": report.command,
            "instance": _jsonable(report.instance),
            "result": _jsonable(report.result),
            "elapsed_ms": round(report.elapsed_ms, 3),
        }
        print(json.dumps(doc, indent=2))
        return
    print(f"command: {report.command}")
    if report.instance is not None:
        inst = report.instance
        print(f"instance: n={inst['n']}, R_l={_human_value(inst['R_l'])}, "
              f"R_f={_human_value(inst['R_f'])}")
        for entry in inst["facilities"]:
            print(
                f"  facility {entry['id']}: rate {_human_value(entry['p'])}, "
                f"quantity {_human_value(entry['a'])}"
            )
    for key, value in report.result.items():
        print(f"{key}: {_human_value(value)}")
    print(f"elapsed_ms: {report.elapsed_ms:.3f}")


def _cmd_solve(args: argparse.Namespace) -> RunReport:
    inst = _load_instance(args.instance)
    started = time.perf_counter()
    report = _leader.solve(inst)
    elapsed = (time.perf_counter() - started) * 1000
    verdict = _classify_strategy(inst, report.strategy)
    return RunReport(
        command="solve",
        instance=_instance_summary(inst),
        result={
            "strategy": list(inst.to_input_order(report.strategy.allocation)),
            "support": list(report.support),
            "rate": report.rate,
            "value": report.value,
            "class": verdict.kind.value,
            "trace": [{"size": size, "rate": rate} for size, rate in report.trace],
        },
        elapsed_ms=elapsed,
    )


def _cmd_follower(args: argparse.Namespace) -> RunReport:
    inst = _load_instance(args.instance)
    x = LeaderStrategy(_parse_allocation(inst, args.x, who="leader"))
    started = time.perf_counter()
    response = _follower.best_response(inst, x)
    elapsed = (time.perf_counter() - started) * 1000
    return RunReport(
        command="follower",
        instance=_instance_summary(inst),
        result={
            "order": list(response.order),
            "threshold": response.threshold,
            "destroyed": sorted(response.destroyed),
            "strategy": list(inst.to_input_order(response.strategy.allocation)),
            "value": response.value,
        },
        elapsed_ms=elapsed,
    )


def _cmd_evaluate(args: argparse.Namespace) -> RunReport:
    inst = _load_instance(args.instance)
    x = LeaderStrategy(_parse_allocation(inst, args.x, who="leader"))
    y = FollowerStrategy(_parse_allocation(inst, args.y, who="follower"))
    started = time.perf_counter()
    productions, reductions = _follower.production_breakdown(inst, x, y)
    total = _follower.evaluate(inst, x, y)
    elapsed = (time.perf_counter() - started) * 1000
    return RunReport(
        command="evaluate",
        instance=_instance_summary(inst),
        result={
            "productions": list(inst.to_input_order(productions)),
            "reductions": list(inst.to_input_order(reductions)),
            "total": total,
        },
        elapsed_ms=elapsed,
    )


def _trial_payload(verdict: "_oracle.OracleVerdict") -> dict[str, Any]:
    return {
        "oracle_value": verdict.oracle_value,
        "solver_value": verdict.solver_value,
        "agree": verdict.agree,
        "gap": verdict.gap,
    }


def _cmd_check(args: argparse.Namespace) -> RunReport:
    rng = Random(args.seed)
    trials: list[dict[str, Any]] = []
    started = time.perf_counter()
    if args.instance is not None:
        instances = [_load_instance(args.instance)]
    else:
        max_n = args.max_n or {"follower": 5, "subset": 8, "grid": 3}[args.oracle]
        instances = [
            _sampling.random_instance(rng, rng.randint(1, max_n))
            for _ in range(args.trials)
        ]
    all_agree = True
    for inst in instances:
        if args.oracle == "follower":
            x = _sampling.random_leader_strategy(rng, inst)
            verdict = _oracle.follower_oracle(inst, x)
            payload = _trial_payload(verdict)
            payload["x"] = list(inst.to_input_order(x.allocation))
        elif args.oracle == "subset":
            verdict = _oracle.leader_subset_oracle(inst)
            payload = _trial_payload(verdict)
        else:
            verdict = _oracle.leader_grid_oracle(inst, args.resolution)
            payload = _trial_payload(verdict)
            payload["resolution"] = args.resolution
        if not verdict.agree:
            all_agree = False
            # full witness instance so the failure can be reproduced
            payload["instance"] = json.loads(instance_to_json(inst))
        trials.append(payload)
    elapsed = (time.perf_counter() - started) * 1000
    instance_summary = _instance_summary(instances[0]) if args.instance else None
    return RunReport(
        command="check",
        instance=instance_summary,
        result={
            "oracle": args.oracle,
            "trials": len(trials),
            "all_agree": all_agree,
            "verdicts": trials,
        },
        elapsed_ms=elapsed,
        exit_code=0 if all_agree else DISAGREEMENT,
    )


def _cmd_generate(args: argparse.Namespace) -> RunReport:
    if args.n < 1:
        raise ParseError(f"need at least one facility, got {args.n}")
    started = time.perf_counter()
    inst = _sampling.random_instance(Random(args.seed), args.n)
    text = instance_to_json(inst)
    elapsed = (time.perf_counter() - started) * 1000
    result: dict[str, Any] = {"n": args.n, "seed": args.seed}
    if args.output:
        Path(args.output).write_text(text)
        result["path"] = args.output
    else:
        result["instance"] = json.loads(text)
    return RunReport(
        command="generate",
        instance=None,
        result=result,
        elapsed_ms=elapsed,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="prodgame",
        description="Exact solver for a two-player Stackelberg production game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], RunReport], help: str):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=handler)
        p.add_argument(
            "--format", choices=("human", "json"), default="human",
            help="output format (default: human)",
        )
        return p

    p = add("solve", _cmd_solve, "compute the leader's optimal allocation")
    p.add_argument("instance", help="instance JSON file")

    p = add("follower", _cmd_follower, "compute the follower's best response")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument(
        "-x", required=True,
        help="leader allocation: inline rationals in input order, or @file",
    )

    p = add("evaluate", _cmd_evaluate, "evaluate a leader/follower strategy pair")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("-x", required=True, help="leader allocation (inline or @file)")
    p.add_argument("-y", required=True, help="follower allocation (inline or @file)")

    p = add("check", _cmd_check, "compare solvers against brute-force oracles")
    p.add_argument("instance", nargs="?", help="instance JSON file (default: random trials)")
    p.add_argument(
        "--oracle", choices=("follower", "subset", "grid"), required=True,
        help="which oracle to run",
    )
    p.add_argument("--seed", type=int, default=0, help="random seed for trials")
    p.add_argument("--trials", type=int, default=100, help="number of random trials")
    p.add_argument("--resolution", type=int, default=64, help="grid oracle resolution")
    p.add_argument("--max-n", type=int, default=None, help="max facilities per trial")

    p = add("generate", _cmd_generate, "emit a valid random instance")
    p.add_argument("-n", type=int, required=True, help="number of facilities")
    p.add_argument("--seed", type=int, default=0, help="random seed")
    p.add_argument("-o", "--output", default=None, help="output path (default: stdout)")

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.func(args)
    except (ParseError, TooLarge, ZeroResolution) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (
        ValidationError,
        InfeasibleStrategy,
        EmptySupport,
        InvalidSupport,
        NotSemiBalanced,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return VALIDATION_ERROR
    _emit(report, args.format)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
