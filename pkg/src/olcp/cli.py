"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 game anomaly (illegal move, stuck
adversary, exhausted script, bound not attained), 3 search budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass

from .adversary import Adversary, IllegalObservation
from .arena import (
    DEFAULT_NODE_BUDGET,
    AdversaryStuck,
    IllegalMove,
    SearchBudgetExceeded,
    batch_run,
    format_batch,
    min_forced_chains,
    play_game,
    write_csv,
    write_jsonl,
)
from .order import format_rat
from .partitioners import OnlineAlgorithm, ScriptExhausted, make_algorithm
from .render import Narrator, stage_figures, transcript_table

EXIT_OK, EXIT_USAGE, EXIT_ANOMALY, EXIT_BUDGET = 0, 1, 2, 3

FORMATS = ("pretty", "jsonl", "csv")
GAME_ERRORS = (IllegalMove, AdversaryStuck, ScriptExhausted, IllegalObservation)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    k: int = 1
    algorithm: str = "first-fit"
    trials: int = 1
    seed: int = 0
    output_format: str = "pretty"
    check_width: bool = True
    node_budget: int = DEFAULT_NODE_BUDGET

    def validate(self) -> "RunConfig":
        if self.k < 1:
            raise UsageError(f"--k must be at least 1, got {self.k}")
        if self.trials < 1:
            raise UsageError(f"--trials must be at least 1, got {self.trials}")
        if self.output_format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        if self.node_budget < 1:
            raise UsageError("--node-budget must be positive")
        return self


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="olcp", description="Adversary games for on-line chain partitioning of semi-orders.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="play one game and print the transcript")
    run.add_argument("--k", type=int, required=True)
    run.add_argument("--algorithm", default="first-fit")
    run.add_argument("--format", dest="output_format", default="pretty", choices=FORMATS)
    run.add_argument("--check-width", action=argparse.BooleanOptionalAction, default=True)
    run.add_argument("--output", help="write the transcript here instead of stdout")

    batch = sub.add_parser("batch", help="play many games and summarise per k")
    batch.add_argument("--k-min", type=int, required=True)
    batch.add_argument("--k-max", type=int, required=True)
    batch.add_argument("--algorithm", default="first-fit")
    batch.add_argument("--trials", type=int, default=1)
    batch.add_argument("--seed", type=int, default=None)
    batch.add_argument("--format", dest="output_format", default="pretty", choices=("pretty", "jsonl"))
    batch.add_argument("--check-width", action=argparse.BooleanOptionalAction, default=True)

    verify = sub.add_parser("verify", help="exhaustive search over every algorithm")
    verify.add_argument("--k", type=int, required=True)
    verify.add_argument("--node-budget", type=int, default=None)
    verify.add_argument("--allow-large", action="store_true", help="permit k >= 2 (slow)")
    verify.add_argument("--no-prune", action="store_true", help="play every stage out instead of stopping at the target")

    explain = sub.add_parser("explain", help="narrate one game stage by stage")
    explain.add_argument("--k", type=int, required=True)
    explain.add_argument("--algorithm", default="first-fit")

    interactive = sub.add_parser("interactive", help="play the algorithm yourself")
    interactive.add_argument("--k", type=int, required=True)
    return parser


def _fail(message: str, code: int, err) -> int:
    print(f"error: {message}", file=err)
    return code


def cmd_run(args, out, err) -> int:
    cfg = RunConfig("run", k=args.k, algorithm=args.algorithm, output_format=args.output_format,
                    check_width=args.check_width).validate()
    algorithm = make_algorithm(cfg.algorithm)
    try:
        result = play_game(Adversary(cfg.k), algorithm, cfg.check_width)
    except GAME_ERRORS as exc:
        return _fail(str(exc), EXIT_ANOMALY, err)

    summary_stream = out
    if args.output:
        with open(args.output, "w", newline="") as fh:
            _write_transcript(result.steps, cfg.output_format, fh)
    else:
        _write_transcript(result.steps, cfg.output_format, out)
        if cfg.output_format != "pretty":
            summary_stream = err
    print(result.summary(), file=summary_stream)
    return EXIT_OK if result.forced else EXIT_ANOMALY


def _write_transcript(steps, fmt, stream) -> None:
    if fmt == "jsonl":
        write_jsonl(steps, stream)
    elif fmt == "csv":
        write_csv(steps, stream)
    else:
        stream.write(transcript_table(steps) + "\n")


def cmd_batch(args, out, err) -> int:
    seed = args.seed if args.seed is not None else _env_int("OLCP_SEED", 0)
    cfg = RunConfig("batch", k=max(args.k_min, 1), algorithm=args.algorithm, trials=args.trials,
                    seed=seed, check_width=args.check_width).validate()
    if args.k_min < 1:
        raise UsageError("--k-min must be at least 1")
    make_algorithm(cfg.algorithm)
    rows = batch_run(cfg.algorithm, range(args.k_min, args.k_max + 1), cfg.trials, cfg.seed, cfg.check_width)
    if args.output_format == "jsonl":
        for row in rows:
            out.write(json.dumps(asdict(row)) + "\n")
    else:
        print(format_batch(rows), file=out)
    ok = all(row.forced_all for row in rows)
    return EXIT_OK if ok else EXIT_ANOMALY


def cmd_verify(args, out, err) -> int:
    budget = args.node_budget if args.node_budget is not None else _env_int("OLCP_NODE_BUDGET", DEFAULT_NODE_BUDGET)
    cfg = RunConfig("verify", k=args.k, node_budget=budget).validate()
    if cfg.k >= 2 and not args.allow_large:
        raise UsageError("exhaustive search for k >= 2 needs --allow-large")
    try:
        res = min_forced_chains(cfg.k, prune_at_target=not args.no_prune, node_budget=cfg.node_budget)
    except SearchBudgetExceeded as exc:
        print(f"search incomplete after {exc.nodes} nodes; min forced chains >= {exc.lower_bound}", file=out)
        return _fail(str(exc), EXIT_BUDGET, err)
    except GAME_ERRORS as exc:
        return _fail(str(exc), EXIT_ANOMALY, err)
    print(f"min forced chains: {res.min_chains}", file=out)
    print(f"target 3k+2: {res.target} (width {2 * cfg.k + 1})", file=out)
    print(f"nodes: {res.nodes}  complete games: {res.leaves}", file=out)
    print(f"cheapest line: {','.join(map(str, res.witness))}", file=out)
    return EXIT_OK if res.min_chains >= res.target else EXIT_ANOMALY


def cmd_explain(args, out, err) -> int:
    cfg = RunConfig("explain", k=args.k, algorithm=args.algorithm).validate()
    adversary = Adversary(cfg.k)
    narrator = Narrator(adversary)
    try:
        result = play_game(adversary, make_algorithm(cfg.algorithm), True, observer=narrator)
    except GAME_ERRORS as exc:
        print(narrator.text(), file=out)
        return _fail(str(exc), EXIT_ANOMALY, err)
    print(f"k={cfg.k}: width {2 * cfg.k + 1}, target {adversary.target} chains, algorithm {cfg.algorithm}", file=out)
    print(narrator.text(), file=out)
    print("", file=out)
    print(stage_figures(result.steps), file=out)
    print(result.summary(), file=out)
    return EXIT_OK if result.forced else EXIT_ANOMALY


class Quit(Exception):
    pass


class HumanPlayer(OnlineAlgorithm):
    """Reads chain choices from a stream, re-prompting until the choice is legal."""

    name = "human"

    def __init__(self, adversary: Adversary, stream, out):
        self.adversary = adversary
        self.stream = stream
        self.out = out

    def step(self, partition, x):
        legal = partition.legal_chains(x)
        fresh = len(partition)
        print(
            f"[{self.adversary.stage.tag}] interval [{format_rat(x - 1)}, {format_rat(x)}]  "
            f"chains used: {len(partition)}  legal: {', '.join(map(str, legal[:-1])) or 'none'} (new: {fresh})",
            file=self.out,
        )
        while True:
            self.out.write("chain> ")
            self.out.flush()
            line = self.stream.readline()
            if not line or line.strip().lower() in ("q", "quit"):
                raise Quit()
            try:
                j = int(line.strip())
            except ValueError:
                print("  enter a chain number", file=self.out)
                continue
            if j in legal:
                return j
            print(f"  chain {j} is not legal here", file=self.out)


def cmd_interactive(args, out, err, stdin) -> int:
    cfg = RunConfig("interactive", k=args.k).validate()
    adversary = Adversary(cfg.k)
    print(f"width {2 * cfg.k + 1}; the adversary aims to force {adversary.target} chains. q quits.", file=out)
    try:
        result = play_game(adversary, HumanPlayer(adversary, stdin, out), True)
    except Quit:
        print("\nquit", file=out)
        return EXIT_USAGE
    print(result.summary(), file=out)
    verdict = "the adversary wins" if result.forced else "you beat the bound"
    print(f"you used {result.distinct_chains} chains against a target of {result.target}: {verdict}", file=out)
    return EXIT_OK if result.forced else EXIT_ANOMALY


def main(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=err)
        if args.command == "run":
            return cmd_run(args, out, err)
        if args.command == "batch":
            return cmd_batch(args, out, err)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        if args.command == "explain":
            return cmd_explain(args, out, err)
        return cmd_interactive(args, out, err, stdin)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        # bad algorithm names and the like
        print(f"usage error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
