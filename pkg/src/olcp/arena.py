"""Game loop, exhaustive game-tree search and batch experiments."""
from __future__ import annotations

import csv
import io
import json
import logging
import random
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

from .adversary import Adversary
from .order import ChainPartition, Rat, WidthTracker, format_rat, parse_rat
from .partitioners import OnlineAlgorithm, make_algorithm

logger = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 10**8

TRANSCRIPT_FIELDS = ("step", "r", "chain", "stage", "chains", "width")


class IllegalMove(RuntimeError):
    def __init__(self, step: int, chain: int, r: Rat):
        super().__init__(f"illegal move at step {step}: chain {chain} for r={format_rat(r)}")
        self.step = step
        self.chain = chain
        self.r = r


class AdversaryStuck(RuntimeError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int, lower_bound: int, best_found):
        super().__init__(
            f"search budget of {nodes} nodes exhausted; "
            f"minimum is at least {lower_bound}"
            + (f", best line found so far uses {best_found}" if best_found is not None else "")
        )
        self.nodes = nodes
        self.lower_bound = lower_bound
        self.best_found = best_found


@dataclass(frozen=True)
class GameStep:
    index: int  # 1-based
    r: Rat
    chain: int
    stage: str
    chains: int
    width: int | None

    def to_record(self) -> dict:
        return {
            "step": self.index,
            "r": format_rat(self.r),
            "chain": self.chain,
            "stage": self.stage,
            "chains": self.chains,
            "width": self.width,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "GameStep":
        w = rec.get("width")
        return cls(
            index=int(rec["step"]),
            r=parse_rat(str(rec["r"])),
            chain=int(rec["chain"]),
            stage=str(rec["stage"]),
            chains=int(rec["chains"]),
            width=None if w in (None, "") else int(w),
        )


@dataclass
class GameResult:
    k: int
    steps: list[GameStep]
    distinct_chains: int
    max_width: int | None
    target: int
    stage_rounds: dict = field(default_factory=dict)

    @property
    def forced(self) -> bool:
        return self.distinct_chains >= self.target

    @property
    def decisions(self) -> list[int]:
        return [s.chain for s in self.steps]

    @property
    def endpoints(self) -> list[Rat]:
        return [s.r for s in self.steps]

    def summary(self) -> str:
        width = "?" if self.max_width is None else self.max_width
        return (
            f"chains={self.distinct_chains} target={self.target} "
            f"width={width} forced={'yes' if self.forced else 'no'}"
        )


def check_round_bounds(adversary: Adversary) -> None:
    bounds = adversary.round_bounds()
    for stage, used in adversary.rounds.items():
        if used > bounds[stage]:
            raise AdversaryStuck(
                f"{stage.tag} ran {used} rounds, more than its bound {bounds[stage]} (k={adversary.k})"
            )


def play_game(
    adversary: Adversary,
    algorithm: OnlineAlgorithm,
    check_width: bool = True,
    observer=None,
) -> GameResult:
    """Play ``algorithm`` against ``adversary`` until the adversary stops.

    Every reply is checked for legality before the adversary sees it.  With
    ``check_width`` the width of the presented poset is tracked after every
    element.  ``observer(step, adversary_before, partition)`` is called after
    each accepted move, mainly for narration.
    """
    partition = ChainPartition()
    tracker = WidthTracker() if check_width else None
    steps: list[GameStep] = []
    while not adversary.is_done():
        x = adversary.next_interval()
        stage = adversary.stage
        index = len(steps) + 1
        j = algorithm.step(partition, x)
        if not isinstance(j, int) or not partition.is_legal(j, x):
            raise IllegalMove(index, j, x)
        before = adversary.clone() if observer is not None else None
        partition.assign(x, j)
        w = tracker.add(x) if tracker is not None else None
        adversary.observe(j, len(partition))
        check_round_bounds(adversary)
        step = GameStep(index, x, j, stage.tag, len(partition), w)
        steps.append(step)
        if observer is not None:
            observer(step, before, partition)
    widths = [s.width for s in steps if s.width is not None]
    return GameResult(
        k=adversary.k,
        steps=steps,
        distinct_chains=len(partition),
        max_width=max(widths) if check_width and widths else None,
        target=adversary.target,
        stage_rounds={s.tag: n for s, n in adversary.rounds.items()},
    )


def replay(k: int, decisions: Iterable[int], check_width: bool = True) -> GameResult:
    return play_game(Adversary(k), make_algorithm("scripted:" + ",".join(map(str, decisions))), check_width)


# --- exhaustive search -------------------------------------------------------


@dataclass
class SearchResult:
    k: int
    min_chains: int
    nodes: int
    leaves: int
    witness: list[int]
    prune_at_target: bool

    @property
    def target(self) -> int:
        return 3 * self.k + 2


def _children(adversary: Adversary, partition: ChainPartition):
    x = adversary.next_interval()
    # one fresh id stands for all fresh chains (they are interchangeable)
    for j in partition.legal_chains(x):
        adv = adversary.clone()
        part = partition.copy()
        part.assign(x, j)
        adv.observe(j, len(part))
        check_round_bounds(adv)
        yield j, adv, part


def iter_games(k: int, prune_at_target: bool = True) -> Iterator[tuple[list[int], int]]:
    """Yield ``(decisions, chains)`` for every complete game against the adversary."""
    stack = [([], Adversary(k, halt_at_target=prune_at_target), ChainPartition())]
    while stack:
        decisions, adv, part = stack.pop()
        if adv.is_done():
            yield decisions, len(part)
            continue
        children = list(_children(adv, part))
        for j, cadv, cpart in reversed(children):
            stack.append((decisions + [j], cadv, cpart))


def min_forced_chains(
    k: int,
    prune_at_target: bool = True,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SearchResult:
    """Minimum, over every algorithm, of the chains used at game end.

    Depth-first over all legal replies (existing legal chains plus one fresh
    chain).  With ``prune_at_target`` the adversary stops the moment the
    target is reached; without it the stages are played out in full.
    Raises :class:`SearchBudgetExceeded` once ``node_budget`` positions have
    been expanded.
    """
    root = (0, [], Adversary(k, halt_at_target=prune_at_target), ChainPartition())
    stack = [root]
    nodes = 0
    leaves = 0
    best = None
    witness: list[int] = []
    while stack:
        chains, decisions, adv, part = stack.pop()
        nodes += 1
        if adv.is_done():
            leaves += 1
            if best is None or chains < best:
                best, witness = chains, decisions
            continue
        if nodes >= node_budget:
            pending = [entry[0] for entry in stack] + [chains]
            lower = min(pending + ([best] if best is not None else []))
            raise SearchBudgetExceeded(nodes, lower, best)
        children = list(_children(adv, part))
        for j, cadv, cpart in reversed(children):
            stack.append((len(cpart), decisions + [j], cadv, cpart))
    logger.info("k=%d search: min=%s nodes=%d leaves=%d", k, best, nodes, leaves)
    return SearchResult(k, best, nodes, leaves, witness, prune_at_target)


# --- batch experiments -------------------------------------------------------


@dataclass
class BatchRow:
    k: int
    target: int
    games: int
    chains_min: int
    chains_max: int
    width_max: int | None
    forced_all: bool
    anomalies: int


def trial_algorithm_names(algorithm: str, k: int, trials: int, seed: int) -> list[str]:
    """Algorithm names for each trial at ``k``.

    Deterministic algorithms play once; a ``random:<s>`` algorithm gets one
    derived seed per trial, a function of ``(s, seed, k, trial)``.
    """
    if not algorithm.startswith("random:"):
        return [algorithm]
    base = algorithm.partition(":")[2]
    names = []
    for t in range(trials):
        derived = random.Random(f"{base}/{seed}/{k}/{t}").getrandbits(63)
        names.append(f"random:{derived}")
    return names


def batch_run(
    algorithm: str,
    k_values: Iterable[int],
    trials: int = 1,
    seed: int = 0,
    check_width: bool = True,
) -> list[BatchRow]:
    rows = []
    for k in k_values:
        results = []
        anomalies = 0
        for name in trial_algorithm_names(algorithm, k, trials, seed):
            try:
                results.append(play_game(Adversary(k), make_algorithm(name), check_width))
            except (IllegalMove, AdversaryStuck) as exc:
                logger.warning("k=%d %s: %s", k, name, exc)
                anomalies += 1
        chains = [r.distinct_chains for r in results]
        widths = [r.max_width for r in results if r.max_width is not None]
        rows.append(
            BatchRow(
                k=k,
                target=3 * k + 2,
                games=len(results) + anomalies,
                chains_min=min(chains) if chains else 0,
                chains_max=max(chains) if chains else 0,
                width_max=max(widths) if widths else None,
                forced_all=anomalies == 0 and all(r.forced for r in results),
                anomalies=anomalies,
            )
        )
    return rows


def format_batch(rows: list[BatchRow]) -> str:
    header = ("k", "target", "games", "chains_min", "chains_max", "width_max", "forced", "anomalies")
    lines = ["  ".join(f"{h:>10}" for h in header)]
    for row in rows:
        d = asdict(row)
        d["forced_all"] = "yes" if d["forced_all"] else "no"
        d["width_max"] = "-" if d["width_max"] is None else d["width_max"]
        lines.append("  ".join(f"{v!s:>10}" for v in d.values()))
    return "\n".join(lines)


# --- transcripts -------------------------------------------------------------


def write_jsonl(steps: Iterable[GameStep], out) -> None:
    for step in steps:
        out.write(json.dumps(step.to_record()) + "\n")


def write_csv(steps: Iterable[GameStep], out) -> None:
    writer = csv.DictWriter(out, fieldnames=TRANSCRIPT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for step in steps:
        rec = step.to_record()
        if rec["width"] is None:
            rec["width"] = ""
        writer.writerow(rec)


def read_transcript(text: str) -> list[GameStep]:
    """Parse a JSONL or CSV transcript back into steps."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return [GameStep.from_record(json.loads(line)) for line in text.splitlines() if line.strip()]
    return [GameStep.from_record(rec) for rec in csv.DictReader(io.StringIO(text))]
