"""On-line chain partitioning algorithms.

An algorithm sees the partition built so far (every presented element and
its chain) plus the new element, and returns a chain id.  Ids are dense, so
``len(partition)`` names a fresh chain.  Legality is enforced by the arena,
not here.
"""
from __future__ import annotations

import random

from .order import ChainPartition, Rat


class ScriptExhausted(RuntimeError):
    pass


class OnlineAlgorithm:
    name = "abstract"

    def step(self, partition: ChainPartition, x: Rat) -> int:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FirstFit(OnlineAlgorithm):
    name = "first-fit"

    def step(self, partition, x):
        for j in range(len(partition)):
            if partition.is_legal(j, x):
                return j
        return len(partition)


class BestFit(OnlineAlgorithm):
    """Greedy: the legal chain whose nearest element below ``x`` is highest.

    Chains with nothing below ``x`` are a fallback, ranked by their lowest
    element above ``x``.  Ties go to the smaller id; a fresh chain is opened
    only when nothing is legal.
    """

    name = "best-fit"

    def step(self, partition, x):
        best_below = best_above = None
        below_j = above_j = None
        for j in range(len(partition)):
            if not partition.is_legal(j, x):
                continue
            lo, hi = partition.neighbors(j, x)
            if lo is not None:
                if best_below is None or lo > best_below:
                    best_below, below_j = lo, j
            elif best_above is None or hi < best_above:
                best_above, above_j = hi, j
        if below_j is not None:
            return below_j
        if above_j is not None:
            return above_j
        return len(partition)


class RandomLegal(OnlineAlgorithm):
    """Uniform over legal existing chains plus one fresh chain."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self.rng = random.Random(seed)

    @property
    def name(self):
        return f"random:{self.seed}"

    def step(self, partition, x):
        return self.rng.choice(partition.legal_chains(x))


class Scripted(OnlineAlgorithm):
    """Replays a fixed list of chain ids verbatim."""

    def __init__(self, decisions):
        self.decisions = [int(d) for d in decisions]
        self.index = 0

    @property
    def name(self):
        return "scripted:" + ",".join(str(d) for d in self.decisions)

    def step(self, partition, x):
        if self.index >= len(self.decisions):
            raise ScriptExhausted(
                f"script of {len(self.decisions)} decisions asked for decision {self.index + 1}"
            )
        j = self.decisions[self.index]
        self.index += 1
        return j


def make_algorithm(name: str) -> OnlineAlgorithm:
    """Build an algorithm from its name.

    Accepted: ``first-fit``, ``best-fit``, ``random:<seed>`` and
    ``scripted:<id>,<id>,...``.
    """
    kind, _, arg = name.strip().partition(":")
    if kind == "first-fit" and not arg:
        return FirstFit()
    if kind == "best-fit" and not arg:
        return BestFit()
    if kind == "random":
        try:
            return RandomLegal(int(arg))
        except ValueError:
            raise ValueError(f"random algorithm needs an integer seed: {name!r}") from None
    if kind == "scripted":
        try:
            ids = [int(tok) for tok in arg.split(",") if tok.strip()]
        except ValueError:
            raise ValueError(f"scripted algorithm needs comma-separated ids: {name!r}") from None
        return Scripted(ids)
    raise ValueError(f"unknown algorithm {name!r}")
