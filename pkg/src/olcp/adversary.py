"""Five-stage adversary forcing ``3k + 2`` chains on width ``2k + 1``.

The adversary presents unit intervals by right endpoint and reacts only to
the chain ids the algorithm picks.  Stages, in brief:

S1  ``k`` copies of 0, each on a new chain (set ``A``).
S2  bisect inside (1, 2): a reply in ``A`` lowers the upper bound, a new
    chain raises the lower bound and joins ``B``; stop once ``|B| = k + 1``.
S3  bisect inside the S2 bounds shifted by -3 until a reply lands in ``B``
    (chain ``b``, element ``x_B``).
S4  bisect between the S3 lower bound + 1 and ``x_B + 1``; a reply outside
    ``B`` gives chain ``c`` and element ``x_C``.
S5  ``k`` copies of ``x_C + 1``.

Every endpoint produced is dyadic.
"""
from __future__ import annotations

import copy
import enum

from .order import Rat, format_rat


class Stage(enum.IntEnum):
    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5
    DONE = 6

    @property
    def tag(self) -> str:
        return "done" if self is Stage.DONE else self.name


class QueryAfterDone(RuntimeError):
    pass


class IllegalObservation(ValueError):
    pass


class Adversary:
    """State machine for one game.

    ``halt_at_target`` ends the game as soon as the algorithm has used
    ``3k + 2`` chains.  Without it the game only stops early when Stage 3
    has produced ``k + 1`` brand-new chains, and otherwise plays all five
    stages out.
    """

    def __init__(self, k: int, halt_at_target: bool = True):
        if not isinstance(k, int) or k < 1:
            raise ValueError(f"k must be a positive integer (width 2k+1 > 1), got {k!r}")
        self.k = k
        self.target = 3 * k + 2
        self.halt_at_target = halt_at_target
        self.stage = Stage.S1
        self.stage1_count = 0
        self.l2, self.h2 = Rat(1), Rat(2)
        self.l3 = self.h3 = None
        self.l4 = self.h4 = None
        self.A: set[int] = set()
        self.B: set[int] = set()
        self.A_in_stage2: set[int] = set()
        self.A_in_stage3: set[int] = set()
        self.new_in_stage3: set[int] = set()
        self.B_in_stage4: set[int] = set()
        self.b = None
        self.xB = None
        self.c = None
        self.xC = None
        self.stage5_count = 0
        self.D: set[int] = set()
        self.win = False
        self.rounds = {s: 0 for s in (Stage.S1, Stage.S2, Stage.S3, Stage.S4, Stage.S5)}
        self.total_chains = 0

    @property
    def width(self) -> int:
        return 2 * self.k + 1

    def round_bounds(self) -> dict:
        """Upper bounds on rounds per stage, from the antichain arguments."""
        k = self.k
        return {Stage.S1: k, Stage.S2: 2 * k + 1, Stage.S3: 2 * k + 2, Stage.S4: k + 1, Stage.S5: k}

    def is_done(self) -> bool:
        return self.stage is Stage.DONE

    def clone(self) -> "Adversary":
        new = copy.copy(self)
        for name in ("A", "B", "A_in_stage2", "A_in_stage3", "new_in_stage3", "B_in_stage4", "D", "rounds"):
            setattr(new, name, copy.copy(getattr(self, name)))
        return new

    def next_interval(self) -> Rat:
        s = self.stage
        if s is Stage.DONE or (self.win and self.halt_at_target):
            raise QueryAfterDone("the game is over")
        if s is Stage.S1:
            return Rat(0)
        if s is Stage.S2:
            return (self.l2 + self.h2) / 2
        if s is Stage.S3:
            return (self.l3 + self.h3) / 2
        if s is Stage.S4:
            return (self.l4 + self.h4) / 2
        return self.xC + 1

    def bounds(self):
        """Current bisection bounds ``(low, high)`` or ``None`` outside S2-S4."""
        return {
            Stage.S2: (self.l2, self.h2),
            Stage.S3: (self.l3, self.h3),
            Stage.S4: (self.l4, self.h4),
        }.get(self.stage)

    def observe(self, j: int, total_chains: int) -> None:
        """Record that the last emitted interval went to chain ``j``.

        ``total_chains`` is the number of distinct chains in the game after
        the assignment.
        """
        x = self.next_interval()
        stage = self.stage
        if not 0 <= j < total_chains or total_chains < self.total_chains:
            raise IllegalObservation(f"chain {j} with {total_chains} chains in play")
        fresh = j >= self.total_chains
        if fresh and total_chains != self.total_chains + 1:
            raise IllegalObservation(f"fresh chain {j} but chain count jumped to {total_chains}")
        self.rounds[stage] += 1

        if stage is Stage.S1:
            if not fresh:
                raise IllegalObservation(f"stage-1 stack element placed on used chain {j}")
            self.A.add(j)
            self.stage1_count += 1
            if self.stage1_count == self.k:
                self.stage = Stage.S2
        elif stage is Stage.S2:
            if j in self.A and j not in self.A_in_stage2:
                self.A_in_stage2.add(j)
                self.h2 = x
            elif fresh:
                self.B.add(j)
                self.l2 = x
                if len(self.B) == self.k + 1:
                    self.l3 = self.l2 - 3
                    self.h3 = self.h2 - 3
                    self.stage = Stage.S3
            else:
                raise IllegalObservation(f"stage-2 element {format_rat(x)} cannot join chain {j}")
        elif stage is Stage.S3:
            if j in self.B:
                self.b = j
                self.xB = x
                self.h3 = x
                self.l4 = self.l3 + 1
                self.h4 = self.h3 + 1
                self.stage = Stage.S4
            else:
                if j in self.A and j not in self.A_in_stage3:
                    self.A_in_stage3.add(j)
                elif fresh:
                    self.new_in_stage3.add(j)
                else:
                    raise IllegalObservation(f"stage-3 element {format_rat(x)} cannot join chain {j}")
                self.l3 = x
                if len(self.new_in_stage3) == self.k + 1:
                    self.stage = Stage.DONE
        elif stage is Stage.S4:
            if j in self.A or j == self.b:
                raise IllegalObservation(f"stage-4 element {format_rat(x)} cannot join chain {j}")
            self.l4 = x
            if j in self.B:
                if j in self.B_in_stage4:
                    raise IllegalObservation(f"stage-4 chain {j} already used in stage 4")
                self.B_in_stage4.add(j)
            else:
                self.c = j
                self.xC = x
                self.stage = Stage.S5
        else:
            if j in self.A or j in self.B or j == self.c or j in self.D:
                raise IllegalObservation(f"stage-5 element {format_rat(x)} cannot join chain {j}")
            self.D.add(j)
            self.stage5_count += 1
            if self.stage5_count == self.k:
                self.stage = Stage.DONE

        self.total_chains = total_chains
        if total_chains >= self.target:
            self.win = True
            if self.halt_at_target:
                self.stage = Stage.DONE
