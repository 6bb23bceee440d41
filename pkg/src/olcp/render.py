"""Text rendering: transcript tables, ASCII number lines, stage narration."""
from __future__ import annotations

from .adversary import Adversary, Stage
from .order import format_rat

STAGE_TITLES = {
    "S1": "forcing the first k chains (set A)",
    "S2": "forcing k+1 new chains (set B)",
    "S3": "forcing a chain b in B on x_B",
    "S4": "forcing a new chain c on x_C",
    "S5": "forcing the last k chains (set D)",
}


def transcript_table(steps) -> str:
    lines = [f"{'step':>4}  {'stage':<5} {'r':>14}  {'chain':>5}  {'chains':>6}  {'width':>5}"]
    for s in steps:
        w = "-" if s.width is None else s.width
        lines.append(f"{s.index:>4}  {s.stage:<5} {format_rat(s.r):>14}  {s.chain:>5}  {s.chains:>6}  {w:>5}")
    return "\n".join(lines)


def number_line(steps, columns: int = 64) -> str:
    """Draw each interval ``[r-1, r]`` on a shared axis, one row per element."""
    if not steps:
        return ""
    lo = min(s.r for s in steps) - 1
    hi = max(s.r for s in steps)
    span = hi - lo or 1

    def col(v):
        return int(round(float((v - lo) / span * (columns - 1))))

    rows = []
    for s in steps:
        a, b = col(s.r - 1), col(s.r)
        bar = [" "] * columns
        for i in range(a, b + 1):
            bar[i] = "="
        bar[a], bar[b] = "[", "]"
        rows.append(f"{''.join(bar)}  chain {s.chain:<3} r={format_rat(s.r)}")
    axis = [" "] * columns
    ticks = []
    t = -(-lo.numerator // lo.denominator)  # ceil
    while t <= hi:
        axis[col(t)] = "|"
        ticks.append((col(t), str(t)))
        t += 1
    labels = [" "] * (columns + 4)
    for c, text in ticks:
        for i, ch in enumerate(text):
            if c + i < len(labels):
                labels[c + i] = ch
    rows.append("".join(axis))
    rows.append("".join(labels).rstrip())
    return "\n".join(rows)


def stage_figures(steps, columns: int = 64) -> str:
    out = []
    for tag in ("S1", "S2", "S3", "S4", "S5"):
        group = [s for s in steps if s.stage == tag]
        if not group:
            continue
        out.append(f"Stage {tag[1]}: {STAGE_TITLES[tag]}")
        out.append(number_line(group, columns))
        out.append("")
    return "\n".join(out)


def membership(adv: Adversary, j: int) -> str:
    """Which of the strategy's chain sets ``j`` belongs to after the move."""
    tags = []
    if j in adv.A:
        tags.append("A")
    if j in adv.B:
        tags.append("b" if j == adv.b else "B")
    if j in adv.new_in_stage3:
        tags.append("new in S3")
    if j == adv.c:
        tags.append("c")
    if j in adv.D:
        tags.append("D")
    return ", ".join(tags) or "-"


def fmt_set(ids) -> str:
    return "{" + ", ".join(str(i) for i in sorted(ids)) + "}"


class Narrator:
    """Observer for :func:`olcp.arena.play_game` that records a per-move story."""

    def __init__(self, adversary: Adversary):
        self.adversary = adversary
        self.lines: list[str] = []

    def __call__(self, step, before: Adversary, partition) -> None:
        adv = self.adversary
        bounds = before.bounds()
        where = f" l={format_rat(bounds[0])} h={format_rat(bounds[1])}" if bounds else ""
        self.lines.append(
            f"step {step.index:>3} [{step.stage}]{where} -> r={format_rat(step.r)} "
            f"on chain {step.chain} ({membership(adv, step.chain)}); chains={step.chains}"
        )
        if adv.stage is not before.stage:
            self.lines.append(self._transition(before, adv))

    def _transition(self, before, adv) -> str:
        if adv.stage is Stage.DONE:
            if adv.win:
                return f"  target {adv.target} reached: game over"
            return "  all stages complete"
        if adv.stage is Stage.S2:
            return f"  A = {fmt_set(adv.A)}; Stage 2 bisects (1, 2)"
        if adv.stage is Stage.S3:
            return (
                f"  B = {fmt_set(adv.B)}; l2={format_rat(adv.l2)} h2={format_rat(adv.h2)}; "
                f"Stage 3 starts at l3={format_rat(adv.l3)} h3={format_rat(adv.h3)}"
            )
        if adv.stage is Stage.S4:
            return (
                f"  b = {adv.b}, x_B = {format_rat(adv.xB)}; "
                f"Stage 4 starts at l4={format_rat(adv.l4)} h4={format_rat(adv.h4)}"
            )
        return f"  c = {adv.c}, x_C = {format_rat(adv.xC)}; Stage 5 stacks k copies of {format_rat(adv.xC + 1)}"

    def text(self) -> str:
        return "\n".join(self.lines)
