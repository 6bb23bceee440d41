"""Exponential reference implementations for cross-checking.

These deliberately avoid the sorted sweep and greedy shortcuts used in
:mod:`olcp.order`; they only ever ask whether two elements are comparable.
"""
from __future__ import annotations

from .order import as_rat, comparable

MAX_WIDTH_N = 20
MAX_CHAINS_N = 12


class TooLarge(ValueError):
    pass


def brute_force_width(elements) -> int:
    """Largest pairwise-incomparable subset, by include/exclude enumeration."""
    xs = [as_rat(x) for x in elements]
    n = len(xs)
    if n > MAX_WIDTH_N:
        raise TooLarge(f"brute_force_width accepts at most {MAX_WIDTH_N} elements, got {n}")
    inc = [[not comparable(xs[i], xs[j]) for j in range(n)] for i in range(n)]
    best = 0

    def extend(i, chosen):
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = len(chosen)
            return
        if all(inc[i][c] for c in chosen):
            chosen.append(i)
            extend(i + 1, chosen)
            chosen.pop()
        extend(i + 1, chosen)

    extend(0, [])
    return best


def brute_force_min_chains(elements) -> int:
    """Fewest chains covering the elements, by exhaustive set-partition search."""
    xs = [as_rat(x) for x in elements]
    n = len(xs)
    if n > MAX_CHAINS_N:
        raise TooLarge(f"brute_force_min_chains accepts at most {MAX_CHAINS_N} elements, got {n}")
    comp = [[comparable(xs[i], xs[j]) for j in range(n)] for i in range(n)]
    best = n
    blocks: list[list[int]] = []

    def place(i):
        nonlocal best
        if len(blocks) >= best:
            return
        if i == n:
            best = len(blocks)
            return
        for block in blocks:
            if all(comp[i][m] for m in block):
                block.append(i)
                place(i + 1)
                block.pop()
        blocks.append([i])
        place(i + 1)
        blocks.pop()

    place(0)
    return best
