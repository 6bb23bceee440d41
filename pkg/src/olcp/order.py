"""Semi-orders given by unit-interval representations.

An element is identified with the right endpoint ``r`` of its interval
``[r - 1, r]``.  Endpoints are exact rationals (``gmpy2.mpq``, which compares
and hashes equal to :class:`fractions.Fraction`), so every comparison is
exact.  ``x < y`` holds iff ``x.r < y.r - 1``, so two elements
at distance exactly 1 are incomparable.
"""
from __future__ import annotations

import enum
from bisect import bisect_left, insort
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import gmpy2

Rat = gmpy2.mpq


class Relation(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def as_rat(value) -> Rat:
    """Coerce ints, Fractions and ``"p/q"`` strings to a :data:`Rat`.

    Floats are rejected: an endpoint that went through binary floating point
    has already lost the exactness the whole model relies on.
    """
    if isinstance(value, Rat):
        return value
    if isinstance(value, Fraction):
        return Rat(value.numerator, value.denominator)
    if isinstance(value, (bool, float)):
        raise TypeError(f"refusing inexact endpoint {value!r}")
    if isinstance(value, int):
        return Rat(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(q: Rat) -> str:
    """Canonical ``"p/q"`` form, ``"p"`` when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(text: str) -> Rat:
    text = text.strip()
    num, sep, den = text.partition("/")
    try:
        if sep:
            value = Rat(int(num), int(den))
        else:
            value = Rat(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational in p/q form: {text!r}") from exc
    return value


def is_dyadic(q: Rat) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


def compare(x: Rat, y: Rat) -> Relation:
    if x < y - 1:
        return Relation.LESS
    if y < x - 1:
        return Relation.GREATER
    return Relation.INCOMPARABLE


def comparable(x: Rat, y: Rat) -> bool:
    return abs(x - y) > 1


def width(elements: Iterable[Rat]) -> int:
    """Size of a largest antichain.

    For unit intervals this is the largest number of endpoints fitting in a
    window of length 1, found with a sliding window over the sorted values.
    """
    rs = sorted(elements)
    best = 0
    lo = 0
    for hi, r in enumerate(rs):
        while rs[lo] < r - 1:
            lo += 1
        best = max(best, hi - lo + 1)
    return best


def is_chain(elements: Sequence[Rat]) -> bool:
    rs = sorted(elements)
    return all(b - a > 1 for a, b in zip(rs, rs[1:]))


class Violation(NamedTuple):
    chain: int
    pair: tuple


class ChainPartition:
    """An on-line chain partition under construction.

    Chain ids are dense: the next fresh chain always has id ``len(self)``.
    Each chain keeps its elements in assignment order and, separately, in
    sorted order so a legality test is a single bisection.
    """

    def __init__(self, chains: Iterable[Iterable] | None = None):
        self._chains: list[list[Rat]] = []
        self._sorted: list[list[Rat]] = []
        self.assignments: list[tuple[Fraction, int]] = []
        for j, chain in enumerate(chains or ()):
            for x in chain:
                self._place(as_rat(x), j)

    @classmethod
    def from_mapping(cls, chains: dict) -> "ChainPartition":
        """Build from ``{chain_id: [endpoints...]}`` without checking legality."""
        part = cls()
        for j in sorted(chains):
            while len(part._chains) <= j:
                part._chains.append([])
                part._sorted.append([])
            for x in chains[j]:
                part._place(as_rat(x), j)
        return part

    def _place(self, x: Rat, j: int) -> None:
        while len(self._chains) <= j:
            self._chains.append([])
            self._sorted.append([])
        self._chains[j].append(x)
        insort(self._sorted[j], x)
        self.assignments.append((x, j))

    def __len__(self) -> int:
        return len(self._chains)

    def __iter__(self):
        return iter(self._chains)

    def __getitem__(self, j: int) -> list[Rat]:
        return self._chains[j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ChainPartition):
            return NotImplemented
        return self._chains == other._chains

    def __repr__(self) -> str:
        body = ", ".join(
            f"{j}: [{', '.join(format_rat(x) for x in chain)}]"
            for j, chain in enumerate(self._chains)
        )
        return f"ChainPartition({{{body}}})"

    @property
    def n_elements(self) -> int:
        return len(self.assignments)

    def as_dict(self) -> dict[int, list[Rat]]:
        return {j: list(chain) for j, chain in enumerate(self._chains)}

    def is_legal(self, j: int, x: Rat) -> bool:
        """True if ``x`` may join chain ``j`` (an existing chain or the next fresh id)."""
        if j == len(self._chains):
            return True
        if not 0 <= j < len(self._chains):
            return False
        s = self._sorted[j]
        i = bisect_left(s, x - 1)
        return i == len(s) or s[i] > x + 1

    def legal_chains(self, x: Rat) -> list[int]:
        """Legal existing chains in id order, followed by the fresh id."""
        out = [j for j in range(len(self._chains)) if self.is_legal(j, x)]
        out.append(len(self._chains))
        return out

    def neighbors(self, j: int, x: Rat):
        """Largest element of chain ``j`` below ``x`` and smallest above (``None`` if absent)."""
        s = self._sorted[j]
        i = bisect_left(s, x)
        below = s[i - 1] if i > 0 else None
        while i < len(s) and s[i] == x:
            i += 1
        above = s[i] if i < len(s) else None
        return below, above

    def assign(self, x: Rat, j: int) -> None:
        if not self.is_legal(j, x):
            raise ValueError(f"chain {j} is not legal for {format_rat(x)}")
        self._place(x, j)

    def copy(self) -> "ChainPartition":
        new = ChainPartition.__new__(ChainPartition)
        new._chains = [list(c) for c in self._chains]
        new._sorted = [list(c) for c in self._sorted]
        new.assignments = list(self.assignments)
        return new


def validate_partition(p: ChainPartition | dict) -> Violation | None:
    """Return ``None`` if every chain is a chain, else the first offending pair.

    Pairs are scanned in assignment order within each chain.
    """
    chains = p.as_dict() if isinstance(p, ChainPartition) else p
    for j in sorted(chains):
        elems = [as_rat(x) for x in chains[j]]
        for a in range(len(elems)):
            for b in range(a + 1, len(elems)):
                if not comparable(elems[a], elems[b]):
                    return Violation(j, (elems[a], elems[b]))
    return None


def offline_optimal_partition(elements: Iterable) -> ChainPartition:
    """Partition into ``width(elements)`` chains.

    Elements are taken in ascending order (ties keep input order) and each
    joins the legal chain with the largest top, opening a new chain only
    when none is legal.
    """
    rs = sorted((as_rat(x) for x in elements))
    part = ChainPartition()
    tops: list[Rat] = []
    for x in rs:
        best = None
        for j, t in enumerate(tops):
            if t < x - 1 and (best is None or t > tops[best]):
                best = j
        if best is None:
            best = len(tops)
            tops.append(x)
        else:
            tops[best] = x
        part.assign(x, best)
    return part


class WidthTracker:
    """Width of a growing multiset, updated per insertion.

    Only windows containing the new element can grow, so each insertion
    scans the elements within distance 1 of it.
    """

    def __init__(self):
        self.width = 0
        self._rs: list[Rat] = []

    def add(self, x: Rat) -> int:
        rs = self._rs
        insort(rs, x)
        lo = bisect_left(rs, x - 1)
        # windows [rs[i], rs[i] + 1] for rs[i] in [x - 1, x]
        hi = lo
        n = len(rs)
        i = lo
        while i < n and rs[i] <= x:
            limit = rs[i] + 1
            if hi < i:
                hi = i
            while hi < n and rs[hi] <= limit:
                hi += 1
            if hi - i > self.width:
                self.width = hi - i
            i += 1
        return self.width
