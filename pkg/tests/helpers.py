from bisect import bisect_left, bisect_right
from fractions import Fraction

from hypothesis import strategies as st

from olcp.order import Rat


def dyadic(rng, lo, hi, bits=4):
    """Uniform dyadic rational in [lo, hi] with denominator 2**bits."""
    scale = 1 << bits
    return Rat(rng.randint(lo * scale, hi * scale), scale)


def random_instance(rng, n_max, lo=-4, hi=4, bits=4):
    n = rng.randint(0, n_max)
    return [dyadic(rng, lo, hi, bits) for _ in range(n)]


def bounded_width_sequence(rng, w, n, span=20, bits=4):
    """Random endpoints, keeping only those that leave the width at most ``w``."""
    rs = []
    seq = []
    attempts = 0
    while len(seq) < n and attempts < 4 * n:
        attempts += 1
        x = dyadic(rng, 0, span, bits)
        starts = [x - 1, x] + rs[bisect_left(rs, x - 1):bisect_right(rs, x)]
        crowd = max(bisect_right(rs, s + 1) - bisect_left(rs, s) for s in starts)
        if crowd + 1 <= w:
            seq.append(x)
            rs.insert(bisect_left(rs, x), x)
    return seq


def brute_first_fit(seq):
    """First-Fit on raw lists, written without ChainPartition."""
    chains = []
    out = []
    for x in seq:
        for j, chain in enumerate(chains):
            if all(abs(x - y) > 1 for y in chain):
                chain.append(x)
                out.append(j)
                break
        else:
            chains.append([x])
            out.append(len(chains) - 1)
    return out


dyadics = st.builds(
    lambda num, bits: Fraction(num, 1 << bits),
    st.integers(min_value=-64, max_value=64),
    st.integers(min_value=0, max_value=4),
)

small_instances = st.lists(dyadics, max_size=12)
