from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from olcp.oracle import TooLarge, brute_force_min_chains, brute_force_width

from helpers import small_instances

K1_TRACE = [0, F(3, 2), F(5, 4), F(11, 8), F(-25, 16), F(-49, 32), F(-35, 64), F(-69, 128), F(59, 128)]


@pytest.mark.parametrize("xs, w", [([0, 0], 2), ([0, F(1, 2), 2], 2), ([], 0), ([0, 1, 2], 2)])
def test_brute_force_width(xs, w):
    assert brute_force_width(xs) == w


@pytest.mark.parametrize("xs, m", [([0, 2], 1), ([0, 0, 0], 3), ([], 0), (K1_TRACE, 3)])
def test_brute_force_min_chains(xs, m):
    assert brute_force_min_chains(xs) == m


def test_size_caps_are_hard_errors():
    with pytest.raises(TooLarge):
        brute_force_width([0] * 21)
    with pytest.raises(TooLarge):
        brute_force_min_chains([0] * 13)
    assert brute_force_width([0] * 20) == 20
    assert brute_force_min_chains([0] * 12) == 12


@settings(max_examples=200)
@given(small_instances)
def test_oracles_agree_with_dilworth(xs):
    assert brute_force_width(xs) == brute_force_min_chains(xs)
