import io
import random
from fractions import Fraction as F

import pytest

from olcp.adversary import Adversary
from olcp.arena import (
    AdversaryStuck,
    IllegalMove,
    SearchBudgetExceeded,
    batch_run,
    check_round_bounds,
    iter_games,
    min_forced_chains,
    play_game,
    read_transcript,
    replay,
    trial_algorithm_names,
    write_csv,
    write_jsonl,
)
from olcp.oracle import brute_force_min_chains, brute_force_width
from olcp.order import ChainPartition, validate_partition, width
from olcp.partitioners import FirstFit, Scripted, make_algorithm

from helpers import brute_first_fit

GOLDEN_DECISIONS = [0, 0, 1, 2, 0, 1, 2, 3, 4]
GOLDEN_ENDPOINTS = [0, F(3, 2), F(5, 4), F(11, 8), F(-25, 16), F(-49, 32), F(-35, 64), F(-69, 128), F(59, 128)]
# frozen from the first verified runs of the search
NODES_K1_PRUNED = 246
NODES_K1_FULL = 318


def test_golden_first_fit_trace():
    r = play_game(Adversary(1), FirstFit())
    assert r.decisions == GOLDEN_DECISIONS
    assert r.endpoints == GOLDEN_ENDPOINTS
    assert [s.stage for s in r.steps] == ["S1", "S2", "S2", "S2", "S3", "S3", "S4", "S4", "S5"]
    assert (r.distinct_chains, r.max_width, r.forced) == (5, 3, True)


def test_golden_trace_cross_checked_by_oracles():
    # First-Fit on bare lists reproduces the choices, and the brute-force
    # width of every prefix matches the recorded one.
    r = play_game(Adversary(1), FirstFit())
    assert brute_first_fit(r.endpoints) == r.decisions
    for s in r.steps:
        assert s.width == brute_force_width(r.endpoints[: s.index])
    assert brute_force_min_chains(r.endpoints) == 3


def test_always_fresh_wins_before_stage5():
    for k in (1, 2, 5):
        script = Scripted(range(3 * k + 2))
        r = play_game(Adversary(k), script)
        assert r.forced and r.distinct_chains == 3 * k + 2
        assert r.stage_rounds["S5"] == 0 and r.steps[-1].stage == "S3"


def test_illegal_move_aborts():
    with pytest.raises(IllegalMove) as exc:
        play_game(Adversary(1), Scripted([0, 0, 0]))
    assert (exc.value.step, exc.value.chain, exc.value.r) == (3, 0, F(5, 4))
    with pytest.raises(IllegalMove) as exc:
        play_game(Adversary(1), Scripted([5]))
    assert exc.value.step == 1


def test_round_bound_guard():
    adv = Adversary(1)
    adv.rounds[adv.stage] = 5
    with pytest.raises(AdversaryStuck):
        check_round_bounds(adv)


@pytest.mark.parametrize("name", ["first-fit", "best-fit", "random:0", "random:17"])
def test_game_results_are_valid(name):
    for k in (1, 2, 4, 9):
        r = play_game(Adversary(k), make_algorithm(name))
        p = ChainPartition.from_mapping({})
        for s in r.steps:
            p.assign(s.r, s.chain)
        assert validate_partition(p) is None
        assert r.distinct_chains == 3 * k + 2
        assert r.max_width == width(r.endpoints) == 2 * k + 1
        chains = [s.chains for s in r.steps]
        widths = [s.width for s in r.steps]
        assert chains == sorted(chains) and widths == sorted(widths)


def test_width_check_can_be_disabled():
    r = play_game(Adversary(2), FirstFit(), check_width=False)
    assert r.max_width is None and all(s.width is None for s in r.steps)


def test_search_k1():
    res = min_forced_chains(1)
    assert res.min_chains == 5
    assert res.nodes == NODES_K1_PRUNED
    assert replay(1, res.witness).distinct_chains == 5


def test_search_k1_without_pruning():
    res = min_forced_chains(1, prune_at_target=False)
    assert res.min_chains == 5
    assert res.nodes == NODES_K1_FULL


def test_search_agrees_with_engine():
    games = list(iter_games(1))
    assert len(games) == min_forced_chains(1).leaves
    for decisions, chains in games:
        r = replay(1, decisions)
        assert r.decisions == decisions
        assert r.distinct_chains == chains >= 5


def test_search_budget():
    with pytest.raises(SearchBudgetExceeded) as exc:
        min_forced_chains(1, node_budget=20)
    assert exc.value.nodes == 20
    assert exc.value.lower_bound <= 5


@pytest.mark.slow
def test_search_k2():
    assert min_forced_chains(2).min_chains == 8


def test_batch_first_fit():
    rows = batch_run("first-fit", range(1, 11))
    assert [r.chains_min for r in rows] == [3 * k + 2 for k in range(1, 11)]
    assert all(r.games == 1 and r.forced_all for r in rows)


def test_batch_random():
    (row,) = batch_run("random:7", [1], trials=100, seed=0)
    assert row.games == 100 and row.chains_min >= 5 and row.width_max <= 3 and row.anomalies == 0


def test_batch_empty_and_deterministic():
    assert batch_run("first-fit", []) == []
    a = batch_run("random:1", range(1, 4), trials=5, seed=3)
    assert a == batch_run("random:1", range(1, 4), trials=5, seed=3)
    assert trial_algorithm_names("random:1", 2, 3, 0) != trial_algorithm_names("random:1", 2, 3, 1)
    assert trial_algorithm_names("best-fit", 2, 3, 0) == ["best-fit"]


def test_batch_counts_anomalies():
    (row,) = batch_run("scripted:0,0,0", [1])
    assert row.anomalies == 1 and not row.forced_all


@pytest.mark.parametrize("writer", [write_jsonl, write_csv])
def test_transcript_roundtrip(writer):
    r = play_game(Adversary(3), make_algorithm("random:5"))
    buf = io.StringIO()
    writer(r.steps, buf)
    steps = read_transcript(buf.getvalue())
    assert steps == r.steps
    again = replay(3, [s.chain for s in steps])
    assert again == r


def test_jsonl_record_shape():
    buf = io.StringIO()
    write_jsonl(play_game(Adversary(1), FirstFit()).steps, buf)
    first, *_, last = buf.getvalue().splitlines()
    assert first == '{"step": 1, "r": "0", "chain": 0, "stage": "S1", "chains": 1, "width": 1}'
    assert last == '{"step": 9, "r": "59/128", "chain": 4, "stage": "S5", "chains": 5, "width": 3}'


def test_irrevocability_on_sampled_games():
    rng = random.Random(1)
    for _ in range(10):
        k = rng.randint(1, 6)
        r = play_game(Adversary(k), make_algorithm(f"random:{rng.randint(0, 999)}"))
        t = rng.randint(1, len(r.steps))
        adv = Adversary(k)
        p = ChainPartition()
        for s in r.steps[:t]:
            assert adv.next_interval() == s.r
            p.assign(s.r, s.chain)
            adv.observe(s.chain, len(p))
        assert [list(c) for c in p] == [[s.r for s in r.steps[:t] if s.chain == j] for j in range(len(p))]
