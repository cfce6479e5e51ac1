import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import coordgame.dynamics as dyn
from coordgame.dynamics import (
    CYCLE,
    EQUILIBRIUM,
    TIMEOUT,
    best_response_set,
    payoff,
    random_profile,
    run,
    step,
    verify_cycle,
)
from coordgame.graphs import Graph, complete, cycle, er_gnp, path, star
from coordgame.partitions import is_equilibrium, profile_to_partition
from coordgame.seeding import as_rng
from oracles import all_branches, response_options


def test_payoff_complete_consensus():
    g = complete(3)
    for v in range(3):
        assert payoff(g, (0, 0, 0), v, 0) == 2


def test_payoff_cycle4_adjacent_pairs():
    # vertices in cycle order, adjacent pairs share a strategy: each vertex
    # has one neighbour of each colour
    g = cycle(4)
    u = (0, 0, 1, 1)
    for v in range(4):
        assert payoff(g, u, v, u[v]) == 1
        assert payoff(g, u, v, 1 - u[v]) == 1


def test_payoff_absent_strategy_is_zero():
    g = path(4)
    assert payoff(g, (0, 0, 0, 0), 2, 9) == 0


def test_payoff_out_of_range_vertex():
    with pytest.raises(ValueError):
        payoff(path(2), (0, 0), 2, 0)


def test_best_response_cycle4_tie():
    g = cycle(4)
    for v in range(4):
        assert best_response_set(g, (0, 0, 1, 1), v) == {0, 1}


def test_best_response_complete_majority():
    g = complete(4)
    assert best_response_set(g, (0, 0, 0, 1), 3) == {0}


def test_best_response_isolated_vertex():
    g = Graph(3, [0b010, 0b001, 0])
    assert best_response_set(g, (0, 1, 2), 2) == {2}


def test_step_k2_flips():
    assert step(path(2), (0, 1), as_rng(0)) == (1, 0)


def test_step_complete_majority_absorbs():
    assert step(complete(4), (0, 0, 0, 1), as_rng(0)) == (0, 0, 0, 0)


def test_step_fixes_equilibria_for_any_rng():
    g = cycle(4)
    eq = (0, 0, 1, 1)
    for seed in range(25):
        assert step(g, eq, as_rng(seed)) == eq


def test_step_preserves_strategy_labels():
    # labels need not be dense: remapping must round-trip
    assert step(path(2), (7, 40), as_rng(0)) == (40, 7)


def test_step_matches_branch_oracle():
    rng_pool = [as_rng(s) for s in range(40)]
    g = er_gnp(6, 0.5, 11)
    u = (0, 1, 2, 0, 1, 2)
    branches = set(all_branches(g, u))
    for rng in rng_pool:
        assert step(g, u, rng) in branches


def test_random_profile_single_strategy():
    assert random_profile(path(4), 1, as_rng(1)) == (0, 0, 0, 0)


def test_random_profile_uniform():
    counts = {}
    for s in range(4000):
        u = random_profile(path(2), 2, as_rng(s))
        counts[u] = counts.get(u, 0) + 1
    three_sigma = 3 * np.sqrt(4000 * 0.25 * 0.75)
    for u in itertools.product(range(2), repeat=2):
        assert abs(counts[u] - 1000) <= three_sigma


def test_random_profile_deterministic_under_seed():
    assert random_profile(path(5), 5, as_rng(3)) == random_profile(path(5), 5, as_rng(3))


def test_random_profile_rejects_zero_strategies():
    with pytest.raises(ValueError):
        random_profile(path(2), 0, as_rng(0))


def test_run_k2_deterministic_two_cycle():
    out = run(path(2), (0, 1), as_rng(0))
    assert out.kind == CYCLE
    assert out.period == 2
    assert out.deterministic is True
    assert out.cluster_number == 0


def test_run_equilibrium_at_step_zero():
    out = run(path(2), (0, 0), as_rng(0))
    assert out.kind == EQUILIBRIUM
    assert out.steps == 0
    assert out.cluster_number == 1
    assert out.partition == profile_to_partition((0, 0))


def test_run_k4_balanced_profile_flips_forever():
    # every vertex strictly prefers the opposite pair, so the balanced
    # profile is a forced 2-cycle; only 3+1 splits reach consensus
    out = run(complete(4), (0, 0, 1, 1), as_rng(0))
    assert out.kind == CYCLE
    assert out.period == 2
    assert out.deterministic is True
    out = run(complete(4), (0, 0, 0, 1), as_rng(0))
    assert out.kind == EQUILIBRIUM
    assert out.cluster_number == 1


def test_run_timeout_reports_zero_clusters():
    out = run(path(2), (0, 1), as_rng(0), max_steps=1)
    assert out.kind == TIMEOUT
    assert out.steps == 1
    assert out.cluster_number == 0


def test_run_validates_arguments():
    with pytest.raises(ValueError):
        run(path(2), (0, 1), as_rng(0), max_steps=0)
    with pytest.raises(ValueError):
        run(path(2), (0, 1), as_rng(0), window=3)
    with pytest.raises(ValueError):
        run(path(2), (0, 1, 1), as_rng(0))


def test_run_statistical_cycle_branch(monkeypatch):
    # disable the deterministic certificate so the K2 flip must be confirmed
    # over the window, exercising the statistical report
    monkeypatch.setattr(dyn, "verify_cycle", lambda g, states: False)
    out = run(path(2), (0, 1), as_rng(0), window=6)
    assert out.kind == CYCLE
    assert out.period == 2
    assert out.deterministic is False
    assert out.false_positive_bound == pytest.approx(2.0 ** (2 - 6))


def test_verify_cycle_k2():
    assert verify_cycle(path(2), [(0, 1), (1, 0)])


def test_verify_cycle_rejects_repeated_equilibrium():
    assert not verify_cycle(path(2), [(0, 0), (0, 0)])


def test_verify_cycle_rejects_pseudo_four_cycle():
    # star hub tied between two leaf colours: the exit from q1 is a coin
    # flip, so the apparent 4-cycle q1,q2,q1,q3 is not deterministic
    g = star(5)
    q1 = (0, 1, 1, 2, 2)
    q2 = (1, 0, 0, 0, 0)
    q3 = (2, 0, 0, 0, 0)
    assert response_options(g, q1, 0) == (1, 2)
    assert not verify_cycle(g, [q1, q2, q1, q3])


def test_verify_cycle_rejects_impossible_transition():
    # [0,0] -> [1,1] is not reachable at all
    assert not verify_cycle(path(2), [(0, 0), (1, 1)])


# -- invariants ----------------------------------------------------------------

def _connected_small_graphs():
    gs = [path(2), path(3), path(4), cycle(3), cycle(4), complete(4), star(4)]
    return gs


def test_equilibrium_iff_fixed_under_every_branch():
    for g in _connected_small_graphs():
        for u in itertools.product(range(2), repeat=g.order):
            fixed = all_branches(g, u) == {u: 1}
            assert is_equilibrium(g, profile_to_partition(u)) == fixed


@settings(max_examples=80, deadline=None)
@given(
    seed=st.integers(0, 10_000),
    p=st.floats(0.1, 0.9),
    n=st.integers(2, 12),
    c=st.integers(1, 4),
)
def test_handshake_identity(seed, p, n, c):
    g = er_gnp(n, p, seed)
    u = random_profile(g, c, as_rng(seed + 1))
    total = sum(payoff(g, u, v, u[v]) for v in range(n))
    mono = sum(1 for a, b in g.edges() if u[a] == u[b])
    assert total == 2 * mono


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000), n=st.integers(2, 10))
def test_best_response_equivariant_under_relabelling(seed, n):
    g = er_gnp(n, 0.5, seed)
    u = random_profile(g, n, as_rng(seed))
    shift = lambda s: (s + 3) % (n + 3)
    relabeled = tuple(shift(s) for s in u)
    for v in range(n):
        assert {shift(s) for s in best_response_set(g, u, v)} == best_response_set(
            g, relabeled, v
        )


def test_strategy_set_never_grows():
    for g in _connected_small_graphs():
        for u in itertools.product(range(3), repeat=g.order):
            for succ in all_branches(g, u):
                assert set(succ) <= set(u)


def test_complete_graph_one_step_structure():
    """On K_n the largest cluster never shrinks, the number of strategies
    never grows, and a unique largest cluster absorbs everything at once."""
    for n in (3, 4):
        g = complete(n)
        for u in itertools.product(range(4), repeat=n):
            sizes = sorted(np.bincount(np.array(u)))
            largest = sizes[-1]
            unique_largest = len(sizes) < 2 or sizes[-2] < largest
            for succ in all_branches(g, u):
                ssizes = np.bincount(np.array(succ))
                assert max(ssizes) >= largest
                assert len(set(succ)) <= len(set(u))
                if unique_largest:
                    assert len(set(succ)) == 1
