import numpy as np
import pytest

from riglab.consensus import (ConsensusConfig, consensus_reached, h_local, run_filtered_consensus,
                              safety_holds, spread_monotone, ConsensusTrace)
from riglab.graph import Graph, InvalidParameter
from riglab.props import is_connected

from conftest import random_graph


def test_single_node_constant():
    tr = run_filtered_consensus(Graph.empty(1), [0.3], ConsensusConfig())
    assert tr.rounds_run == 0 and tr.converged and tr.values[0, 0] == 0.3


def test_two_nodes_average_in_one_round():
    g = Graph.from_edges(2, [(0, 1)])
    tr = run_filtered_consensus(g, [0.0, 1.0], ConsensusConfig(h=0, tol=0.0))
    assert np.allclose(tr.values[1], [0.5, 0.5])
    assert tr.spread[1] == 0.0 and tr.rounds_run == 1


def test_safety_against_constant_outlier():
    cfg = ConsensusConfig(h=1, adversaries={5}, strategy="constant", strategy_args=(100.0,))
    x0 = np.random.default_rng(0).random(6)
    tr = run_filtered_consensus(Graph.complete(6), x0, cfg)
    b = tr.values[:, tr.benign]
    assert b.min() >= 0 and b.max() <= 1
    assert safety_holds(tr) and spread_monotone(tr) and tr.converged


def test_constant_zero_immediate():
    cfg = ConsensusConfig(h=1, adversaries={0}, strategy="constant", strategy_args=(0.0,))
    tr = run_filtered_consensus(Graph.complete(4), np.zeros(4), cfg)
    assert tr.converged and tr.rounds_run == 0


def test_oscillate_disconnected_pair():
    # benign nodes 0 and 1 share no path; node 0 listens to an oscillating adversary
    g = Graph.from_edges(3, [(0, 2)])
    cfg = ConsensusConfig(h=0, adversaries={2}, strategy="oscillate",
                          strategy_args=(0.0, 1.0), max_rounds=200)
    tr = run_filtered_consensus(g, [0.0, 1.0, 0.0], cfg)
    assert not tr.converged and tr.rounds_run == 200


def test_trim_ties_and_own_value():
    # node 0 sees values 1, 1, 0.5 (own 0.5): with h=1 one of the 1s is dropped, the equal value kept
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    cfg = ConsensusConfig(h=1, max_rounds=1, tol=0.0)
    tr = run_filtered_consensus(g, [0.5, 1.0, 1.0, 0.5], cfg)
    assert tr.values[1, 0] == pytest.approx((0.5 + 1.0 + 0.5) / 3)


def test_max_push_on_robust_graph():
    cfg = ConsensusConfig(h=1, adversaries={0}, strategy="max_push")
    x0 = np.random.default_rng(3).random(7)
    tr = run_filtered_consensus(Graph.complete(7), x0, cfg)
    assert tr.h_local and tr.converged and safety_holds(tr)


def test_random_strategy_is_seeded():
    cfg = ConsensusConfig(h=1, adversaries={0}, strategy="random", strategy_args=(-5.0, 5.0), max_rounds=30)
    a = run_filtered_consensus(Graph.complete(6), np.linspace(0, 1, 6), cfg, seed=4)
    b = run_filtered_consensus(Graph.complete(6), np.linspace(0, 1, 6), cfg, seed=4)
    assert np.array_equal(a.values, b.values)


def test_consensus_reached_threshold():
    tr = ConsensusTrace(np.zeros((1, 2)), np.array([0.1]), np.ones(2, bool), 0, False, True)
    assert consensus_reached(tr, 0.1)
    assert not consensus_reached(tr, 0.05)
    tr.spread = np.array([0.0])
    assert consensus_reached(tr, 0.0)


def test_errors():
    with pytest.raises(InvalidParameter):
        run_filtered_consensus(Graph.complete(3), [0, 1], ConsensusConfig())
    with pytest.raises(InvalidParameter):
        ConsensusConfig(strategy="bribe")
    with pytest.raises(InvalidParameter):
        ConsensusConfig(weight_floor=0.0)


def test_h_local_flag():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3)])
    assert h_local(g, {1, 2}, 2)
    assert not h_local(g, {1, 2}, 1)


def test_h0_connected_graphs_converge():
    rng = np.random.default_rng(11)
    done = 0
    while done < 100:
        n = int(rng.integers(2, 31))
        g = random_graph(rng, n, float(rng.uniform(0.1, 0.6)))
        if not is_connected(g):
            continue
        tr = run_filtered_consensus(g, rng.random(n), ConsensusConfig(h=0, max_rounds=10_000))
        assert tr.converged and safety_holds(tr) and spread_monotone(tr)
        done += 1


def test_safety_random_h_local_runs():
    rng = np.random.default_rng(12)
    for t in range(60):
        n = int(rng.integers(6, 16))
        g = random_graph(rng, n, 0.6)
        adv = {int(rng.integers(n))}
        if not h_local(g, adv, 1):
            continue
        strat = ("constant", "oscillate", "max_push")[t % 3]
        args = {"constant": (50.0,), "oscillate": (-10.0, 10.0), "max_push": ()}[strat]
        cfg = ConsensusConfig(h=1, adversaries=adv, strategy=strat, strategy_args=args, max_rounds=300)
        tr = run_filtered_consensus(g, rng.random(n), cfg)
        assert safety_holds(tr) and spread_monotone(tr)
