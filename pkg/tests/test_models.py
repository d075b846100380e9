import itertools

import numpy as np
import pytest
from scipy import stats

from riglab.graph import Graph, InvalidDistribution, InvalidParameter, ObjectAssignment, SizeDistribution, trial_rng
from riglab.models import (draw_binomial, draw_subsets, graph_from_assignment, sample_binomial_rig,
                           sample_er, sample_general_rig, sample_uniform_rig)

from conftest import within_3sigma

TRIALS = 20_000


def pairwise_graph(a: ObjectAssignment) -> Graph:
    return Graph.from_edges(a.n, [(i, j) for i, j in itertools.combinations(range(a.n), 2)
                                  if a.sets[i] & a.sets[j]])


def test_uniform_full_pool_is_complete():
    g, a = sample_uniform_rig(4, 6, 6, seed=3)
    assert g == Graph.complete(4)
    assert all(len(s) == 6 for s in a.sets)


def test_single_node():
    g, _ = sample_uniform_rig(1, 5, 2, 0)
    assert g.n == 1 and g.m == 0
    g, _ = sample_general_rig(1, 4, SizeDistribution.uniform_range(4, 1, 4), 0)
    assert g.n == 1 and g.m == 0


def test_binomial_extremes():
    g, a = sample_binomial_rig(5, 10, 0.0, 1)
    assert g.m == 0 and all(len(s) == 0 for s in a.sets)
    g, a = sample_binomial_rig(5, 10, 1.0, 1)
    assert g == Graph.complete(5) and all(len(s) == 10 for s in a.sets)


def test_er_extremes():
    assert sample_er(4, 1.0, 0) == Graph.complete(4)
    assert sample_er(4, 0.0, 0).m == 0


@pytest.mark.parametrize("call", [
    lambda: sample_uniform_rig(3, 5, 0, 0),
    lambda: sample_uniform_rig(3, 5, 6, 0),
    lambda: sample_uniform_rig(3, 0, 1, 0),
    lambda: sample_binomial_rig(3, 5, 1.5, 0),
    lambda: sample_binomial_rig(3, 5, -0.1, 0),
    lambda: sample_er(3, 2.0, 0),
])
def test_invalid_parameters(call):
    with pytest.raises(InvalidParameter):
        call()


def test_general_rejects_mismatched_distribution():
    with pytest.raises(InvalidDistribution):
        sample_general_rig(3, 5, SizeDistribution.point_mass(4, 2), 0)


def test_graph_from_assignment_examples():
    g = graph_from_assignment(ObjectAssignment.from_lists(3, [[0, 1], [1, 2]]))
    assert g.edge_set() == {(0, 1)}
    assert graph_from_assignment(ObjectAssignment.from_lists(2, [[0], [1]])).m == 0
    g = graph_from_assignment(ObjectAssignment.from_lists(2, [[0], [0], [1]]))
    assert g.edge_set() == {(0, 1)} and g.degrees[2] == 0


def test_inverted_index_matches_pairwise():
    rng = np.random.default_rng(7)
    for t in range(1000):
        n = int(rng.integers(1, 51))
        P = int(rng.integers(1, 40))
        kind = t % 3
        if kind == 0:
            g, a = sample_uniform_rig(n, P, int(rng.integers(1, P + 1)), t)
        elif kind == 1:
            g, a = sample_binomial_rig(n, P, float(rng.random() * 0.3), t)
        else:
            g, a = sample_general_rig(n, P, SizeDistribution.uniform_range(P, 1, max(1, P // 3)), t)
        assert g == pairwise_graph(a) == graph_from_assignment(a)


def test_samplers_are_seed_functions():
    for s in range(5):
        assert sample_uniform_rig(30, 50, 4, s) == sample_uniform_rig(30, 50, 4, s)
        assert sample_binomial_rig(30, 50, 0.1, s) == sample_binomial_rig(30, 50, 0.1, s)
        assert sample_er(30, 0.2, s) == sample_er(30, 0.2, s)


def test_uniform_set_frequencies():
    # every 2-subset of a 5-pool equally likely
    ptr, objs = draw_subsets(trial_rng(11), np.full(100_000, 2), 5)
    pairs = objs.reshape(-1, 2)
    assert np.all(pairs[:, 0] < pairs[:, 1])
    codes = pairs[:, 0] * 5 + pairs[:, 1]
    for a, b in itertools.combinations(range(5), 2):
        assert within_3sigma(int(np.sum(codes == a * 5 + b)), 100_000, 0.1)


def test_large_sets_use_permutation_path():
    ptr, objs = draw_subsets(trial_rng(2), np.array([9, 10, 3]), 10)
    sets = [objs[ptr[i]:ptr[i + 1]] for i in range(3)]
    assert [len(set(s.tolist())) for s in sets] == [9, 10, 3]


def test_binomial_size_histogram():
    P, p = 10, 0.3
    ptr, _ = draw_binomial(100_000, P, p, trial_rng(5))
    obs = np.bincount(np.diff(ptr), minlength=P + 1)
    exp = stats.binom.pmf(np.arange(P + 1), P, p) * 100_000
    # pool the sparse upper tail so every cell has a usable expectation
    keep = exp >= 5
    o = np.r_[obs[keep], obs[~keep].sum()]
    e = np.r_[exp[keep], exp[~keep].sum()]
    chi2 = float(((o - e) ** 2 / e).sum())
    assert stats.chi2.sf(chi2, len(o) - 1) > 1e-3


def test_er_edge_count_law():
    ms = [sample_er(40, 0.1, s).m for s in range(2000)]
    N = 40 * 39 // 2
    assert abs(np.mean(ms) - N * 0.1) < 3 * np.sqrt(N * 0.09 / 2000)


def _edge_freq(fn, trials=TRIALS):
    return sum(fn(s).m for s in range(trials))


# reference values from exhaustive enumeration of set pairs (P <= 5)
@pytest.mark.parametrize("fn,q", [
    (lambda s: sample_uniform_rig(2, 5, 2, s)[0], 0.7),
    (lambda s: sample_binomial_rig(2, 2, 0.5, s)[0], 0.4375),
    (lambda s: sample_general_rig(2, 2, SizeDistribution.uniform_range(2, 1, 2), s)[0], 0.875),
    (lambda s: sample_er(2, 0.3, s), 0.3),
])
def test_edge_frequency(fn, q):
    assert within_3sigma(_edge_freq(fn), TRIALS, q)


def test_general_point_mass_matches_uniform():
    D = SizeDistribution.point_mass(5, 2)
    assert within_3sigma(_edge_freq(lambda s: sample_general_rig(2, 5, D, s)[0]), TRIALS, 0.7)
