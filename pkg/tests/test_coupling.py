import math
import warnings

import numpy as np
import pytest

from riglab.asymptotics import edge_prob_binomial_exact, edge_prob_uniform_exact
from riglab.coupling import (RegimeWarning, bracket_binomial, bracket_success_binomial,
                             bracket_triple, dominance_test, eps_bracket, eps_general,
                             lemma7_regime, nested_binomial_pair, nested_uniform_pair,
                             p_for_uniform_cover, p_hat_lemma7)
from riglab.graph import InvalidParameter, SizeDistribution
from riglab.models import BinomialModel, EmptyModel, ERModel, UniformModel, sample_er
from riglab.props import is_k_connected, min_degree

from conftest import within_3sigma

TRIALS = 20_000


def test_nested_uniform_basic():
    for s in range(200):
        pair = nested_uniform_pair(30, 60, 2, 5, s)
        assert pair.subgraph_holds
    pair = nested_uniform_pair(30, 60, 4, 4, 1)
    assert pair.lo == pair.hi
    with pytest.raises(InvalidParameter):
        nested_uniform_pair(3, 10, 5, 4, 0)


def test_nested_binomial_basic():
    for s in range(200):
        assert nested_binomial_pair(30, 60, 0.02, 0.06, s).subgraph_holds
    pair = nested_binomial_pair(30, 60, 0.05, 0.05, 2)
    assert pair.lo == pair.hi
    assert nested_binomial_pair(30, 60, 0.0, 0.05, 3).lo.m == 0
    assert nested_binomial_pair(30, 60, 0.0, 0.0, 3).hi.m == 0
    with pytest.raises(InvalidParameter):
        nested_binomial_pair(3, 10, 0.5, 0.4, 0)


def test_nested_uniform_lo_marginal():
    hits = sum(nested_uniform_pair(2, 5, 1, 2, s).lo.m for s in range(TRIALS))
    # a uniform 1-subset of a 5-pool meets another with probability 1/5
    assert within_3sigma(hits, TRIALS, edge_prob_uniform_exact(5, 1))
    assert edge_prob_uniform_exact(5, 1) == pytest.approx(0.2)
    hits = sum(nested_uniform_pair(2, 5, 1, 2, s).hi.m for s in range(TRIALS))
    assert within_3sigma(hits, TRIALS, 0.7)


def test_nested_binomial_lo_marginal():
    hits = sum(nested_binomial_pair(2, 2, 0.25, 0.5, s).lo.m for s in range(TRIALS))
    assert within_3sigma(hits, TRIALS, edge_prob_binomial_exact(2, 0.25))
    hits = sum(nested_binomial_pair(2, 2, 0.25, 0.5, s).hi.m for s in range(TRIALS))
    assert within_3sigma(hits, TRIALS, 0.4375)


def test_coupled_monotone_property():
    for s in range(300):
        pair = nested_uniform_pair(40, 200, 3, 6, s)
        for k in (1, 2):
            if is_k_connected(pair.lo, k):
                assert is_k_connected(pair.hi, k)
            if min_degree(pair.lo) >= k:
                assert min_degree(pair.hi) >= k


def test_bracket_examples():
    b = bracket_binomial(500, 10**6, 2e-4)
    assert (b.K_minus, b.K_plus) == (137, 263)
    b = bracket_binomial(1000, 10**9, 1e-3)
    assert b.K_plus - b.K_minus < 0.1 * 1e6
    with pytest.warns(RegimeWarning):
        b = bracket_binomial(10**6, 10**6, 1e-6)
    assert b.K_minus == 0
    assert b.K_minus <= b.K_plus and b.eps_n >= 0 and 0 <= b.p_hat <= 1


def test_bracket_success_examples():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        assert bracket_success_binomial(50, 100, 0.0, 0)
        b = bracket_binomial(50, 100, 1.0)
    assert bracket_success_binomial(50, 100, 1.0, 0) == (b.K_plus == 100)
    freq = np.mean([bracket_success_binomial(500, 10**6, 2e-4, s) for s in range(200)])
    assert freq >= 0.99


def test_bracket_success_nondecreasing_in_P():
    n, pP = 200, 60.0
    freqs = []
    for P in (200, 2000, 20000):
        freqs.append(np.mean([bracket_success_binomial(n, P, pP / P, s) for s in range(2000)]))
    for a, b in zip(freqs, freqs[1:]):
        assert b >= a - 3 * math.sqrt(0.25 / 2000)


def test_bracket_triple_nests_when_sizes_fit():
    for s in range(30):
        t = bracket_triple(100, 5000, 0.02, s)
        if t.sizes_in_bracket:
            assert t.nested


def test_uniform_cover_p():
    assert p_for_uniform_cover(1000, 10**6, 1000) == pytest.approx(1e-3 * (1 - math.sqrt(3 * math.log(1000) / 1000)))
    with pytest.warns(RegimeWarning):
        assert p_for_uniform_cover(1000, 100, 5) == 0.0


def test_eps_general():
    assert eps_general(1000, SizeDistribution.point_mass(200, 100)) == 0.0
    D = SizeDistribution.from_mapping(300, {99: 0.5, 101: 0.5})  # mean 100, var 1
    with pytest.warns(RegimeWarning):  # 0.214 > 1/ln 1000
        assert eps_general(1000, D) == pytest.approx(0.2139, abs=1e-4)
    with pytest.warns(RegimeWarning):  # 0.851 > 1/ln 10^6
        eps, lo, hi = eps_bracket(10**6, D)
    assert lo < D.mean < hi


def test_eps_general_boundary_warns():
    n = 1000
    E = 100.0
    var = E * E * math.log(n) ** 2 / n
    # two-point law with the requested mean and variance
    d = math.sqrt(var)
    D = SizeDistribution.from_mapping(400, {int(round(E - d)): 0.5, int(round(E + d)): 0.5})
    with pytest.warns(RegimeWarning):
        eps = eps_general(n, D)
    assert eps > 0.9


def test_p_hat():
    assert p_hat_lemma7(100, 1000, 0.0) == 0.0
    assert p_hat_lemma7(10**4, 10**9, 1e-6) == pytest.approx(9.895e-4, rel=1e-4)
    with pytest.warns(RegimeWarning):
        assert p_hat_lemma7(10**4, 10**6, 1e-3) == 0.0
    for n in (10, 100, 1000):
        for P in (10**3, 10**5):
            for p in np.geomspace(1e-6, 1e-2, 9):
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RegimeWarning)
                    ph = p_hat_lemma7(n, P, float(p))
                factor = 1 - n * p + 2 * p - p * p * P / 2
                if factor <= 1:
                    assert ph <= p * p * P + 1e-18


def test_regime_flags():
    f = lemma7_regime(500, 10**5, 1e-4)
    assert set(f) == {"p_n_ln_n", "p2P_ln_n", "in_regime"}


def test_dominance_trivial_cases():
    z = dominance_test(EmptyModel(20), ERModel(20, 0.5), "connectivity", 1, 300, seed=1)
    assert z <= 0
    with pytest.raises(InvalidParameter):
        dominance_test(EmptyModel(5), EmptyModel(5), "connectivity", 1, 0)


def test_dominance_identical_samplers():
    zs = [dominance_test(ERModel(30, 0.12), ERModel(30, 0.12), "connectivity", 1, 300, seed=s)
          for s in range(20)]
    assert sum(abs(z) < 3 for z in zs) >= 19


def test_dominance_accepts_callables():
    z = dominance_test(lambda r: sample_er(20, 0.05, r), ERModel(20, 0.5), "min_degree", 1, 200)
    assert z < 0


def test_dominance_worker_invariant():
    a = dominance_test(ERModel(30, 0.12), UniformModel(30, 100, 2), "connectivity", 1, 200, seed=4, workers=1)
    b = dominance_test(ERModel(30, 0.12), UniformModel(30, 100, 2), "connectivity", 1, 200, seed=4, workers=3)
    assert a == b
