"""Seeded samplers for binomial, uniform and general random intersection graphs,
plus Erdos-Renyi graphs.

Every sampler takes ``seed`` (an int, or an already-built ``np.random.Generator``)
and is a pure function of its arguments.  Object sets are drawn into flat
arrays first (``ptr``/``objs``, CSR style) and edges come from an
object -> holders inverted index: every object contributes a clique on the
nodes that hold it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import (Graph, InvalidDistribution, InvalidParameter, ObjectAssignment,
                    SizeDistribution, as_rng)


def draw_subsets(rng: np.random.Generator, sizes: np.ndarray, P: int) -> tuple[np.ndarray, np.ndarray]:
    """Independent uniform subsets of ``{0..P-1}`` with the given sizes.

    Returns ``(ptr, objs)``; node ``i`` holds ``objs[ptr[i]:ptr[i+1]]`` (sorted).
    Small sets are drawn with replacement and duplicates re-drawn until none
    remain; the procedure commutes with relabelling the pool, so the result is
    uniform given its size.  Sets larger than P/2 use a permutation instead.
    """
    sizes = np.asarray(sizes, dtype=np.int64)
    n = len(sizes)
    if np.any(sizes < 0) or np.any(sizes > P):
        raise InvalidParameter("set sizes must lie in 0..P")
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sizes, out=ptr[1:])
    owner = np.repeat(np.arange(n, dtype=np.int64), sizes)
    objs = np.empty(ptr[-1], dtype=np.int64)
    big = 2 * sizes > P
    small_pos = np.flatnonzero(~big[owner])
    if len(small_pos):
        objs[small_pos] = rng.integers(0, P, len(small_pos))
        sub_owner = owner[small_pos]
        while True:
            key = sub_owner * P + objs[small_pos]
            order = np.argsort(key, kind="stable")
            dup = order[1:][key[order[1:]] == key[order[:-1]]]
            if len(dup) == 0:
                break
            objs[small_pos[dup]] = rng.integers(0, P, len(dup))
    for i in np.flatnonzero(big):
        objs[ptr[i]:ptr[i + 1]] = rng.permutation(P)[:sizes[i]]
    # sort objects within each node
    key = np.sort(owner * P + objs)
    return ptr, key - owner * P


def holder_pairs(ptr: np.ndarray, objs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """All (u, v) node pairs sharing an object, one pair per shared object."""
    n = len(ptr) - 1
    owner = np.repeat(np.arange(n, dtype=np.int64), np.diff(ptr))
    key = np.sort(objs * max(n, 1) + owner)
    o, h = np.divmod(key, max(n, 1))
    if len(o) == 0:
        return h, h
    starts = np.flatnonzero(np.r_[True, o[1:] != o[:-1]])
    ends = np.r_[starts[1:], len(o)]
    gend = np.repeat(ends, ends - starts)
    cnt = gend - np.arange(len(o)) - 1
    i_idx = np.repeat(np.arange(len(o)), cnt)
    offs = np.arange(len(i_idx)) - np.repeat(np.cumsum(cnt) - cnt, cnt)
    j_idx = i_idx + 1 + offs
    return h[i_idx], h[j_idx]


def graph_from_arrays(ptr: np.ndarray, objs: np.ndarray) -> Graph:
    u, v = holder_pairs(ptr, objs)
    return Graph._from_pairs(len(ptr) - 1, u, v)


def _assignment(P: int, ptr: np.ndarray, objs: np.ndarray) -> ObjectAssignment:
    sets = tuple(frozenset(objs[ptr[i]:ptr[i + 1]].tolist()) for i in range(len(ptr) - 1))
    return ObjectAssignment(P, sets)


def graph_from_assignment(assignment: ObjectAssignment) -> Graph:
    """Edge ``(i, j)`` exactly when ``S_i`` and ``S_j`` intersect."""
    sizes = assignment.sizes()
    ptr = np.zeros(len(sizes) + 1, dtype=np.int64)
    np.cumsum(sizes, out=ptr[1:])
    objs = np.fromiter((o for s in assignment.sets for o in s), dtype=np.int64, count=int(ptr[-1]))
    return graph_from_arrays(ptr, objs)


# -- raw draws (shared by the public samplers and the sweep harness) ---------

def check_uniform(n: int, P: int, K: int) -> None:
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    if P < 1 or K < 1 or K > P:
        raise InvalidParameter(f"uniform model needs 1 <= K <= P, got K={K}, P={P}")


def check_binomial(n: int, P: int, p: float) -> None:
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    if P < 1:
        raise InvalidParameter("P must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")


def draw_uniform(n: int, P: int, K: int, rng: np.random.Generator):
    check_uniform(n, P, K)
    return draw_subsets(rng, np.full(n, K, dtype=np.int64), P)


def draw_binomial(n: int, P: int, p: float, rng: np.random.Generator):
    # Bernoulli(p) per object is the same law as: |S_i| ~ Bin(P, p), then a
    # uniform subset of that size.
    check_binomial(n, P, p)
    return draw_subsets(rng, rng.binomial(P, p, size=n), P)


def draw_general(n: int, P: int, D: SizeDistribution, rng: np.random.Generator):
    if not isinstance(D, SizeDistribution):
        raise InvalidDistribution("D must be a SizeDistribution")
    if D.P != P:
        raise InvalidDistribution(f"distribution support is 1..{D.P}, pool has P={P}")
    if abs(float(D.pmf.sum()) - 1.0) > 1e-9:
        raise InvalidDistribution("pmf does not sum to 1")
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    return draw_subsets(rng, D.sample(rng, n), P)


# -- public samplers ---------------------------------------------------------

def sample_uniform_rig(n: int, P: int, K: int, seed) -> tuple[Graph, ObjectAssignment]:
    """Uniform random intersection graph ``G_u(n, P, K)``."""
    ptr, objs = draw_uniform(n, P, K, as_rng(seed))
    return graph_from_arrays(ptr, objs), _assignment(P, ptr, objs)


def sample_binomial_rig(n: int, P: int, p: float, seed) -> tuple[Graph, ObjectAssignment]:
    """Binomial random intersection graph ``G_b(n, P, p)``; empty sets are allowed."""
    ptr, objs = draw_binomial(n, P, p, as_rng(seed))
    return graph_from_arrays(ptr, objs), _assignment(P, ptr, objs)


def sample_general_rig(n: int, P: int, D: SizeDistribution, seed) -> tuple[Graph, ObjectAssignment]:
    """General random intersection graph: ``|S_i| ~ D``, then a uniform subset."""
    ptr, objs = draw_general(n, P, D, as_rng(seed))
    return graph_from_arrays(ptr, objs), _assignment(P, ptr, objs)


def _triu_unrank(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # row-major rank of (i, j), i < j, in the strict upper triangle
    k = k.astype(np.float64)
    i = n - 2 - np.floor(np.sqrt(-8 * k + 4 * n * (n - 1) - 7) / 2.0 - 0.5)
    i = i.astype(np.int64)
    j = (k + i + 1 - n * (n - 1) // 2 + (n - i) * ((n - i) - 1) // 2).astype(np.int64)
    return i, j


def sample_er(n: int, p_hat: float, seed) -> Graph:
    """Erdos-Renyi ``G(n, p_hat)``."""
    if not 0.0 <= p_hat <= 1.0:
        raise InvalidParameter(f"p_hat must lie in [0, 1], got {p_hat}")
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    rng = as_rng(seed)
    N = n * (n - 1) // 2
    if N == 0:
        return Graph.empty(n)
    m = int(rng.binomial(N, p_hat))
    _, ranks = draw_subsets(rng, np.array([m]), N)
    i, j = _triu_unrank(ranks, n)
    return Graph._from_pairs(n, i, j)


# -- model descriptors -------------------------------------------------------
# Light parameter records used by the asymptotics formulas and the sweep harness.

@dataclass(frozen=True)
class BinomialModel:
    n: int
    P: int
    p: float
    kind = "binomial"

    def draw(self, rng: np.random.Generator) -> Graph:
        return graph_from_arrays(*draw_binomial(self.n, self.P, self.p, rng))


@dataclass(frozen=True)
class UniformModel:
    n: int
    P: int
    K: int
    kind = "uniform"

    def draw(self, rng: np.random.Generator) -> Graph:
        return graph_from_arrays(*draw_uniform(self.n, self.P, self.K, rng))


@dataclass(frozen=True)
class GeneralModel:
    n: int
    P: int
    D: SizeDistribution
    kind = "general"

    def draw(self, rng: np.random.Generator) -> Graph:
        return graph_from_arrays(*draw_general(self.n, self.P, self.D, rng))


@dataclass(frozen=True)
class ERModel:
    n: int
    p_hat: float
    kind = "er"

    def draw(self, rng: np.random.Generator) -> Graph:
        return sample_er(self.n, self.p_hat, rng)


@dataclass(frozen=True)
class EmptyModel:
    """Edgeless graph; handy as the trivially-dominated side of a comparison."""

    n: int
    kind = "empty"

    def draw(self, rng: np.random.Generator) -> Graph:
        return Graph.empty(self.n)
