"""Exact graph-property checkers: minimum degree, vertex connectivity,
k-connectivity, k-robustness, and the one-sided robustness screen.

Conventions for tiny graphs: ``n = 0`` is rejected; a single node has vertex
connectivity 0, is not k-connected for any ``k >= 1`` and has robustness 0.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .graph import Graph, InvalidParameter

ROBUSTNESS_CAP = 16
SCREEN_BUDGET = 10_000


class EmptyGraphError(ValueError):
    pass


class CapacityError(RuntimeError):
    """Exact robustness was requested above the exhaustive-search cap."""


@dataclass(frozen=True)
class RobustnessVerdict:
    k: int
    holds: bool
    witness: tuple[frozenset[int], frozenset[int]] | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ConnectivityVerdict:
    k: int
    holds: bool
    witness: frozenset[int] | None = None  # separator of size < k, if any

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ScreenVerdict:
    """Outcome of :func:`robustness_screen`: either certified false or undecided."""

    k: int
    certified_false: bool
    reason: str
    witness: tuple[frozenset[int], frozenset[int]] | None = None

    @property
    def status(self) -> str:
        return "certified_false" if self.certified_false else "undecided"


def _check_nonempty(g: Graph) -> None:
    if g.n == 0:
        raise EmptyGraphError("graph has no nodes")


def min_degree(g: Graph) -> int:
    _check_nonempty(g)
    return int(g.degrees.min())


def is_connected(g: Graph) -> bool:
    _check_nonempty(g)
    return bool(K.components_ok(g.indptr, g.indices, g.n, np.zeros(g.n, np.bool_)))


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity via unit-capacity max flow (complete graphs give ``n-1``)."""
    _check_nonempty(g)
    n = g.n
    if _is_complete(g):
        return n - 1
    if not is_connected(g):
        return 0
    v = int(np.argmin(g.degrees))
    best, _, _ = K.kappa_search(g.indptr, g.indices, n, v, int(g.degrees[v]))
    return int(best)


def _separator_for_pair(g: Graph, s: int, t: int) -> frozenset[int]:
    cut = K.min_cut_nodes(g.indptr, g.indices, g.n, s, t)
    return frozenset(np.flatnonzero(cut).tolist())


def connectivity_verdict(g: Graph, k: int) -> ConnectivityVerdict:
    """Decide k-connectivity and, when it fails, name a separating node set.

    The witness is ``None`` only when ``n <= k`` (too few nodes to be
    k-connected, nothing to separate).
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    _check_nonempty(g)
    n = g.n
    if n <= k:
        return ConnectivityVerdict(k, False, None)
    deg = g.degrees
    removed = np.zeros(n, np.bool_)
    if not K.components_ok(g.indptr, g.indices, n, removed):
        return ConnectivityVerdict(k, False, frozenset())
    v = int(np.argmin(deg))
    if deg[v] < k:
        # n > k > deg(v) so at least one node lies beyond N[v]
        return ConnectivityVerdict(k, False, frozenset(g.neighbors(v).tolist()))
    if k == 1:
        return ConnectivityVerdict(k, True)
    cut = K.articulation(g.indptr, g.indices, n, removed)
    if cut >= 0:
        return ConnectivityVerdict(k, False, frozenset([int(cut)]))
    if k == 2:
        return ConnectivityVerdict(k, True)
    if k == 3:
        ip, ix = K.sparse_certificate(g.indptr, g.indices, n, 3)
        w, cut = K.separation_pair(ip, ix, n)
        if w >= 0:
            sep = [int(w)] if cut < 0 else [int(w), int(cut)]
            return ConnectivityVerdict(k, False, frozenset(sep))
        return ConnectivityVerdict(k, True)
    best, s, t = K.kappa_search(g.indptr, g.indices, n, v, k)
    if best >= k:
        return ConnectivityVerdict(k, True)
    return ConnectivityVerdict(k, False, _separator_for_pair(g, int(s), int(t)))


def is_k_connected(g: Graph, k: int) -> bool:
    return connectivity_verdict(g, k).holds


# -- robustness ---------------------------------------------------------------

def _bad_masks(g: Graph, k: int) -> np.ndarray:
    """``bad[A]``: A nonempty and every member has < k neighbours outside A."""
    n = g.n
    masks = np.arange(1 << n, dtype=np.uint32)
    bad = masks != 0
    deg = g.degrees
    for v, adj in enumerate(g.adjacency_masks()):
        member = ((masks >> v) & 1).astype(bool)
        inside = np.bitwise_count(masks & np.uint32(adj)).astype(np.int64)
        bad &= ~(member & (deg[v] - inside >= k))
    return bad


def _has_bad_subset(bad: np.ndarray, n: int) -> np.ndarray:
    sub = bad.copy()
    for i in range(n):
        view = sub.reshape(-1, 2, 1 << i)
        view[:, 1, :] |= view[:, 0, :]
    return sub


def violates_robustness(g: Graph, k: int, A, B) -> bool:
    """True if ``(A, B)`` is a nonempty disjoint pair on which k-robustness fails."""
    A, B = set(A), set(B)
    if not A or not B or A & B:
        return False
    adj = g.adjacency
    return (all(len(adj[a] - A) < k for a in A)
            and all(len(adj[b] - B) < k for b in B))


def is_k_robust(g: Graph, k: int, cap: int = ROBUSTNESS_CAP) -> RobustnessVerdict:
    """Exact k-robustness by exhaustive search over node subsets.

    The graph fails iff two disjoint nonempty sets are both *bad* (no member
    has k neighbours outside its own set).  Bad sets are tabulated over all
    ``2^n`` subsets and a subset-union pass marks every mask containing a bad
    subset, so the pair test is one lookup per subset.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    _check_nonempty(g)
    n = g.n
    if n > cap:
        raise CapacityError(f"exact robustness limited to n <= {cap} (got n={n}); "
                            "use robustness_screen for a one-sided check")
    if n == 1:
        return RobustnessVerdict(k, False, None)
    bad = _bad_masks(g, k)
    sub = _has_bad_subset(bad, n)
    hits = np.flatnonzero(bad & sub[::-1])  # sub[full ^ A] == sub[::-1][A]
    if len(hits) == 0:
        return RobustnessVerdict(k, True)
    a = int(hits[0])
    masks = np.arange(1 << n, dtype=np.int64)
    b = int(np.flatnonzero(bad & ((masks & a) == 0))[0])
    if (a & -a) > (b & -b):
        a, b = b, a
    to_set = lambda x: frozenset(i for i in range(n) if x >> i & 1)
    return RobustnessVerdict(k, False, (to_set(a), to_set(b)))


def robustness(g: Graph, cap: int = ROBUSTNESS_CAP) -> int:
    """Largest k for which ``g`` is k-robust (0 if not even 1-robust)."""
    _check_nonempty(g)
    if g.n == 1:
        return 0
    k = 0
    # r-robust implies (r-1)-robust, and nobody is (min_degree + 1)-robust
    while k < min_degree(g) and is_k_robust(g, k + 1, cap).holds:
        k += 1
    return k


def robustness_screen(g: Graph, k: int, budget: int = SCREEN_BUDGET, seed: int = 0,
                      max_size: int | None = None, k_connected: bool | None = None) -> ScreenVerdict:
    """One-sided k-robustness check that works at any n.

    Certified false when the graph is not k-connected (robustness implies
    connectivity) or when a randomised search finds a violating pair, which
    is re-verified before being reported.  Otherwise undecided.
    ``k_connected`` lets a caller pass an already computed connectivity answer.
    """
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    _check_nonempty(g)
    if g.n == 1:
        return ScreenVerdict(k, True, "single node")
    if min_degree(g) < k:
        return ScreenVerdict(k, True, "min_degree")
    if k_connected is None:
        k_connected = is_k_connected(g, k)
    if not k_connected:
        return ScreenVerdict(k, True, "not_k_connected")
    if budget > 0:
        ms = max_size or min(g.n // 2, 12)
        out_a = np.zeros(g.n, np.bool_)
        out_b = np.zeros(g.n, np.bool_)
        if K.screen_search(g.indptr, g.indices, g.n, k, budget, max(ms, 1), seed, out_a, out_b):
            A = frozenset(np.flatnonzero(out_a).tolist())
            B = frozenset(np.flatnonzero(out_b).tolist())
            if violates_robustness(g, k, A, B):
                return ScreenVerdict(k, True, "search", (A, B))
            warnings.warn("screen search produced an unverifiable witness; ignored")
    return ScreenVerdict(k, False, "undecided")


PROPERTIES = ("connectivity", "min_degree", "robustness", "robustness_screen")


def has_property(g: Graph, prop: str, k: int, screen_budget: int = SCREEN_BUDGET,
                 seed: int = 0, cap: int = ROBUSTNESS_CAP, memo: dict | None = None) -> bool:
    """Score one graph for a monotone property by name.

    ``robustness_screen`` counts a graph as a success unless it is certified
    false, so its frequency is an upper bound on the true robustness rate.
    ``memo`` (one dict per graph) shares connectivity answers between properties.
    """
    memo = {} if memo is None else memo

    def conn():
        if k not in memo:
            memo[k] = is_k_connected(g, k)
        return memo[k]

    if prop == "connectivity":
        return conn()
    if prop == "min_degree":
        return min_degree(g) >= k
    if prop == "robustness":
        return is_k_robust(g, k, cap).holds
    if prop == "robustness_screen":
        kc = conn() if min_degree(g) >= k else False
        return not robustness_screen(g, k, screen_budget, seed, k_connected=kc).certified_false
    raise InvalidParameter(f"unknown property {prop!r}; expected one of {PROPERTIES}")
