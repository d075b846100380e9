"""Shared brute-force oracles and graph generators for the test suite.

The oracles here deliberately avoid the package's own algorithms: they work
on plain Python sets and enumerate everything.
"""
from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np
import pytest

from riglab.graph import Graph


def to_graph(G: nx.Graph) -> Graph:
    mapping = {v: i for i, v in enumerate(sorted(G.nodes()))}
    return Graph.from_edges(G.number_of_nodes(), [(mapping[a], mapping[b]) for a, b in G.edges()])


def adjacency_sets(g: Graph) -> list[set[int]]:
    adj = [set() for _ in range(g.n)]
    for a, b in g.edges().tolist():
        adj[a].add(b)
        adj[b].add(a)
    return adj


def connected_after_removal(adj, removed) -> bool:
    alive = [v for v in range(len(adj)) if v not in removed]
    if len(alive) <= 1:
        return True
    seen = {alive[0]}
    stack = [alive[0]]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in removed and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(alive)


def brute_k_connected(g: Graph, k: int) -> bool:
    """n >= k+1 and no deletion of at most k-1 nodes disconnects the graph."""
    if g.n < k + 1:
        return False
    adj = adjacency_sets(g)
    for r in range(k):
        for S in itertools.combinations(range(g.n), r):
            if not connected_after_removal(adj, set(S)):
                return False
    return True


def brute_separator(g: Graph, S) -> bool:
    return not connected_after_removal(adjacency_sets(g), set(S))


def brute_k_robust(g: Graph, k: int):
    """Ternary enumeration of (A, B, neither) labellings.  Returns (holds, witness)."""
    adj = adjacency_sets(g)
    n = g.n
    for lab in itertools.product((0, 1, 2), repeat=n):
        A = {i for i in range(n) if lab[i] == 1}
        B = {i for i in range(n) if lab[i] == 2}
        if not A or not B or min(A) > min(B):
            continue
        a_ok = any(len(adj[a] - A) >= k for a in A)
        b_ok = any(len(adj[b] - B) >= k for b in B)
        if not (a_ok or b_ok):
            return False, (A, B)
    return True, None


def brute_robustness(g: Graph) -> int:
    k = 0
    while brute_k_robust(g, k + 1)[0]:
        k += 1
    return k


def all_graphs(max_n: int, min_n: int = 1):
    """Every graph (up to isomorphism) with min_n..max_n nodes, max_n <= 7."""
    for G in nx.graph_atlas_g():
        if min_n <= G.number_of_nodes() <= max_n:
            yield to_graph(G)


def labelled_graphs(n: int):
    """Every labelled graph on n nodes."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def random_graph(rng: np.random.Generator, n: int, p: float) -> Graph:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, pairs)


def within_3sigma(count: int, trials: int, p: float) -> bool:
    sd = math.sqrt(p * (1 - p) / trials)
    return abs(count / trials - p) <= 3 * sd + 1e-12


BOWTIE = [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]


@pytest.fixture
def bowtie() -> Graph:
    return Graph.from_edges(5, BOWTIE)


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def report(tag: str, ok: bool | None, detail: str) -> bool:
    """Record one criterion line; ``ok=None`` marks an informational line."""
    status = "INFO" if ok is None else ("PASS" if ok else "FAIL")
    line = f"[{status}] {tag}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
