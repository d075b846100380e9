"""Core data types: graphs, object assignments, set-size distributions, seeds."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class InvalidParameter(ValueError):
    """A sampler or formula received parameters outside its domain."""


class InvalidDistribution(ValueError):
    """A size distribution does not describe a probability mass function."""


BITROW_CAP = 4096


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    Adjacency is kept in CSR form (``indptr``/``indices``, neighbours sorted).
    Neighbour lists and packed bit rows are derived lazily; bit rows are only
    available while ``n <= bitrow_cap``.
    """

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray,
                 bitrow_cap: int = BITROW_CAP):
        self.n = int(n)
        self.indptr = _readonly(np.asarray(indptr, dtype=np.int64))
        self.indices = _readonly(np.asarray(indices, dtype=np.int64))
        self.bitrow_cap = bitrow_cap

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray,
                   bitrow_cap: int = BITROW_CAP) -> "Graph":
        if n < 0:
            raise InvalidParameter("n must be >= 0")
        e = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                       dtype=np.int64).reshape(-1, 2)
        if len(e):
            if e.min() < 0 or e.max() >= n:
                raise InvalidParameter("edge endpoint out of range")
            if np.any(e[:, 0] == e[:, 1]):
                raise InvalidParameter("self-loops are not allowed")
        return cls._from_pairs(n, e[:, 0], e[:, 1], bitrow_cap)

    @classmethod
    def _from_pairs(cls, n: int, u: np.ndarray, v: np.ndarray,
                    bitrow_cap: int = BITROW_CAP) -> "Graph":
        # u, v: endpoints of undirected edges, no self-loops; duplicates allowed
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        N = max(n, 1)
        key = np.unique(lo * N + hi)
        lo, hi = np.divmod(key, N)
        both = np.sort(np.concatenate([key, hi * N + lo]))
        src, dst = np.divmod(both, N)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        return cls(n, indptr, dst, bitrow_cap)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls.from_edges(n, [])

    @property
    def m(self) -> int:
        return int(self.indptr[-1]) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return _readonly(np.diff(self.indptr))

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(self.neighbors(v).tolist()) for v in range(self.n))

    @cached_property
    def bitrows(self) -> np.ndarray:
        """Packed adjacency rows, shape ``(n, ceil(n/64))`` of uint64."""
        if self.n > self.bitrow_cap:
            raise MemoryError(f"bit rows disabled above n={self.bitrow_cap}")
        words = max(1, (self.n + 63) // 64)
        rows = np.zeros((self.n, words), dtype=np.uint64)
        src = np.repeat(np.arange(self.n), self.degrees)
        np.bitwise_or.at(rows, (src, self.indices // 64),
                         np.left_shift(np.uint64(1), (self.indices % 64).astype(np.uint64)))
        return _readonly(rows)

    def adjacency_masks(self) -> list[int]:
        """Python-int bitmask per node (convenient for small exhaustive checks)."""
        return [sum(1 << int(u) for u in self.neighbors(v)) for v in range(self.n)]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        i = np.searchsorted(nb, v)
        return bool(i < len(nb) and nb[i] == v)

    def edges(self) -> np.ndarray:
        """Edge array of shape ``(m, 2)`` with ``i < j``, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges()}

    def is_subgraph_of(self, other: "Graph") -> bool:
        if self.n != other.n:
            return False
        mine = self.edges()
        if len(mine) == 0:
            return True
        n = max(self.n, 1)
        theirs = other.edges()
        return bool(np.isin(mine[:, 0] * n + mine[:, 1],
                            theirs[:, 0] * n + theirs[:, 1]).all())

    def remove_nodes(self, nodes: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining nodes, relabelled in order."""
        drop = np.zeros(self.n, dtype=bool)
        drop[list(nodes)] = True
        keep = np.flatnonzero(~drop)
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[keep] = np.arange(len(keep))
        e = self.edges()
        ok = ~drop[e[:, 0]] & ~drop[e[:, 1]] if len(e) else np.zeros(0, bool)
        e = e[ok]
        return Graph._from_pairs(len(keep), relabel[e[:, 0]], relabel[e[:, 1]])

    def add_edge(self, u: int, v: int) -> "Graph":
        e = self.edges()
        return Graph.from_edges(self.n, np.vstack([e, [[min(u, v), max(u, v)]]]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # edge-list text format: "n m" header then "i j" per line, i < j
    def to_edgelist(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines += [f"{a} {b}" for a, b in self.edges().tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str) -> "Graph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not rows:
            raise ValueError("empty edge list")
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
        if len(edges) != m:
            raise ValueError(f"header says {m} edges, found {len(edges)}")
        if any(a >= b for a, b in edges):
            raise ValueError("edge lines must satisfy i < j")
        return cls.from_edges(n, edges)


@dataclass(frozen=True)
class ObjectAssignment:
    """Object sets ``S_i`` drawn from the pool ``{0, ..., P-1}``."""

    P: int
    sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.P < 1:
            raise InvalidParameter("P must be >= 1")
        for s in self.sets:
            if any(o < 0 or o >= self.P for o in s):
                raise InvalidParameter("object id outside the pool")

    @classmethod
    def from_lists(cls, P: int, sets: Sequence[Iterable[int]]) -> "ObjectAssignment":
        out = []
        for s in sets:
            s = list(s)
            fs = frozenset(int(o) for o in s)
            if len(fs) != len(s):
                raise InvalidParameter("object sets may not contain duplicates")
            out.append(fs)
        return cls(int(P), tuple(out))

    @property
    def n(self) -> int:
        return len(self.sets)

    def sizes(self) -> np.ndarray:
        return np.array([len(s) for s in self.sets], dtype=np.int64)

    def to_json(self) -> str:
        return json.dumps({"P": self.P, "sets": [sorted(s) for s in self.sets]})

    @classmethod
    def from_json(cls, text: str) -> "ObjectAssignment":
        d = json.loads(text)
        return cls.from_lists(d["P"], d["sets"])


@dataclass(frozen=True)
class SizeDistribution:
    """Probability mass function over set sizes ``1..P``.

    ``pmf[s-1]`` is the probability of size ``s``.
    """

    P: int
    pmf: np.ndarray = field(repr=False)
    mean: float = field(init=False)
    var: float = field(init=False)

    def __post_init__(self):
        pmf = np.asarray(self.pmf, dtype=float)
        if pmf.ndim != 1 or len(pmf) != self.P:
            raise InvalidDistribution(f"pmf must have length P={self.P}")
        if np.any(pmf < 0) or not np.isfinite(pmf).all():
            raise InvalidDistribution("pmf entries must be finite and >= 0")
        if abs(pmf.sum() - 1.0) > 1e-9:
            raise InvalidDistribution(f"pmf sums to {pmf.sum()!r}, not 1")
        object.__setattr__(self, "pmf", _readonly(pmf.copy()))
        sizes = np.arange(1, self.P + 1, dtype=float)
        mean = float(np.dot(sizes, pmf))
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "var", float(np.dot((sizes - mean) ** 2, pmf)))

    @classmethod
    def point_mass(cls, P: int, K: int) -> "SizeDistribution":
        if not 1 <= K <= P:
            raise InvalidParameter("need 1 <= K <= P")
        pmf = np.zeros(P)
        pmf[K - 1] = 1.0
        return cls(P, pmf)

    @classmethod
    def uniform_range(cls, P: int, lo: int, hi: int) -> "SizeDistribution":
        """Sizes uniform on ``{lo, ..., hi}``."""
        if not 1 <= lo <= hi <= P:
            raise InvalidParameter("need 1 <= lo <= hi <= P")
        pmf = np.zeros(P)
        pmf[lo - 1:hi] = 1.0 / (hi - lo + 1)
        return cls(P, pmf)

    @classmethod
    def from_mapping(cls, P: int, probs: dict[int, float]) -> "SizeDistribution":
        pmf = np.zeros(P)
        for s, w in probs.items():
            if not 1 <= int(s) <= P:
                raise InvalidDistribution(f"size {s} outside 1..{P}")
            pmf[int(s) - 1] = w
        return cls(P, pmf)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.pmf) + 1

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        cdf = np.cumsum(self.pmf)
        cdf[-1] = 1.0
        return np.searchsorted(cdf, rng.random(size), side="right").astype(np.int64) + 1


def trial_rng(base: int, *key: int) -> np.random.Generator:
    """Generator for trial ``key`` under ``base`` seed.

    The stream is Philox keyed by ``SeedSequence(base, spawn_key=key)``, so the
    draws depend only on ``(base, key)``, never on scheduling.
    """
    if base < 0 or any(k < 0 for k in key):
        raise InvalidParameter("seeds must be non-negative")
    ss = np.random.SeedSequence(int(base) & 0xFFFFFFFFFFFFFFFF, spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(seed: int | np.random.Generator | None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return trial_rng(0 if seed is None else int(seed))


def log_comb(a: int, b: int) -> float:
    if b < 0 or b > a:
        return -math.inf
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)
