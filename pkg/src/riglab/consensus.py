"""Synchronous resilient consensus with trimmed local averaging (W-MSR style).

Every benign node, each round, looks at its neighbours' values, drops up to
``h`` of those strictly above its own value (largest first) and up to ``h``
strictly below (smallest first), and moves to the plain average of its own
value and whatever was kept.  Among equal values the lower node index is
dropped first.  Adversarial nodes ignore the rule and broadcast whatever
their strategy says.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .graph import Graph, InvalidParameter, as_rng

STRATEGIES = ("constant", "oscillate", "max_push", "random")


@dataclass(frozen=True)
class ConsensusConfig:
    """``strategy_args``: ``(v,)`` for constant, ``(v_lo, v_hi)`` for oscillate
    and random, nothing for max_push."""

    h: int = 0
    adversaries: frozenset[int] = frozenset()
    strategy: str = "constant"
    strategy_args: tuple[float, ...] = (0.0,)
    weight_floor: float = 1e-3
    max_rounds: int = 10_000
    tol: float = 1e-6

    def __post_init__(self):
        if self.h < 0:
            raise InvalidParameter("h must be >= 0")
        if self.strategy not in STRATEGIES:
            raise InvalidParameter(f"unknown strategy {self.strategy!r}; expected one of {STRATEGIES}")
        if not 0 < self.weight_floor < 1:
            raise InvalidParameter("weight_floor must lie in (0, 1)")
        if self.max_rounds < 0 or self.tol < 0:
            raise InvalidParameter("max_rounds and tol must be >= 0")
        object.__setattr__(self, "adversaries", frozenset(int(a) for a in self.adversaries))


@dataclass
class ConsensusTrace:
    values: np.ndarray  # (rounds_run + 1, n); adversary entries are what they broadcast
    spread: np.ndarray  # benign max - min per round
    benign: np.ndarray  # bool mask
    rounds_run: int
    converged: bool
    h_local: bool  # every benign node has <= h adversarial neighbours
    tol: float = field(default=0.0)


def h_local(g: Graph, adversaries, h: int) -> bool:
    adv = np.zeros(g.n, dtype=bool)
    adv[list(adversaries)] = True
    for v in np.flatnonzero(~adv):
        if adv[g.neighbors(v)].sum() > h:
            return False
    return True


@njit(cache=True)
def _wmsr_step(indptr, indices, x, benign, h, out):
    n = len(x)
    for i in range(n):
        if not benign[i]:
            continue
        xi = x[i]
        lo, hi = indptr[i], indptr[i + 1]
        d = hi - lo
        dropped = np.zeros(d, np.bool_)
        n_above = 0
        n_below = 0
        for a in range(lo, hi):
            if x[indices[a]] > xi:
                n_above += 1
            elif x[indices[a]] < xi:
                n_below += 1
        # drop the largest values above (ties: lower index first)
        for _ in range(min(h, n_above)):
            best = -1
            for a in range(d):
                u = indices[lo + a]
                if dropped[a] or x[u] <= xi:
                    continue
                if best < 0 or x[u] > x[indices[lo + best]]:
                    best = a
            dropped[best] = True
        for _ in range(min(h, n_below)):
            best = -1
            for a in range(d):
                u = indices[lo + a]
                if dropped[a] or x[u] >= xi:
                    continue
                if best < 0 or x[u] < x[indices[lo + best]]:
                    best = a
            dropped[best] = True
        s = xi
        c = 1
        for a in range(d):
            if not dropped[a]:
                s += x[indices[lo + a]]
                c += 1
        out[i] = s / c


def _emit(cfg: ConsensusConfig, t: int, x: np.ndarray, benign: np.ndarray, rng) -> float:
    s, args = cfg.strategy, cfg.strategy_args
    if s == "constant":
        return float(args[0])
    if s == "oscillate":
        return float(args[t % 2])
    if s == "max_push":
        return float(x[benign].max()) + 1.0
    return float(rng.uniform(args[0], args[1]))


def run_filtered_consensus(g: Graph, x0, cfg: ConsensusConfig, seed=0) -> ConsensusTrace:
    x = np.array(x0, dtype=float)
    if x.shape != (g.n,):
        raise InvalidParameter(f"x0 has length {x.size}, graph has {g.n} nodes")
    if any(a < 0 or a >= g.n for a in cfg.adversaries):
        raise InvalidParameter("adversary outside the node set")
    benign = np.ones(g.n, dtype=bool)
    benign[list(cfg.adversaries)] = False
    if not benign.any():
        raise InvalidParameter("need at least one benign node")
    if g.n and g.degrees.max() + 1 > 1 / cfg.weight_floor:
        warnings.warn("equal weights fall below weight_floor at the highest-degree node")
    rng = as_rng(seed)
    adv = ~benign
    rows = []
    spreads = []
    t = 0
    while True:
        if adv.any():
            x[adv] = _emit(cfg, t, x, benign, rng)
        rows.append(x.copy())
        b = x[benign]
        spreads.append(float(b.max() - b.min()))
        if spreads[-1] <= cfg.tol or t >= cfg.max_rounds:
            break
        nxt = x.copy()
        _wmsr_step(g.indptr, g.indices, x, benign, cfg.h, nxt)
        x = nxt
        t += 1
    return ConsensusTrace(np.array(rows), np.array(spreads), benign, t,
                          spreads[-1] <= cfg.tol, h_local(g, cfg.adversaries, cfg.h), cfg.tol)


def consensus_reached(trace: ConsensusTrace, tol: float) -> bool:
    """Final benign spread at most ``tol`` (closed threshold)."""
    if len(trace.spread) == 0:
        raise InvalidParameter("empty trace")
    return bool(trace.spread[-1] <= tol)


def safety_holds(trace: ConsensusTrace, slack: float = 1e-12) -> bool:
    """Every benign value stays inside the previous round's benign hull."""
    b = trace.values[:, trace.benign]
    lo, hi = b[:-1].min(axis=1), b[:-1].max(axis=1)
    width = np.maximum(hi - lo, 1.0) * slack
    return bool(np.all(b[1:] >= (lo - width)[:, None]) and np.all(b[1:] <= (hi + width)[:, None]))


def spread_monotone(trace: ConsensusTrace, slack: float = 1e-12) -> bool:
    s = trace.spread
    return bool(np.all(s[1:] <= s[:-1] + slack * np.maximum(s[:-1], 1.0)))
