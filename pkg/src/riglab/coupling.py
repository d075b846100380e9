"""Monotone couplings between random intersection graphs and related models.

Exact nested samplers realise ``lo ⊆ hi`` with probability one.  The size
bracket for binomial graphs holds only with probability ``1 - o(1)``; when
it holds, a per-node ordered sample gives
``G_u(K_minus) ⊆ G_b ⊆ G_u(K_plus)``.  The Erdos-Renyi comparison has no
explicit construction here and is checked statistically by
:func:`dominance_test`.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from .graph import Graph, InvalidParameter, SizeDistribution, as_rng
from .models import check_binomial, check_uniform, draw_binomial, draw_uniform, graph_from_arrays
from .montecarlo import count_successes
from .props import SCREEN_BUDGET


class RegimeWarning(UserWarning):
    """Parameters sit outside the regime in which a coupling statement applies."""


@dataclass(frozen=True)
class CoupledPair:
    lo: Graph
    hi: Graph
    subgraph_holds: bool


@dataclass(frozen=True)
class BracketParams:
    K_minus: int
    K_plus: int
    eps_n: float  # relative half-width of the bracket around p P
    p_hat: float

    def to_dict(self) -> dict:
        return asdict(self)


def _pair(ptr_lo, objs_lo, ptr_hi, objs_hi) -> CoupledPair:
    lo = graph_from_arrays(ptr_lo, objs_lo)
    hi = graph_from_arrays(ptr_hi, objs_hi)
    return CoupledPair(lo, hi, lo.is_subgraph_of(hi))


def nested_uniform_pair(n: int, P: int, K1: int, K2: int, seed) -> CoupledPair:
    """``S1_i`` is a uniform K1-subset of ``S2_i``, itself a uniform K2-subset of the pool."""
    check_uniform(n, P, K1)
    check_uniform(n, P, K2)
    if K1 > K2:
        raise InvalidParameter(f"need K1 <= K2, got {K1} > {K2}")
    rng = as_rng(seed)
    ptr2, objs2 = draw_uniform(n, P, K2, rng)
    pick = np.argsort(rng.random((n, K2)), axis=1)[:, :K1]
    objs1 = np.sort(np.take_along_axis(objs2.reshape(n, K2), pick, axis=1), axis=1).ravel()
    ptr1 = np.arange(n + 1, dtype=np.int64) * K1
    return _pair(ptr1, objs1, ptr2, objs2)


def nested_binomial_pair(n: int, P: int, p1: float, p2: float, seed) -> CoupledPair:
    """Thin ``G_b(n, P, p2)``'s object sets with keep probability ``p1 / p2``."""
    check_binomial(n, P, p1)
    check_binomial(n, P, p2)
    if p1 > p2:
        raise InvalidParameter(f"need p1 <= p2, got {p1} > {p2}")
    rng = as_rng(seed)
    ptr2, objs2 = draw_binomial(n, P, p2, rng)
    keep = rng.random(len(objs2)) < (p1 / p2 if p2 > 0 else 0.0)
    owner = np.repeat(np.arange(n), np.diff(ptr2))
    ptr1 = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner[keep], minlength=n), out=ptr1[1:])
    return _pair(ptr1, objs2[keep], ptr2, objs2)


# -- size bracket for the binomial model ---------------------------------------

def _bracket_halfwidth(n: int, pP: float) -> float:
    ln = math.log(n)
    return math.sqrt(3 * (pP + ln) * ln)


def bracket_binomial(n: int, P: int, p: float) -> BracketParams:
    """``K_{-/+} = pP -/+ sqrt(3 (pP + ln n) ln n)``, floored/ceiled and clamped to ``0..P``."""
    if n < 2:
        raise InvalidParameter("need n >= 2")
    check_binomial(n, P, p)
    pP = p * P
    w = _bracket_halfwidth(n, pP)
    if pP <= 10 * math.log(n):
        warnings.warn(f"pP = {pP:.3g} is not large against ln n; the size bracket "
                      "is unlikely to contain every node", RegimeWarning, stacklevel=2)
    K_minus = max(0, math.floor(pP - w))
    K_plus = min(P, math.ceil(pP + w))
    eps = w / pP if pP > 0 else math.inf
    return BracketParams(K_minus, K_plus, eps, _p_hat_raw(n, P, p)[0])


def bracket_success_binomial(n: int, P: int, p: float, seed) -> bool:
    """True when every sampled binomial set size lies in ``[K_minus, K_plus]``."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        b = bracket_binomial(n, P, p)
    sizes = as_rng(seed).binomial(P, p, size=n)
    return bool(np.all((sizes >= b.K_minus) & (sizes <= b.K_plus)))


@dataclass(frozen=True)
class BracketTriple:
    lo: Graph  # uniform, K_minus
    mid: Graph  # binomial
    hi: Graph  # uniform, K_plus
    sizes_in_bracket: bool
    nested: bool


def bracket_triple(n: int, P: int, p: float, seed) -> BracketTriple:
    """Joint draw of ``G_u(K_minus)``, ``G_b(p)`` and ``G_u(K_plus)``.

    Each node takes one uniformly ordered sample of distinct objects; the
    three sets are its prefixes of length ``K_minus``, ``|S_i| ~ Bin(P, p)``
    and ``K_plus``.  Each prefix is marginally a uniform subset of its size,
    and the sets nest whenever the binomial size falls inside the bracket.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RegimeWarning)
        b = bracket_binomial(n, P, p)
    rng = as_rng(seed)
    sizes = rng.binomial(P, p, size=n)
    ok = bool(np.all((sizes >= b.K_minus) & (sizes <= b.K_plus)))
    rows = [rng.choice(P, max(b.K_plus, int(s)), replace=False) for s in sizes]

    def build(lengths):
        ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(lengths, out=ptr[1:])
        objs = np.concatenate([np.sort(r[:L]) for r, L in zip(rows, lengths)]) if n else np.zeros(0, np.int64)
        return graph_from_arrays(ptr, objs.astype(np.int64))

    lo = build(np.full(n, b.K_minus))
    mid = build(sizes)
    hi = build(np.full(n, b.K_plus))
    return BracketTriple(lo, mid, hi, ok, lo.is_subgraph_of(mid) and mid.is_subgraph_of(hi))


def p_for_uniform_cover(n: int, P: int, K: int) -> float:
    """``p = (K/P)(1 - sqrt(3 ln n / K))``: a binomial graph at this ``p`` sits
    inside ``G_u(n, P, K)`` with probability ``1 - o(1)`` when ``K >> ln n``."""
    check_uniform(n, P, K)
    if n < 2:
        raise InvalidParameter("need n >= 2")
    r = 1 - math.sqrt(3 * math.log(n) / K)
    if r <= 0:
        warnings.warn("K is too small against ln n; returning p = 0", RegimeWarning, stacklevel=2)
        return 0.0
    return K / P * r


# -- general model ------------------------------------------------------------

def eps_general(n: int, D: SizeDistribution) -> float:
    """``(n Var[X] / E[X]^2)^(1/4) / sqrt(ln n)``.

    Warns when the value reaches ``1 / ln n``, where the variance condition
    that makes the size bracket work is violated.
    """
    if n < 3:
        raise InvalidParameter("need n >= 3")
    if D.mean <= 0:
        raise InvalidParameter("E[X] must be positive")
    eps = (n * D.var / D.mean ** 2) ** 0.25 / math.sqrt(math.log(n))
    if eps >= 1 / math.log(n):
        warnings.warn(f"eps_n = {eps:.3g} >= 1/ln n = {1 / math.log(n):.3g}: "
                      "variance too large for the uniform bracket", RegimeWarning, stacklevel=2)
    return eps


def eps_bracket(n: int, D: SizeDistribution) -> tuple[float, float, float]:
    """``(eps, (1-eps) E[X], (1+eps) E[X])``."""
    eps = eps_general(n, D)
    return eps, (1 - eps) * D.mean, (1 + eps) * D.mean


# -- Erdos-Renyi comparison ---------------------------------------------------

def _p_hat_raw(n: int, P: int, p: float) -> tuple[float, float]:
    s = p * p * P
    factor = 1 - n * p + 2 * p - s / 2
    return max(0.0, s * factor), factor


def p_hat_lemma7(n: int, P: int, p: float) -> float:
    """``p^2 P (1 - n p + 2 p - p^2 P / 2)``, the edge probability of an
    Erdos-Renyi graph that ``G_b(n, P, p)`` contains with probability ``1 - o(1)``.

    Clamped at 0 (with a warning) when the bracket factor goes negative.
    """
    check_binomial(n, P, p)
    val, factor = _p_hat_raw(n, P, p)
    s = p * p * P
    if s >= 1:
        warnings.warn(f"p^2 P = {s:.3g} >= 1", RegimeWarning, stacklevel=2)
    if factor < 0:
        warnings.warn("factor 1 - np + 2p - p^2 P/2 is negative; p_hat clamped to 0",
                      RegimeWarning, stacklevel=2)
    return min(val, 1.0)


def lemma7_regime(n: int, P: int, p: float) -> dict:
    """Scaled quantities behind the two hypotheses ``p = O(1/(n ln n))`` and
    ``p^2 P = O(1/ln n)``; a value of order one or less is in regime."""
    ln = math.log(max(n, 2))
    a = p * n * ln
    b = p * p * P * ln
    return {"p_n_ln_n": a, "p2P_ln_n": b, "in_regime": a <= 1 and b <= 1}


def _as_model(s):
    if hasattr(s, "draw"):
        return s
    if callable(s):
        return _Callable(s)
    raise TypeError("sampler must have a draw(rng) method or be callable")


class _Callable:
    def __init__(self, f):
        self.f = f

    def draw(self, rng):
        return self.f(rng)


def dominance_test(sampler_lo, sampler_hi, property: str, k: int, trials: int, seed: int = 0,
                   workers: int = 1, screen_budget: int = SCREEN_BUDGET) -> float:
    """One-sided z-score of ``P_lo - P_hi`` for a monotone property.

    Samplers are model descriptors (``draw(rng) -> Graph``) or plain callables
    of an rng; callables only run in-process.  Large positive z contradicts
    ``lo`` being dominated by ``hi``.
    """
    if trials < 1:
        raise InvalidParameter("trials must be >= 1")
    lo, hi = _as_model(sampler_lo), _as_model(sampler_hi)
    if isinstance(lo, _Callable) or isinstance(hi, _Callable):
        workers = 1
    checks = [(property, k)]
    c_lo, c_hi = count_successes([(lo, checks, (0,)), (hi, checks, (1,))],
                                 trials, seed, workers, screen_budget)
    a, b = c_lo[0] / trials, c_hi[0] / trials
    se = math.sqrt((a * (1 - a) + b * (1 - b)) / trials)
    if se == 0:
        return 0.0 if a == b else math.copysign(math.inf, a - b)
    return (a - b) / se
