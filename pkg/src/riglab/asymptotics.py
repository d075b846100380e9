"""Scaling conditions, deviation terms, limit probabilities and exact edge
probabilities for random intersection graphs.

The common scaling is ``n * s = ln n + (k-1) ln ln n + alpha_n`` where ``s`` is
the model's edge-probability proxy: ``p^2 P`` (binomial), ``K^2 / P``
(uniform), ``E[X]^2 / P`` (general).  ``limit_prob`` is the limit of
``P[k-connected]`` (and of ``P[min degree >= k]``) when ``alpha_n`` converges.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from .graph import InvalidParameter, SizeDistribution
from .models import BinomialModel, ERModel, GeneralModel, UniformModel


class DomainError(ValueError):
    """``ln ln n`` is undefined or non-positive (n < 3)."""


@dataclass(frozen=True)
class ScalingReport:
    k: int
    alpha_n: float
    c_n: float
    lhs: float
    model: dict
    predicted_limit: float

    def to_dict(self) -> dict:
        return asdict(self)


def _check_n(n: int) -> None:
    if n < 3:
        raise DomainError(f"scaling needs n >= 3 so that ln ln n > 0 (got n={n})")


def critical_value(n: int, k: int) -> float:
    """``(ln n + (k-1) ln ln n) / n``."""
    _check_n(n)
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    return (math.log(n) + (k - 1) * math.log(math.log(n))) / n


def scaling_lhs(model) -> float:
    if isinstance(model, BinomialModel):
        return model.p ** 2 * model.P
    if isinstance(model, UniformModel):
        return model.K ** 2 / model.P
    if isinstance(model, GeneralModel):
        return model.D.mean ** 2 / model.P
    if isinstance(model, ERModel):
        return model.p_hat
    raise TypeError(f"no scaling condition for {type(model).__name__}")


def _describe(model) -> dict:
    d = {"kind": model.kind, "n": model.n}
    if isinstance(model, GeneralModel):
        d.update(P=model.P, mean=model.D.mean, var=model.D.var)
    else:
        d.update({f: getattr(model, f) for f in model.__dataclass_fields__ if f != "n"})
    return d


def alpha_from_scaling(model, k: int) -> ScalingReport:
    """Deviation ``alpha_n`` of a model from the k-connectivity critical scaling."""
    _check_n(model.n)
    c_n = critical_value(model.n, k)
    lhs = scaling_lhs(model)
    alpha = model.n * lhs - model.n * c_n
    return ScalingReport(k=k, alpha_n=alpha, c_n=c_n, lhs=lhs, model=_describe(model),
                         predicted_limit=limit_prob(alpha, k))


def limit_prob(alpha_star: float, k: int) -> float:
    """``exp(-exp(-alpha*) / (k-1)!)``, with 0 at ``-inf`` and 1 at ``+inf``."""
    if k < 1:
        raise InvalidParameter("k must be >= 1")
    if math.isnan(alpha_star):
        raise ValueError("alpha_star is NaN")
    if alpha_star == math.inf:
        return 1.0
    if alpha_star == -math.inf:
        return 0.0
    log_inner = -alpha_star - math.lgamma(k)
    if log_inner > 700:
        return 0.0
    return math.exp(-math.exp(log_inner))


def critical_param(model_kind: str, n: int, P: int, k: int):
    """Parameter placing the model on the critical scaling.

    Binomial: ``p* = sqrt(c_n / P)``.  Uniform: the integer ``K`` in ``1..P``
    whose ``K^2/P`` is closest to ``c_n``, ties to the smaller ``K``.
    """
    if P < 1:
        raise InvalidParameter("P must be >= 1")
    c = critical_value(n, k)
    if model_kind == "binomial":
        return math.sqrt(c / P)
    if model_kind == "uniform":
        root = math.isqrt(int(c * P)) if c * P < 2 ** 62 else int(math.sqrt(c * P))
        cands = {min(max(K, 1), P) for K in range(root - 1, root + 3)}
        return min(cands, key=lambda K: (abs(K * K / P - c), K))
    raise InvalidParameter(f"unknown model kind {model_kind!r}")


def param_for_alpha(model_kind: str, n: int, P: int, k: int, alpha: float) -> float:
    """Real-valued parameter whose scaling gives exactly ``alpha`` (binomial ``p``, uniform ``K``)."""
    target = critical_value(n, k) + alpha / n
    if target < 0:
        raise InvalidParameter("alpha too negative for a nonnegative parameter")
    if model_kind == "binomial":
        return math.sqrt(target / P)
    if model_kind == "uniform":
        return math.sqrt(target * P)
    raise InvalidParameter(f"unknown model kind {model_kind!r}")


# -- exact edge probabilities ------------------------------------------------

def _uniform_miss_log(P: int, K1: int, K2: int) -> float:
    # log C(P-K1, K2) / C(P, K2): chance a uniform K2-set misses a fixed K1-set
    if K1 + K2 > P:
        return -math.inf
    i = np.arange(K2, dtype=float)
    return float(np.sum(np.log1p(-K1 / (P - i))))


def edge_prob_uniform_exact(P: int, K: int) -> float:
    """Probability that two independent uniform K-subsets of a P-pool intersect."""
    if not 1 <= K <= P:
        raise InvalidParameter(f"need 1 <= K <= P, got K={K}, P={P}")
    return -math.expm1(_uniform_miss_log(P, K, K))


def edge_prob_uniform_fraction(P: int, K: int) -> Fraction:
    """Exact rational ``1 - C(P-K, K) / C(P, K)``; meant for small pools."""
    if not 1 <= K <= P:
        raise InvalidParameter(f"need 1 <= K <= P, got K={K}, P={P}")
    return 1 - Fraction(math.comb(P - K, K), math.comb(P, K))


def edge_prob_binomial_exact(P: int, p: float) -> float:
    """``1 - (1 - p^2)^P``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")
    if p == 1.0:
        return 1.0
    return -math.expm1(P * math.log1p(-p * p))


def edge_prob_binomial_fraction(P: int, p: Fraction) -> Fraction:
    return 1 - (1 - Fraction(p) ** 2) ** P


def edge_prob_general_exact(D: SizeDistribution) -> float:
    """Edge probability when both set sizes are drawn from ``D``."""
    sup = D.support()
    q = 0.0
    for s in sup:
        for t in sup:
            q += D.pmf[s - 1] * D.pmf[t - 1] * -math.expm1(_uniform_miss_log(D.P, int(s), int(t)))
    return q


def edge_prob_general_fraction(D_exact: dict[int, Fraction], P: int) -> Fraction:
    q = Fraction(0)
    for s, ws in D_exact.items():
        for t, wt in D_exact.items():
            q += ws * wt * (1 - Fraction(math.comb(P - s, t), math.comb(P, t)))
    return q


# -- other diagnostics -------------------------------------------------------

@dataclass(frozen=True)
class AltRegime:
    gamma_n: float
    tau: float  # ln P / ln n
    pool_sublinear: bool  # tau < 1: the regime where p P = ln n + gamma_n governs


def gamma_alt_regime(n: int, P: int, p: float) -> AltRegime:
    """Deviation ``gamma_n = p P - ln n`` for pools of size ``n^tau``, ``tau < 1``."""
    if n < 2:
        raise DomainError("need n >= 2")
    tau = math.log(P) / math.log(n)
    return AltRegime(p * P - math.log(n), tau, tau < 1)


def joint_degree_prediction(n: int, q: float, m: int, h: int) -> float:
    """``(h!)^-m (n q)^(h m) exp(-m n q)``: m given nodes all having degree h."""
    if m < 1 or h < 0:
        raise InvalidParameter("need m >= 1 and h >= 0")
    if not 0.0 < q < 1.0:
        raise InvalidParameter("need 0 < q < 1")
    nq = n * q
    return math.exp(-m * math.lgamma(h + 1) + h * m * math.log(nq) - m * nq)


def predicted_curve(model_kind: str, n: int, P: int, k: int, grid) -> list[tuple[float, float, float]]:
    """``(param, alpha_n, limit_prob)`` for each grid value."""
    rows = []
    for x in grid:
        if model_kind == "binomial":
            model = BinomialModel(n, P, float(x))
        elif model_kind == "uniform":
            model = UniformModel(n, P, int(x))
        elif model_kind == "er":
            model = ERModel(n, float(x))
        else:
            raise InvalidParameter(f"unknown model kind {model_kind!r}")
        rep = alpha_from_scaling(model, k)
        rows.append((x, rep.alpha_n, rep.predicted_limit))
    return rows
