"""Monte Carlo sweeps over model parameters, presets for the n = 2000
transition curves, and CSV / gnuplot output.

Every trial is keyed by ``(grid point, stream, trial)`` under the config's
base seed, success counts are integers, and rows are sorted before output,
so the CSV bytes depend only on the config.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass, field, fields

from .asymptotics import DomainError, alpha_from_scaling
from .graph import InvalidParameter
from .models import BinomialModel, ERModel, UniformModel
from .montecarlo import count_successes, resolve_workers, wilson_interval
from .props import PROPERTIES, ROBUSTNESS_CAP, SCREEN_BUDGET

CSV_HEADER = ("model", "n", "P", "param_name", "param_value", "k", "property", "trials",
              "successes", "empirical_prob", "stderr", "alpha_n", "predicted_limit")

PARAM_NAMES = {"binomial": "p", "uniform": "K", "er": "p_hat"}

# screen budget used by the n = 2000 presets; the default budget costs ~10x
# more per graph and rarely changes the verdict there
PRESET_SCREEN_BUDGET = 1000


class InfeasibleSweep(ValueError):
    pass


def make_model(kind: str, n: int, P: int | None, value):
    if kind == "binomial":
        return BinomialModel(n, P, float(value))
    if kind == "uniform":
        if float(value) != int(value):
            raise InvalidParameter(f"K must be an integer, got {value}")
        return UniformModel(n, P, int(value))
    if kind == "er":
        return ERModel(n, float(value))
    raise InvalidParameter(f"unknown model kind {kind!r}; expected one of {tuple(PARAM_NAMES)}")


@dataclass(frozen=True)
class SweepConfig:
    """Declarative sweep.  JSON form: an object with these field names
    (``grid``, ``ks`` and ``properties`` as arrays)."""

    model: str
    n: int
    P: int | None
    grid: tuple
    ks: tuple[int, ...]
    properties: tuple[str, ...]
    trials: int = 1000
    seed: int = 0
    reuse_samples: bool = True
    screen_budget: int = SCREEN_BUDGET
    robustness_cap: int = ROBUSTNESS_CAP
    param_name: str = field(default="")

    def __post_init__(self):
        if self.model not in PARAM_NAMES:
            raise InvalidParameter(f"unknown model kind {self.model!r}")
        for name in ("grid", "ks", "properties"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.grid:
            raise InvalidParameter("grid must be nonempty")
        if not self.ks or any(k < 1 for k in self.ks):
            raise InvalidParameter("ks must be nonempty and >= 1")
        if not self.properties:
            raise InvalidParameter("properties must be nonempty")
        bad = [p for p in self.properties if p not in PROPERTIES]
        if bad:
            raise InvalidParameter(f"unknown properties {bad}; expected from {PROPERTIES}")
        if self.trials < 1:
            raise InvalidParameter("trials must be >= 1")
        if not self.param_name:
            object.__setattr__(self, "param_name", PARAM_NAMES[self.model])

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise InvalidParameter(f"unknown config keys {sorted(extra)}")
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> "SweepConfig":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SweepRow:
    model: str
    n: int
    P: int | None
    param_name: str
    param_value: float
    k: int
    property: str
    trials: int
    successes: int
    empirical_prob: float
    stderr: float
    alpha_n: float
    predicted_limit: float

    @classmethod
    def build(cls, cfg: SweepConfig, value, k: int, prop: str, successes: int) -> "SweepRow":
        ph = successes / cfg.trials
        try:
            # robustness rows carry the connectivity prediction as a reference overlay
            rep = alpha_from_scaling(make_model(cfg.model, cfg.n, cfg.P, value), k)
            alpha, pred = rep.alpha_n, rep.predicted_limit
        except DomainError:
            alpha = pred = math.nan
        return cls(cfg.model, cfg.n, cfg.P, cfg.param_name, value, k, prop, cfg.trials,
                   int(successes), ph, math.sqrt(ph * (1 - ph) / cfg.trials), alpha, pred)


def estimate_probability(model, property: str, k: int, trials: int, seed: int = 0,
                         workers: int = 1, screen_budget: int = SCREEN_BUDGET,
                         cap: int = ROBUSTNESS_CAP) -> tuple[int, int, tuple[float, float]]:
    """``(successes, trials, wilson95)`` over independent seeded trials."""
    if trials < 1:
        raise InvalidParameter("trials must be >= 1")
    if property == "robustness" and model.n > cap:
        warnings.warn(f"n={model.n} exceeds the exact robustness cap {cap}; "
                      "using robustness_screen (an upper bound)")
        property = "robustness_screen"
    (c,) = count_successes([(model, [(property, k)], (0, 0))], trials, seed,
                           resolve_workers(workers), screen_budget)
    s = int(c[0])
    return s, trials, wilson_interval(s, trials)


def run_sweep(cfg: SweepConfig, workers: int | None = None) -> list[SweepRow]:
    if "robustness" in cfg.properties and cfg.n > cfg.robustness_cap:
        raise InfeasibleSweep(
            f"exact robustness is limited to n <= {cfg.robustness_cap} (config has n={cfg.n}). "
            "Options: use property 'robustness_screen' (one-sided upper bound), lower n, "
            "or raise robustness_cap (cost grows as 2^n).")
    checks = [(prop, k) for k in cfg.ks for prop in cfg.properties]
    jobs = []
    for i, value in enumerate(cfg.grid):
        model = make_model(cfg.model, cfg.n, cfg.P, value)
        if cfg.reuse_samples:
            jobs.append((model, checks, (i, 0)))
        else:
            jobs += [(model, [c], (i, j + 1)) for j, c in enumerate(checks)]
    counts = count_successes(jobs, cfg.trials, cfg.seed, resolve_workers(workers),
                             cfg.screen_budget)
    flat = {}
    for (model, chk, key), cnt in zip(jobs, counts):
        for c, s in zip(chk, cnt):
            flat[(key[0], c)] = int(s)
    rows = []
    for i, value in enumerate(cfg.grid):
        for prop, k in checks:
            rows.append(SweepRow.build(cfg, value, k, prop, flat[(i, (prop, k))]))
    order = {p: j for j, p in enumerate(cfg.properties)}
    rows.sort(key=lambda r: (float(r.param_value), r.k, order[r.property]))
    return rows


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "nan" if math.isnan(x) else repr(x)
    return str(x)


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in CSV_HEADER])
    return buf.getvalue()


def rows_to_json(rows) -> str:
    return json.dumps([{c: getattr(r, c) for c in CSV_HEADER} for r in rows], indent=1)


def gnuplot_blocks(rows) -> str:
    """One data block per (k, property): param, empirical, stderr, predicted.
    Blocks are separated by two blank lines (``index`` addressing in gnuplot)."""
    groups: dict[tuple, list] = {}
    for r in rows:
        groups.setdefault((r.k, r.property), []).append(r)
    out = []
    for (k, prop), rs in sorted(groups.items()):
        lines = [f"# k={k} property={prop}", "# param empirical stderr predicted"]
        lines += [f"{_fmt(r.param_value)} {_fmt(r.empirical_prob)} {_fmt(r.stderr)} "
                  f"{_fmt(r.predicted_limit)}" for r in sorted(rs, key=lambda r: r.param_value)]
        out.append("\n".join(lines))
    return "\n\n\n".join(out) + "\n"


# -- presets ------------------------------------------------------------------

FIG1_GRID = tuple(round(x * 1e-4, 10) for x in
                  (2.0, 3.0, 3.5, 4.0, 4.4, 4.6, 4.9, 5.2, 5.5, 6.0, 7.0, 8.0))
FIG2_GRID = tuple(range(4, 19))


def preset_fig1(trials: int = 1000, seed: int = 0) -> SweepConfig:
    """Binomial, n = 2000, P = 20000, p swept over [2e-4, 8e-4], k = 1, 2."""
    return SweepConfig("binomial", 2000, 20000, FIG1_GRID, (1, 2),
                       ("connectivity", "min_degree", "robustness_screen"),
                       trials=trials, seed=seed, screen_budget=PRESET_SCREEN_BUDGET)


def preset_fig2(trials: int = 1000, seed: int = 0) -> SweepConfig:
    """Uniform, n = 2000, P = 20000, K = 4..18, k = 2, 3."""
    return SweepConfig("uniform", 2000, 20000, FIG2_GRID, (2, 3),
                       ("connectivity", "min_degree", "robustness_screen"),
                       trials=trials, seed=seed, screen_budget=PRESET_SCREEN_BUDGET)


def preset_small_robustness(trials: int = 500, seed: int = 0) -> SweepConfig:
    """Exact robustness next to connectivity at n = 12 (uniform, P = 40)."""
    return SweepConfig("uniform", 12, 40, tuple(range(2, 10)), (1, 2, 3),
                       ("connectivity", "min_degree", "robustness"), trials=trials, seed=seed)


PRESETS = {"fig1": preset_fig1, "fig2": preset_fig2, "small": preset_small_robustness}
