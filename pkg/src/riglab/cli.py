"""Command-line entry point: ``riglab <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import asymptotics as asy
from . import coupling as cp
from .consensus import ConsensusConfig, run_filtered_consensus, safety_holds, spread_monotone
from .graph import Graph, SizeDistribution, as_rng
from .harness import (PRESETS, SweepConfig, gnuplot_blocks, rows_to_csv, rows_to_json, run_sweep)
from .models import (BinomialModel, ERModel, GeneralModel, UniformModel, sample_binomial_rig,
                     sample_er, sample_general_rig, sample_uniform_rig)
from . import props


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: $RIGLAB_THREADS or 1)")
    p.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    return p


def _model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=("binomial", "uniform", "general", "er"), default="binomial")
    p.add_argument("-n", type=int, default=None)
    p.add_argument("-P", type=int, default=None)
    p.add_argument("-p", type=float, default=None)
    p.add_argument("-K", type=int, default=None)
    p.add_argument("--p-hat", type=float, default=None)
    p.add_argument("--sizes", default=None, help="general model: LO:HI uniform sizes, "
                   "or a JSON object {size: prob}")


def _dist(a) -> SizeDistribution:
    if a.sizes is None:
        raise SystemExit("general model needs --sizes")
    if ":" in a.sizes and not a.sizes.lstrip().startswith("{"):
        lo, hi = (int(x) for x in a.sizes.split(":"))
        return SizeDistribution.uniform_range(a.P, lo, hi)
    return SizeDistribution.from_mapping(a.P, {int(s): float(w) for s, w in json.loads(a.sizes).items()})


def _need(a, *names):
    missing = [nm for nm in names if getattr(a, nm.replace("-", "_")) is None]
    if missing:
        raise SystemExit(f"--model {a.model} needs: {', '.join('-' + m if len(m) == 1 else '--' + m for m in missing)}")


def _descriptor(a):
    if a.model == "binomial":
        _need(a, "n", "P", "p")
        return BinomialModel(a.n, a.P, a.p)
    if a.model == "uniform":
        _need(a, "n", "P", "K")
        return UniformModel(a.n, a.P, a.K)
    if a.model == "general":
        _need(a, "n", "P")
        return GeneralModel(a.n, a.P, _dist(a))
    _need(a, "n", "p-hat")
    return ERModel(a.n, a.p_hat)


def _emit(a, text: str) -> None:
    if a.out is None:
        sys.stdout.write(text)
    else:
        a.out.write_text(text)


def _graph_from(a) -> Graph:
    if getattr(a, "graph", None):
        return Graph.from_edgelist(Path(a.graph).read_text())
    m = _descriptor(a)
    return m.draw(as_rng(a.seed))


# -- subcommands ----------------------------------------------------------------

def cmd_generate(a) -> int:
    m = _descriptor(a)
    if a.model == "er":
        g, asg = sample_er(m.n, m.p_hat, a.seed), None
    elif a.model == "binomial":
        g, asg = sample_binomial_rig(m.n, m.P, m.p, a.seed)
    elif a.model == "uniform":
        g, asg = sample_uniform_rig(m.n, m.P, m.K, a.seed)
    else:
        g, asg = sample_general_rig(m.n, m.P, m.D, a.seed)
    if a.format == "json":
        d = {"n": g.n, "edges": g.edges().tolist()}
        if asg is not None:
            d["assignment"] = json.loads(asg.to_json())
        _emit(a, json.dumps(d) + "\n")
    else:
        _emit(a, g.to_edgelist())
    if a.assignment and asg is not None:
        Path(a.assignment).write_text(asg.to_json() + "\n")
    return 0


def _jsonable_witness(w):
    if w is None:
        return None
    if isinstance(w, frozenset):
        return sorted(w)
    return [sorted(s) for s in w]


def cmd_check(a) -> int:
    g = _graph_from(a)
    t0 = time.perf_counter()
    out = {"property": a.property, "k": a.k}
    if a.property == "vertex_connectivity":
        out["value"] = props.vertex_connectivity(g)
        out.pop("k")
    elif a.property == "min_degree":
        out["value"] = props.min_degree(g)
        out["holds"] = out["value"] >= a.k
    elif a.property == "connectivity":
        v = props.connectivity_verdict(g, a.k)
        out["holds"] = v.holds
        if not v.holds:
            out["witness"] = _jsonable_witness(v.witness)
    elif a.property == "robustness":
        v = props.is_k_robust(g, a.k, a.cap)
        out["holds"] = v.holds
        if not v.holds:
            out["witness"] = _jsonable_witness(v.witness)
    else:
        v = props.robustness_screen(g, a.k, a.budget, a.seed)
        out["holds"] = False if v.certified_false else None
        out["status"] = v.status
        out["reason"] = v.reason
        if v.witness is not None:
            out["witness"] = _jsonable_witness(v.witness)
    out["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    _emit(a, json.dumps(out) + "\n")
    return 0


def cmd_threshold(a) -> int:
    out = {}
    if a.model in ("binomial", "uniform") and (a.p if a.model == "binomial" else a.K) is None:
        _need(a, "n", "P")
        crit = asy.critical_param(a.model, a.n, a.P, a.k)
        out["critical_param"] = crit
        if a.model == "binomial":
            a.p = crit
        else:
            a.K = crit
    rep = asy.alpha_from_scaling(_descriptor(a), a.k)
    out.update(rep.to_dict())
    _emit(a, json.dumps(out, indent=1) + "\n")
    return 0


def cmd_curve(a) -> int:
    _need(a, "n")
    if a.grid:
        grid = [float(x) for x in a.grid.split(",")]
    else:
        grid = list(np.linspace(a.start, a.stop, a.num))
    if a.model == "uniform":
        grid = [int(round(x)) for x in grid]
    rows = asy.predicted_curve(a.model, a.n, a.P, a.k, grid)
    if a.format == "json":
        _emit(a, json.dumps([{"param": x, "alpha_n": al, "predicted_limit": lp}
                             for x, al, lp in rows]) + "\n")
    else:
        _emit(a, "param,alpha_n,predicted_limit\n"
              + "".join(f"{x!r},{al!r},{lp!r}\n" for x, al, lp in rows))
    return 0


def _verify_battery(a) -> dict:
    n, P, p = a.n, a.P, a.p
    nested = sum(cp.nested_binomial_pair(n, P, p / 2, p, a.seed * 10**6 + s).subgraph_holds
                 for s in range(a.draws))
    b = cp.bracket_binomial(n, P, p)
    success = sum(cp.bracket_success_binomial(n, P, p, a.seed * 10**6 + s) for s in range(a.draws))
    report = {
        "nested_subgraph": {"draws": a.draws, "holds": int(nested), "pass": nested == a.draws},
        "bracket_success": {"draws": a.draws, "successes": int(success),
                            "freq": success / a.draws, "pass": success / a.draws >= 0.99},
        "bracket": b.to_dict(),
    }
    if a.trials > 0:
        ph = cp.p_hat_lemma7(n, P, p)
        z = cp.dominance_test(ERModel(n, ph), BinomialModel(n, P, p), "connectivity", 1,
                              a.trials, a.seed, a.threads or 1)
        report["dominance"] = {"p_hat": ph, "trials": a.trials, "z": z, "pass": z < 3}
    report["pass"] = all(v["pass"] for v in report.values() if isinstance(v, dict) and "pass" in v)
    return report


def cmd_couple(a) -> int:
    _need(a, "n", "P", "p")
    if a.verify:
        rep = _verify_battery(a)
        _emit(a, json.dumps(rep, indent=1) + "\n")
        return 0 if rep["pass"] else 1
    _emit(a, json.dumps(cp.bracket_binomial(a.n, a.P, a.p).to_dict()) + "\n")
    return 0


def cmd_consensus(a) -> int:
    g = _graph_from(a)
    cfg_d = json.loads(Path(a.config).read_text()) if a.config else {}
    if "adversaries" in cfg_d:
        cfg_d["adversaries"] = frozenset(cfg_d["adversaries"])
    if "strategy_args" in cfg_d:
        cfg_d["strategy_args"] = tuple(cfg_d["strategy_args"])
    cfg = ConsensusConfig(**cfg_d)
    x0 = as_rng(a.seed).random(g.n)
    tr = run_filtered_consensus(g, x0, cfg, a.seed)
    b = tr.values[:, tr.benign]
    if a.format == "json":
        _emit(a, json.dumps({"rounds_run": tr.rounds_run, "converged": tr.converged,
                             "h_local": tr.h_local, "safety": safety_holds(tr),
                             "monotone": spread_monotone(tr),
                             "final_spread": float(tr.spread[-1])}) + "\n")
    else:
        lines = ["round,spread,min,max"]
        lines += [f"{t},{tr.spread[t]!r},{b[t].min()!r},{b[t].max()!r}" for t in range(len(tr.spread))]
        _emit(a, "\n".join(lines) + "\n")
    return 0


def _write_rows(a, rows) -> None:
    if a.format == "json":
        _emit(a, rows_to_json(rows) + "\n")
    else:
        _emit(a, rows_to_csv(rows))
    if getattr(a, "gnuplot", None):
        Path(a.gnuplot).write_text(gnuplot_blocks(rows))


def cmd_sweep(a) -> int:
    cfg = SweepConfig.from_json(Path(a.config).read_text())
    _write_rows(a, run_sweep(cfg, a.threads))
    return 0


def _preset(name):
    def run(a) -> int:
        cfg = PRESETS[name](trials=a.trials, seed=a.seed)
        _write_rows(a, run_sweep(cfg, a.threads))
        return 0
    return run


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="riglab", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("generate", parents=[common], help="sample a graph, print an edge list")
    _model_args(p)
    p.add_argument("--assignment", default=None, help="also write the object sets as JSON here")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", parents=[common], help="decide a property, print a JSON verdict")
    _model_args(p)
    p.add_argument("--graph", default=None, help="edge-list file (otherwise a sampled model)")
    p.add_argument("--property", default="connectivity",
                   choices=("connectivity", "min_degree", "robustness", "robustness_screen",
                            "vertex_connectivity"))
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--cap", type=int, default=props.ROBUSTNESS_CAP)
    p.add_argument("--budget", type=int, default=props.SCREEN_BUDGET)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("threshold", parents=[common], help="scaling report as JSON")
    _model_args(p)
    p.add_argument("-k", type=int, default=1)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("curve", parents=[common], help="predicted limit along a parameter grid")
    _model_args(p)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--grid", default=None, help="comma-separated values")
    p.add_argument("--start", type=float, default=None)
    p.add_argument("--stop", type=float, default=None)
    p.add_argument("--num", type=int, default=20)
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("couple", parents=[common], help="binomial size bracket; --verify runs checks")
    _model_args(p)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--draws", type=int, default=200)
    p.add_argument("--trials", type=int, default=0, help="dominance-test trials per side (0 skips)")
    p.set_defaults(func=cmd_couple)

    p = sub.add_parser("consensus", parents=[common], help="trimmed-mean consensus trace")
    _model_args(p)
    p.add_argument("--graph", default=None)
    p.add_argument("--config", default=None, help="JSON with ConsensusConfig fields")
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("sweep", parents=[common], help="run a JSON sweep config")
    p.add_argument("config")
    p.add_argument("--gnuplot", default=None)
    p.set_defaults(func=cmd_sweep)

    for name, helptext in (("fig1", "binomial n=2000 preset"), ("fig2", "uniform n=2000 preset")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--gnuplot", default=None)
        p.set_defaults(func=_preset(name))
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except (ValueError, MemoryError, RuntimeError) as e:
        print(f"riglab: error: {e}", file=sys.stderr)
        return 1


cli_main = main


if __name__ == "__main__":
    sys.exit(main())
