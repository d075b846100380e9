"""Trial engine shared by the sweep harness and the dominance test.

A trial is keyed by ``(base_seed, *key, t)``; the graph for that trial is a
function of the key alone, so counts do not depend on how trials are split
across worker processes.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .graph import InvalidParameter, trial_rng
from .props import SCREEN_BUDGET, has_property

CHUNK = 50


def resolve_workers(threads: int | None = None) -> int:
    if threads is None:
        threads = int(os.environ.get("RIGLAB_THREADS", "1") or 1)
    return max(1, int(threads))


def _run_chunk(task) -> tuple[int, np.ndarray]:
    idx, model, checks, base, key, start, stop, budget = task
    counts = np.zeros(len(checks), dtype=np.int64)
    for t in range(start, stop):
        rng = trial_rng(base, *key, t)
        g = model.draw(rng)
        screen_seed = int(rng.integers(0, 2 ** 31))
        memo = {}
        for j, (prop, k) in enumerate(checks):
            counts[j] += has_property(g, prop, k, budget, screen_seed, memo=memo)
    return idx, counts


def count_successes(jobs, trials: int, base_seed: int, workers: int = 1,
                    screen_budget: int = SCREEN_BUDGET, chunk: int = CHUNK) -> list[np.ndarray]:
    """Success counts for each job.

    ``jobs`` is a list of ``(model, checks, key)``: ``model.draw(rng)`` makes a
    graph, ``checks`` is a list of ``(property, k)`` scored on every graph and
    ``key`` a tuple of non-negative ints naming the job's seed stream.
    Returns one integer array (aligned with ``checks``) per job.
    """
    if trials < 1:
        raise InvalidParameter("trials must be >= 1")
    tasks = []
    for j, (model, checks, key) in enumerate(jobs):
        for start in range(0, trials, chunk):
            tasks.append((j, model, tuple(checks), base_seed, tuple(key),
                          start, min(start + chunk, trials), screen_budget))
    out = [np.zeros(len(checks), dtype=np.int64) for _, checks, _ in jobs]
    if workers <= 1 or len(tasks) <= 1:
        results = map(_run_chunk, tasks)
        for j, c in results:
            out[j] += c
        return out
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for j, c in ex.map(_run_chunk, tasks, chunksize=1):
            out[j] += c
    return out


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials < 1:
        raise InvalidParameter("trials must be >= 1")
    ph = successes / trials
    denom = 1 + z * z / trials
    centre = (ph + z * z / (2 * trials)) / denom
    half = z * math.sqrt(ph * (1 - ph) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)
