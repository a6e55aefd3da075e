"""Seeded Monte Carlo runs over parameter grids, plus closed-form bound tables.

Trial ``t`` of grid point ``g`` draws from
``SeedSequence(seed, spawn_key=(g, t))``; results are gathered in trial order
before aggregation, so worker count never changes the output.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .. import entropy
from ..baseline import classic_cost, classic_cost_min
from ..kernels import ModelParams, Scenario, sample
from ..protocols import Status, run_protocol, verify_outcome
from .config import ExperimentConfig


@dataclass(frozen=True)
class ResultRow:
    scenario: str
    m: int
    p_s: float
    p_q: float
    p_r: float
    trials: int
    mean_total_bits: float
    mean_normalized_bits: float
    stddev: float
    bound_lambda: float
    classic_mean_bits: float
    fallback_rate: float
    undetected_rate: float
    resample_rate: float
    decode_skipped: float


RESULT_FIELDS = tuple(f.name for f in fields(ResultRow))


@dataclass(frozen=True)
class TrialResult:
    total_bits: int
    classic_bits: float
    fallback: bool
    undetected: bool
    resampled: bool
    skipped: bool


def trial_rng(seed: int, point: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(point, trial)))


def run_trial(cfg: ExperimentConfig, point: int, params: ModelParams, trial: int) -> TrialResult:
    rng = trial_rng(cfg.seed, point, trial)
    draw = sample(params, rng)
    out = run_protocol(params.scenario, draw.ks, draw.kq, draw.kr, cfg.protocol(), cfg.scheme)
    undetected = False
    if out.status is Status.OK and not out.decode_skipped:
        undetected = not verify_outcome(out, draw.ks, draw.kq, draw.kr, rng=rng).passed
    classic = math.nan
    if cfg.classic:
        if params.scenario is Scenario.KNOWN_R:
            classic = float(classic_cost_min(draw.ks, draw.kq))
        else:
            classic = float(classic_cost(draw.ks))
    return TrialResult(
        out.total_bits,
        classic,
        out.status is Status.FALLBACK_USED,
        undetected,
        draw.resample_count > 0,
        out.decode_skipped,
    )


def _run_task(task: tuple[ExperimentConfig, int, ModelParams, int]) -> TrialResult:
    return run_trial(*task)


def aggregate(cfg: ExperimentConfig, params: ModelParams, results: Sequence[TrialResult]) -> ResultRow:
    n = len(results)
    worlds = 1 << params.m
    totals = [r.total_bits for r in results]
    normalized = [t / worlds for t in totals]
    mean_total = math.fsum(totals) / n
    mean_norm = mean_total / worlds
    stddev = 0.0
    if n > 1:
        stddev = math.sqrt(math.fsum((x - mean_norm) ** 2 for x in normalized) / (n - 1))
    classic = [r.classic_bits for r in results]
    classic_mean = math.fsum(classic) / n if cfg.classic else math.nan
    return ResultRow(
        scenario=params.scenario.value,
        m=params.m,
        p_s=params.p_s,
        p_q=params.p_q,
        p_r=params.p_r,
        trials=n,
        mean_total_bits=mean_total,
        mean_normalized_bits=mean_norm,
        stddev=stddev,
        bound_lambda=entropy.bound_for(params),
        classic_mean_bits=classic_mean,
        fallback_rate=sum(r.fallback for r in results) / n,
        undetected_rate=sum(r.undetected for r in results) / n,
        resample_rate=sum(r.resampled for r in results) / n,
        decode_skipped=sum(r.skipped for r in results) / n,
    )


def run_point_trials(cfg: ExperimentConfig, point: int, params: ModelParams) -> list[TrialResult]:
    tasks = [(cfg, point, params, t) for t in range(cfg.trials)]
    if cfg.workers == 1:
        return [_run_task(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
        chunk = max(1, len(tasks) // (4 * cfg.workers))
        return list(pool.map(_run_task, tasks, chunksize=chunk))


def run_simulation(cfg: ExperimentConfig) -> list[ResultRow]:
    return [aggregate(cfg, params, run_point_trials(cfg, g, params)) for g, params in enumerate(cfg.grid())]


# closed-form tables ----------------------------------------------------------------

LESSMORE_FIELDS = ("p_s", "p_q", "p_r", "lambda", "send_s_cost", "send_q_cost")
MISINFO_FIELDS = ("p_s", "p_r", "misinfo_bound", "ignorance_bound", "ratio")

LESSMORE_GRID = tuple(round(0.15 + 0.05 * i, 10) for i in range(18))
MISINFO_GRID = (0.101, 0.105, 0.12, 0.15, 0.2, 0.3, 0.4, 0.5)


def lessmore_table(p_s: float = 0.15, p_r: float = 1.0, grid: Iterable[float] = LESSMORE_GRID) -> list[dict]:
    return [
        {"p_s": p_s, "p_q": row.p_q, "p_r": p_r, "lambda": row.lam,
         "send_s_cost": row.send_s_cost, "send_q_cost": row.send_q_cost}
        for row in entropy.lessmore_curves(p_s, grid, p_r)
    ]


def misinfo_table(p_s: float = 0.1, grid: Iterable[float] = MISINFO_GRID) -> list[dict]:
    return [
        {"p_s": p_s, "p_r": p_r, "misinfo_bound": entropy.bound_misinfo(p_s, p_r),
         "ignorance_bound": entropy.bound_unknown_r(p_s, p_r), "ratio": entropy.misinfo_ratio(p_s, p_r)}
        for p_r in grid
    ]


def run_bounds(
    lessmore_p_s: float = 0.15,
    lessmore_p_r: float = 1.0,
    lessmore_grid: Iterable[float] = LESSMORE_GRID,
    misinfo_p_s: float = 0.1,
    misinfo_grid: Iterable[float] = MISINFO_GRID,
) -> dict[str, list[dict]]:
    return {
        "lessmore": lessmore_table(lessmore_p_s, lessmore_p_r, lessmore_grid),
        "misinfo": misinfo_table(misinfo_p_s, misinfo_grid),
    }
