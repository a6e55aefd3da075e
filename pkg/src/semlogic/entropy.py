"""Logical semantic entropy and the closed-form bounds built on it.

All quantities are bits per world, i.e. normalized by ``2^m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError
from .kernels import ModelParams, Scenario

_EPS = 1e-12


def h2(p: float) -> float:
    """Binary entropy in bits, with ``0 log 0 = 0``."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"h2 needs p in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def lam(a: float, b: float) -> float:
    """Logical semantic entropy ``a log2((a+b)/a) + b log2((a+b)/b)``."""
    if a < 0 or b < 0:
        raise DomainError(f"lambda needs nonnegative arguments, got ({a}, {b})")
    total = a + b
    out = 0.0
    if a > 0:
        out += a * math.log2(total / a)
    if b > 0:
        out += b * math.log2(total / b)
    return out


logical_semantic_entropy = lam


def bound_known_r(p_s: float, p_q: float, p_r: float) -> float:
    if not (0 <= p_s <= p_q < p_r <= 1):
        raise DomainError(f"need p_s <= p_q < p_r <= 1, got ({p_s}, {p_q}, {p_r})")
    return lam(p_s, p_r - p_q)


def bound_unknown_r(p_s: float, p_r: float) -> float:
    if not (0 <= p_s < p_r <= 1):
        raise DomainError(f"need p_s < p_r <= 1, got ({p_s}, {p_r})")
    return lam(p_s, p_r - p_s)


def bound_misinfo(p_s: float, p_r: float) -> float:
    if p_s < 0 or p_r < 0 or p_s + p_r > 1 + _EPS:
        raise DomainError(f"need p_s + p_r <= 1, got ({p_s}, {p_r})")
    return lam(p_s, max(0.0, 1.0 - p_r - p_s))


def misinfo_ratio(p_s: float, p_r: float) -> float:
    """Cost of correcting misinformation relative to correcting ignorance."""
    if not p_s < p_r:
        raise DomainError(f"ratio needs p_s < p_r, got ({p_s}, {p_r})")
    return bound_misinfo(p_s, p_r) / bound_unknown_r(p_s, p_r)


@dataclass(frozen=True)
class LessMoreRow:
    p_q: float
    lam: float
    send_s_cost: float
    send_q_cost: float


def lessmore_curves(p_s: float, p_q_grid: Iterable[float], p_r: float = 1.0) -> list[LessMoreRow]:
    rows = []
    for p_q in p_q_grid:
        if not p_s <= p_q <= 1:
            raise DomainError(f"grid point p_q={p_q} outside [p_s, 1]")
        rows.append(LessMoreRow(p_q, lam(p_s, max(0.0, p_r - p_q)), h2(p_s), h2(p_q)))
    return rows


@dataclass(frozen=True)
class BoundReport:
    scenario: Scenario
    params: ModelParams
    lambda_bits_per_world: float
    classic_send_s: float
    classic_send_q: float
    misinfo_ratio: float | None = None


def bound_report(params: ModelParams) -> BoundReport:
    p_s, p_q, p_r = params.p_s, params.p_q, params.p_r
    ratio = None
    if params.scenario is Scenario.KNOWN_R:
        value = bound_known_r(p_s, p_q, p_r)
    elif params.scenario is Scenario.UNKNOWN_R:
        value = lam(p_s, p_r - p_s)
    else:
        value = bound_misinfo(p_s, p_r)
        if p_s < p_r:
            ratio = misinfo_ratio(p_s, p_r)
    return BoundReport(params.scenario, params, value, h2(p_s), h2(p_q), ratio)


def bound_for(params: ModelParams) -> float:
    return bound_report(params).lambda_bits_per_world
