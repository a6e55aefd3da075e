from __future__ import annotations

import dataclasses
import itertools
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from ..errors import InvalidParams
from ..kernels import ModelParams, Scenario
from ..protocols import ProtocolConfig

SCHEMES = ("enumerative", "codebook")
FORMATS = ("csv", "json")


def _as_grid(value: float | Sequence[float] | None) -> tuple[float | None, ...]:
    if value is None:
        return (None,)
    if isinstance(value, (int, float)):
        return (float(value),)
    return tuple(float(v) for v in value)


@dataclass(frozen=True)
class ExperimentConfig:
    scenario: Scenario = Scenario.UNKNOWN_R
    m: int = 8
    p_s: float = 0.075
    p_q: float | tuple[float, ...] | None = None
    p_r: float | tuple[float, ...] = 0.5
    trials: int = 100
    seed: int = 0
    margin: int = 8
    decode_enabled: bool = False
    scheme: str = "enumerative"
    classic: bool = False
    codebook_extra_bits: int = 3
    max_decode_candidates: int = 1 << 18
    workers: int = 1
    out: str | None = None
    format: str = "csv"

    def __post_init__(self) -> None:
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        for name in ("p_q", "p_r"):
            value = getattr(self, name)
            if isinstance(value, list):
                object.__setattr__(self, name, tuple(value))
        if self.trials < 1:
            raise InvalidParams(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise InvalidParams(f"workers must be >= 1, got {self.workers}")
        if self.scheme not in SCHEMES:
            raise InvalidParams(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.format not in FORMATS:
            raise InvalidParams(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.margin < 1:
            raise InvalidParams("margin must be >= 1")
        self.grid()  # validates every point

    def grid(self) -> list[ModelParams]:
        points = []
        for p_q, p_r in itertools.product(_as_grid(self.p_q), _as_grid(self.p_r)):
            if self.scenario is not Scenario.KNOWN_R:
                if p_q is not None and p_q != self.p_s:
                    raise InvalidParams(f"{self.scenario.value} fixes p_q = p_s; got p_q={p_q}")
                p_q = None
            elif p_q is None:
                raise InvalidParams("known_r needs p_q")
            points.append(ModelParams(self.m, self.p_s, p_q, p_r, self.scenario))
        return points

    def protocol(self) -> ProtocolConfig:
        return ProtocolConfig(
            seed=self.seed,
            margin_bits=self.margin,
            codebook_extra_bits=self.codebook_extra_bits,
            max_decode_candidates=self.max_decode_candidates,
            decode_enabled=self.decode_enabled,
        )

    def to_dict(self) -> dict[str, Any]:
        out = dataclasses.asdict(self)
        out["scenario"] = self.scenario.value
        for name in ("p_q", "p_r"):
            if isinstance(out[name], tuple):
                out[name] = list(out[name])
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> ExperimentConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise InvalidParams(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def override(self, **changes: Any) -> ExperimentConfig:
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)


def load_config(path: str | Path) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return ExperimentConfig.from_dict(json.load(fh))
