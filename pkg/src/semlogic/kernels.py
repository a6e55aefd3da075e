"""Kernels as bitsets over the 2^m worlds, plus the nested Bernoulli model.

World ``w`` is an integer in ``[0, 2^m)``; bit ``i`` of ``w`` holds the value of
variable ``X_{i+1}`` (``X1`` is the least significant bit).  A kernel stores its
members as one Python integer whose bit ``w`` is set iff world ``w`` belongs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import CapExceeded, InvalidParams, MixedM, NotSubset

M_CAP = 24
MAX_RESAMPLES = 1_000_000


def check_cap(m: int, cap: int = M_CAP) -> None:
    if m < 1:
        raise CapExceeded(f"m must be positive, got {m}")
    if m > cap:
        raise CapExceeded(f"m={m} exceeds the configured cap {cap}")


@dataclass(frozen=True)
class Kernel:
    """Immutable set of worlds for ``m`` propositional variables."""

    m: int
    bits: int = 0

    def __post_init__(self) -> None:
        check_cap(self.m)
        if self.bits < 0 or self.bits >> (1 << self.m):
            raise ValueError("kernel bits exceed 2^m worlds")

    # construction ------------------------------------------------------
    @classmethod
    def empty(cls, m: int) -> Kernel:
        return cls(m, 0)

    @classmethod
    def full(cls, m: int) -> Kernel:
        return cls(m, (1 << (1 << m)) - 1)

    @classmethod
    def from_worlds(cls, m: int, worlds: Iterable[int]) -> Kernel:
        n = 1 << m
        bits = 0
        for w in worlds:
            w = int(w)
            if not 0 <= w < n:
                raise ValueError(f"world {w} out of range for m={m}")
            bits |= 1 << w
        return cls(m, bits)

    @classmethod
    def from_array(cls, m: int, mask: np.ndarray) -> Kernel:
        """Build from a boolean array of length ``2^m`` indexed by world."""
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (1 << m,):
            raise ValueError(f"expected mask of length {1 << m}, got {mask.shape}")
        packed = np.packbits(mask, bitorder="little")
        return cls(m, int.from_bytes(packed.tobytes(), "little"))

    # views -------------------------------------------------------------
    @property
    def n_worlds(self) -> int:
        return 1 << self.m

    def to_array(self) -> np.ndarray:
        n = self.n_worlds
        raw = self.bits.to_bytes((n + 7) // 8, "little")
        return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)

    def worlds(self) -> list[int]:
        """Members in increasing world order."""
        return np.flatnonzero(self.to_array()).tolist()

    def popcount(self) -> int:
        return self.bits.bit_count()

    def normalized_size(self) -> float:
        return self.popcount() / self.n_worlds

    def __len__(self) -> int:
        return self.popcount()

    def __iter__(self) -> Iterator[int]:
        return iter(self.worlds())

    def __contains__(self, w: object) -> bool:
        return isinstance(w, (int, np.integer)) and 0 <= w < self.n_worlds and bool(self.bits >> int(w) & 1)

    def __repr__(self) -> str:
        members = self.worlds()
        if len(members) > 16:
            return f"Kernel(m={self.m}, |k|={len(members)})"
        return f"Kernel(m={self.m}, {set(members) or '{}'})"

    # algebra -----------------------------------------------------------
    def _same_m(self, other: Kernel) -> None:
        if not isinstance(other, Kernel):
            raise TypeError(f"expected Kernel, got {type(other).__name__}")
        if other.m != self.m:
            raise MixedM(f"kernels over different m: {self.m} vs {other.m}")

    def union(self, other: Kernel) -> Kernel:
        self._same_m(other)
        return Kernel(self.m, self.bits | other.bits)

    def intersect(self, other: Kernel) -> Kernel:
        self._same_m(other)
        return Kernel(self.m, self.bits & other.bits)

    def difference(self, other: Kernel) -> Kernel:
        self._same_m(other)
        return Kernel(self.m, self.bits & ~other.bits)

    def complement(self) -> Kernel:
        return Kernel(self.m, self.bits ^ ((1 << self.n_worlds) - 1))

    def is_subset(self, other: Kernel) -> bool:
        self._same_m(other)
        return self.bits & ~other.bits == 0

    def is_disjoint(self, other: Kernel) -> bool:
        self._same_m(other)
        return self.bits & other.bits == 0

    __or__ = union
    __and__ = intersect
    __sub__ = difference
    __invert__ = complement
    __le__ = is_subset

    def __lt__(self, other: Kernel) -> bool:
        return self.is_subset(other) and self.bits != other.bits

    def to_json(self) -> dict:
        return {"m": self.m, "worlds": self.worlds()}


def union(a: Kernel, b: Kernel) -> Kernel:
    return a.union(b)


def intersect(a: Kernel, b: Kernel) -> Kernel:
    return a.intersect(b)


def complement(k: Kernel) -> Kernel:
    return k.complement()


def is_subset(a: Kernel, b: Kernel) -> bool:
    return a.is_subset(b)


def popcount(k: Kernel) -> int:
    return k.popcount()


def normalized_size(k: Kernel) -> float:
    return k.normalized_size()


def indicator_within(inner: Kernel, outer: Kernel) -> np.ndarray:
    """0/1 vector over the members of ``outer`` (in world order) marking ``inner``."""
    if not inner.is_subset(outer):
        raise NotSubset("inner kernel is not contained in outer kernel")
    mask = inner.to_array()
    return mask[outer.to_array()].astype(np.uint8)


# probabilistic model ---------------------------------------------------------


class Scenario(str, enum.Enum):
    KNOWN_R = "known_r"
    UNKNOWN_R = "unknown_r"
    MISINFO = "misinfo"


@dataclass(frozen=True)
class ModelParams:
    """Expected normalized kernel sizes for sender, query and receiver."""

    m: int
    p_s: float
    p_q: float | None = None
    p_r: float = 1.0
    scenario: Scenario = Scenario.KNOWN_R

    def __post_init__(self) -> None:
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        if self.p_q is None:
            object.__setattr__(self, "p_q", self.p_s)
        try:
            check_cap(self.m)
        except CapExceeded as exc:
            raise InvalidParams(str(exc)) from None
        for name in ("p_s", "p_q", "p_r"):
            p = getattr(self, name)
            if not 0.0 < p <= 1.0:
                raise InvalidParams(f"{name}={p} must lie in (0, 1]")
        p_s, p_q, p_r = self.p_s, self.p_q, self.p_r
        if self.scenario is Scenario.KNOWN_R:
            if not p_s <= p_q < p_r:
                raise InvalidParams(f"known_r needs p_s <= p_q < p_r, got {p_s}, {p_q}, {p_r}")
        elif self.scenario is Scenario.UNKNOWN_R:
            if p_q != p_s:
                raise InvalidParams("unknown_r requires p_q == p_s")
            if p_s > p_r:
                raise InvalidParams(f"unknown_r needs p_s <= p_r, got {p_s}, {p_r}")
        else:
            if p_q != p_s:
                raise InvalidParams("misinfo requires p_q == p_s")
            if p_s + p_r > 1.0 + 1e-12:
                raise InvalidParams(f"misinfo needs p_s + p_r <= 1, got {p_s + p_r}")


@dataclass(frozen=True)
class TripleSample:
    ks: Kernel
    kq: Kernel
    kr: Kernel
    resample_count: int = 0


def _bernoulli_subset(rng: np.random.Generator, parent: np.ndarray, prob: float) -> np.ndarray:
    # one uniform draw per world keeps the stream layout independent of the parent
    draws = rng.random(parent.shape[0])
    return parent & (draws < prob)


def sample_nested(params: ModelParams, rng: np.random.Generator) -> TripleSample:
    """Draw ``ks ⊆ kq ⊆ kr`` by successive i.i.d. thinning; redraws while ``ks`` is empty."""
    if params.scenario is Scenario.MISINFO:
        raise InvalidParams("sample_nested does not handle the misinfo scenario")
    n = 1 << params.m
    everything = np.ones(n, dtype=bool)
    for attempt in range(MAX_RESAMPLES):
        r = _bernoulli_subset(rng, everything, params.p_r)
        q = _bernoulli_subset(rng, r, params.p_q / params.p_r)
        s = _bernoulli_subset(rng, q, params.p_s / params.p_q)
        if s.any():
            m = params.m
            return TripleSample(Kernel.from_array(m, s), Kernel.from_array(m, q), Kernel.from_array(m, r), attempt)
    raise InvalidParams(f"no nonempty sender kernel after {MAX_RESAMPLES} draws")


def sample_misinfo(params: ModelParams, rng: np.random.Generator) -> TripleSample:
    """Draw disjoint ``ks`` and ``kr``; ``kq`` equals ``ks``."""
    if params.scenario is not Scenario.MISINFO:
        raise InvalidParams("sample_misinfo requires the misinfo scenario")
    n = 1 << params.m
    everything = np.ones(n, dtype=bool)
    p_outside = min(1.0, params.p_s / (1.0 - params.p_r)) if params.p_r < 1.0 else 1.0
    for attempt in range(MAX_RESAMPLES):
        r = _bernoulli_subset(rng, everything, params.p_r)
        s = _bernoulli_subset(rng, ~r, p_outside)
        if s.any() and not r.all():
            m = params.m
            ks = Kernel.from_array(m, s)
            return TripleSample(ks, ks, Kernel.from_array(m, r), attempt)
    raise InvalidParams(f"no valid misinfo sample after {MAX_RESAMPLES} draws")


def sample(params: ModelParams, rng: np.random.Generator) -> TripleSample:
    if params.scenario is Scenario.MISINFO:
        return sample_misinfo(params, rng)
    return sample_nested(params, rng)
