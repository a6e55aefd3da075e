"""Keyed random GF(2) hash matrices, syndromes, and weight-constrained solving.

Column ``j`` of a ``k x n`` matrix is stored as a ``k``-bit integer (bit ``i`` is
entry ``(i, j)``).  Random matrices are never materialized: column ``j`` is read
from a Philox stream keyed by ``(seed, k, n)`` at counter block ``j``, so any
column can be regenerated independently by either party.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from ..errors import DimMismatch


def _words_to_int(words: np.ndarray) -> int:
    return int.from_bytes(words.astype("<u8").tobytes(), "little")


@dataclass
class HashMatrix:
    k: int
    n: int
    seed: int | None = None
    _explicit: list[int] | None = field(default=None, repr=False)
    _cache: dict[int, int] = field(default_factory=dict, repr=False, compare=False)
    _keystate: np.ndarray | None = field(default=None, repr=False, compare=False)

    @classmethod
    def random(cls, seed: int, k: int, n: int) -> HashMatrix:
        if k < 0 or n < 1:
            raise DimMismatch(f"invalid matrix shape {k} x {n}")
        return cls(k, n, seed=int(seed))

    @classmethod
    def from_array(cls, rows: np.ndarray | Sequence[Sequence[int]]) -> HashMatrix:
        arr = np.asarray(rows, dtype=np.uint8) & 1
        if arr.ndim != 2:
            raise DimMismatch("matrix must be two-dimensional")
        k, n = arr.shape
        cols = [int(sum(int(arr[i, j]) << i for i in range(k))) for j in range(n)]
        return cls(k, n, _explicit=cols)

    def _key(self) -> np.ndarray:
        if self._keystate is None:
            ss = np.random.SeedSequence([self.seed, self.k, self.n])
            self._keystate = ss.generate_state(2, np.uint64)
        return self._keystate

    def column(self, j: int) -> int:
        if not 0 <= j < self.n:
            raise DimMismatch(f"column {j} outside [0, {self.n})")
        if self._explicit is not None:
            return self._explicit[j]
        col = self._cache.get(j)
        if col is None:
            if self.k == 0:
                col = 0
            else:
                gen = np.random.Philox(key=self._key(), counter=[0, 0, 0, j])
                words = gen.random_raw((self.k + 63) // 64)
                col = _words_to_int(words) & ((1 << self.k) - 1)
            self._cache[j] = col
        return col

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.k, self.n), dtype=np.uint8)
        for j in range(self.n):
            col = self.column(j)
            for i in range(self.k):
                out[i, j] = col >> i & 1
        return out


def int_to_bits(value: int, width: int) -> np.ndarray:
    """Little-endian bit vector: entry ``i`` is bit ``i`` of ``value``."""
    return np.array([value >> i & 1 for i in range(width)], dtype=np.uint8)


def syndrome_of_support(mat: HashMatrix, positions: Iterable[int]) -> int:
    """``H x`` for the indicator ``x`` of ``positions``, as a ``k``-bit integer."""
    acc = 0
    for j in positions:
        acc ^= mat.column(int(j))
    return acc


def syndrome(mat: HashMatrix, x: Sequence[int] | np.ndarray) -> np.ndarray:
    """Matrix-vector product over GF(2)."""
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (mat.n,):
        raise DimMismatch(f"vector of length {x.shape} does not match {mat.n} columns")
    return int_to_bits(syndrome_of_support(mat, np.flatnonzero(x & 1)), mat.k)


# solving -----------------------------------------------------------------------


@dataclass(frozen=True)
class AffineSolutions:
    """``{particular ^ span(basis)}`` over ``d`` unknowns, as bitmasks."""

    d: int
    particular: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __iter__(self) -> Iterator[int]:
        # Gray-code walk: one XOR per step
        x = self.particular
        yield x
        for step in range(1, 1 << self.dim):
            x ^= self.basis[(step & -step).bit_length() - 1]
            yield x


def solve(columns: Sequence[int], target: int) -> AffineSolutions | None:
    """All ``x`` with ``XOR_{t: x_t = 1} columns[t] == target``; ``None`` if inconsistent."""
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for t, col in enumerate(columns):
        vec, combo = col, 1 << t
        while vec:
            top = vec.bit_length() - 1
            if top not in pivots:
                pivots[top] = (vec, combo)
                break
            pv, pc = pivots[top]
            vec ^= pv
            combo ^= pc
        else:
            basis.append(combo)
    vec, combo = target, 0
    while vec:
        top = vec.bit_length() - 1
        if top not in pivots:
            return None
        pv, pc = pivots[top]
        vec ^= pv
        combo ^= pc
    return AffineSolutions(len(columns), combo, tuple(basis))


def weight_solution_work(space: AffineSolutions | None, weight: int) -> int:
    """Enumeration steps the cheaper of the two search routes would take."""
    if space is None:
        return 0
    return min(1 << space.dim, math.comb(space.d, weight))


def find_weight_solutions(
    columns: Sequence[int],
    target: int,
    weight: int,
    limit: int | None = None,
    space: AffineSolutions | None = None,
) -> list[int]:
    """Solutions of Hamming weight ``weight``, stopping once ``limit`` are found.

    Walks the affine solution space or the ``weight``-subsets of the columns,
    whichever is smaller.
    """
    if space is None:
        space = solve(columns, target)
    if space is None:
        return []
    found = []
    if (1 << space.dim) <= math.comb(space.d, weight):
        for x in space:
            if x.bit_count() == weight:
                found.append(x)
                if limit is not None and len(found) >= limit:
                    break
        return found
    for combo in itertools.combinations(range(len(columns)), weight):
        acc = 0
        for t in combo:
            acc ^= columns[t]
        if acc == target:
            found.append(sum(1 << t for t in combo))
            if limit is not None and len(found) >= limit:
                break
    return found
