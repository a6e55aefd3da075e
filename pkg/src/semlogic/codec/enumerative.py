"""Enumerative coding of fixed-size subsets via the combinatorial number system.

A ``k``-subset ``{e_1 < ... < e_k}`` of ``[0, n)`` has colexicographic rank
``sum_i C(e_i, i)``; ranks of ``k``-subsets fill ``[0, C(n, k))`` exactly.
"""
from __future__ import annotations

import math
from typing import Iterable, Sequence

from ..errors import DomainError, RankOverflow
from .bits import BitReader, BitString

N_MAX = 1 << 24


def binomial(n: int, k: int) -> int:
    if not 0 <= k <= n <= N_MAX:
        raise DomainError(f"binomial needs 0 <= k <= n <= 2^24, got C({n}, {k})")
    return math.comb(n, k)


def rank_width(n: int, k: int) -> int:
    """``ceil(log2 C(n, k))``, the fixed rank field length."""
    return (binomial(n, k) - 1).bit_length()


def _check_subset(elements: Sequence[int], n: int | None) -> None:
    prev = -1
    for e in elements:
        if e <= prev:
            raise DomainError("elements must be sorted and distinct")
        prev = e
    if elements and elements[0] < 0:
        raise DomainError("elements must be nonnegative")
    if n is not None and elements and elements[-1] >= n:
        raise DomainError(f"element {elements[-1]} outside [0, {n})")


def subset_rank(elements: Iterable[int], n: int | None = None) -> int:
    elements = [int(e) for e in elements]
    _check_subset(elements, n)
    return sum(math.comb(e, i) for i, e in enumerate(elements, start=1))


def subset_unrank(rank: int, k: int, n: int) -> list[int]:
    """Inverse of ``subset_rank`` for ``k``-subsets of ``[0, n)``."""
    total = binomial(n, k)
    if not 0 <= rank < total:
        raise RankOverflow(f"rank {rank} outside [0, C({n}, {k}) = {total})")
    out = []
    hi = n  # every remaining element is < hi
    for i in range(k, 0, -1):
        c, value = _largest_fitting(rank, i, hi)
        out.append(c)
        rank -= value
        hi = c
    out.reverse()
    return out


def _largest_fitting(rank: int, i: int, hi: int) -> tuple[int, int]:
    """Largest ``c`` in ``[i-1, hi)`` with ``C(c, i) <= rank``, and ``C(c, i)``.

    Starts from the estimate ``C(c, i) ~ (c - (i-1)/2)^i / i!`` and corrects
    with exact neighbour steps; the estimate is almost always exact.
    """
    lo, top = i - 1, hi - 1
    if rank == 0:
        return lo, 0
    guess = math.exp((math.log(rank) + math.lgamma(i + 1)) / i) + (i - 1) / 2
    c = min(max(int(guess), lo), top)
    value = math.comb(c, i)
    while value > rank:  # C(c-1, i) = C(c, i) (c-i) / c
        value = value * (c - i) // c
        c -= 1
    while c < top:
        up = value * (c + 1) // (c + 1 - i) if value else math.comb(c + 1, i)
        if up > rank:
            break
        c, value = c + 1, up
    return c, value


def encode_subset_fixed(elements: Iterable[int], n: int) -> BitString:
    """Rank of the subset as exactly ``ceil(log2 C(n, k))`` big-endian bits."""
    elements = sorted(int(e) for e in elements)
    _check_subset(elements, n)
    width = rank_width(n, len(elements))
    return BitString.from_int(subset_rank(elements, n), width)


def read_subset_fixed(reader: BitReader, n: int, k: int) -> list[int]:
    rank = reader.read_int(rank_width(n, k))
    return subset_unrank(rank, k, n)


def decode_subset_fixed(bits: BitString | str, n: int, k: int) -> list[int]:
    reader = BitReader(bits)
    out = read_subset_fixed(reader, n, k)
    reader.expect_end()
    return out
