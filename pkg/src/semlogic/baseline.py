"""Classic competitor: greedy decision tree of a kernel, entropy coded.

Tokens are ``LEAF0 = 0``, ``LEAF1 = 1`` and ``SPLIT_i = i + 1`` for variable
``X_i``, written in preorder (node, low subtree, high subtree), so the alphabet
has ``m + 2`` symbols.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .codec.arith import ac_encode
from .codec.elias import encode_size
from .errors import CorruptStream
from .kernels import M_CAP, Kernel, check_cap

LEAF0, LEAF1 = 0, 1
_TIE = 1e-12


@dataclass(frozen=True)
class Leaf:
    value: bool


@dataclass(frozen=True)
class Split:
    var: int
    low: DecisionTree
    high: DecisionTree


DecisionTree = Union[Leaf, Split]


def _entropy(ones: int, total: int) -> float:
    if ones == 0 or ones == total:
        return 0.0
    p = ones / total
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _grow(cube: np.ndarray, axis_vars: list[int]) -> DecisionTree:
    total = cube.size
    ones = int(np.count_nonzero(cube))
    if ones == 0 or ones == total:
        return Leaf(ones == total)
    parent = _entropy(ones, total)
    half = total // 2
    best_axis, best_gain, best_var = -1, -1.0, 0
    for axis, var in enumerate(axis_vars):
        high_ones = int(np.count_nonzero(cube.take(1, axis=axis)))
        gain = parent - 0.5 * (_entropy(ones - high_ones, half) + _entropy(high_ones, half))
        if gain > best_gain + _TIE or (abs(gain - best_gain) <= _TIE and var < best_var):
            best_axis, best_gain, best_var = axis, gain, var
    rest = axis_vars[:best_axis] + axis_vars[best_axis + 1:]
    return Split(
        best_var,
        _grow(cube.take(0, axis=best_axis), rest),
        _grow(cube.take(1, axis=best_axis), rest),
    )


def build_tree(k: Kernel, cap: int = M_CAP) -> DecisionTree:
    """Greedy information-gain tree (ties go to the lowest variable index)."""
    check_cap(k.m, cap)
    # C-order reshape: axis 0 is the most significant bit, i.e. X_m
    cube = k.to_array().reshape((2,) * k.m)
    return _grow(cube, list(range(k.m, 0, -1)))


def evaluate_tree(t: DecisionTree, w: int) -> bool:
    while isinstance(t, Split):
        t = t.high if w >> (t.var - 1) & 1 else t.low
    return t.value


def tree_size(t: DecisionTree) -> int:
    if isinstance(t, Leaf):
        return 1
    return 1 + tree_size(t.low) + tree_size(t.high)


def serialize_tree(t: DecisionTree) -> list[int]:
    out: list[int] = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(LEAF1 if node.value else LEAF0)
        else:
            out.append(node.var + 1)
            stack.append(node.high)
            stack.append(node.low)
    return out


def deserialize_tree(tokens: list[int], m: int) -> DecisionTree:
    pos = 0

    def node(fixed: frozenset[int]) -> DecisionTree:
        nonlocal pos
        if pos >= len(tokens):
            raise CorruptStream("token stream ended inside a subtree")
        tok = tokens[pos]
        pos += 1
        if tok in (LEAF0, LEAF1):
            return Leaf(tok == LEAF1)
        var = tok - 1
        if not 1 <= var <= m or var in fixed:
            raise CorruptStream(f"invalid split token {tok}")
        inner = fixed | {var}
        low = node(inner)
        return Split(var, low, node(inner))

    tree = node(frozenset())
    if pos != len(tokens):
        raise CorruptStream(f"{len(tokens) - pos} trailing tokens")
    return tree


def classic_cost(k: Kernel) -> int:
    """Bits to send ``m`` plus the arithmetic-coded serialized tree."""
    tokens = serialize_tree(build_tree(k))
    return len(encode_size(k.m)) + len(ac_encode(tokens, k.m + 2))


def classic_cost_min(ks: Kernel, kq: Kernel) -> int:
    """Cheaper of coding the sender or the query statement."""
    return min(classic_cost(ks), classic_cost(kq))
