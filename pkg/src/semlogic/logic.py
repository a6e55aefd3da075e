"""Propositional statements: parsing, printing, evaluation, kernels, synthesis.

Concrete syntax (ASCII, with unicode aliases)::

    expr    := implies
    implies := or ( '->' implies )?          # right-associative
    or      := and ( '|' and )*              # left-associative
    and     := unary ( '&' unary )*          # left-associative
    unary   := '!' unary | atom
    atom    := 'X' digits | '(' expr ')'

Entailment is decided semantically, by kernel inclusion.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Union

import numpy as np

from .errors import StatementSyntaxError, VarOutOfRange
from .kernels import M_CAP, Kernel, check_cap


@dataclass(frozen=True)
class Var:
    index: int

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Not:
    child: Statement

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: Statement
    right: Statement

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: Statement
    right: Statement

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Implies:
    left: Statement
    right: Statement

    def __str__(self) -> str:
        return to_text(self)


Statement = Union[Var, Not, And, Or, Implies]

_BINARY = (And, Or, Implies)
_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4, Var: 5}
_SYMBOL = {And: "&", Or: "|", Implies: "->"}

# parsing ---------------------------------------------------------------------

_ALIASES = {"¬": "!", "~": "!", "∧": "&", "∨": "|", "⟹": "->", "⇒": "->", "→": "->"}
_TOKEN = re.compile(r"\s*(?:(X)(\d+)|(->)|([!&|()]))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    for alias, ascii_ in _ALIASES.items():
        text = text.replace(alias, ascii_)
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        match = _TOKEN.match(text, pos)
        if match is None:
            raise StatementSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = match.start(1) if match.group(1) else match.start(match.lastindex)
        if match.group(1):
            tokens.append(("VAR", int(match.group(2)), start))
        else:
            tokens.append((match.group(match.lastindex), None, start))
        pos = match.end()
    tokens.append(("EOF", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, m: int):
        self.text = text
        self.m = m
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def take(self, kind: str | None = None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            found = "end of input" if tok[0] == "EOF" else repr(tok[0])
            raise StatementSyntaxError(f"expected {kind!r}, found {found}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> Statement:
        node = self.implies()
        if self.peek() != "EOF":
            tok = self.tokens[self.i]
            raise StatementSyntaxError(f"unexpected token {tok[0]!r}", tok[2], self.text)
        return node

    def implies(self) -> Statement:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.implies())
        return left

    def disjunction(self) -> Statement:
        node = self.conjunction()
        while self.peek() == "|":
            self.take()
            node = Or(node, self.conjunction())
        return node

    def conjunction(self) -> Statement:
        node = self.unary()
        while self.peek() == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Statement:
        if self.peek() == "!":
            self.take()
            return Not(self.unary())
        return self.atom()

    def atom(self) -> Statement:
        kind, value, pos = self.tokens[self.i]
        if kind == "VAR":
            self.take()
            if not 1 <= value <= self.m:
                raise VarOutOfRange(f"X{value} at position {pos} is outside X1..X{self.m}")
            return Var(value)
        if kind == "(":
            self.take()
            node = self.implies()
            self.take(")")
            return node
        found = "end of input" if kind == "EOF" else repr(kind)
        raise StatementSyntaxError(f"expected a variable or '(', found {found}", pos, self.text)


def parse(text: str, m: int) -> Statement:
    """Parse ``text`` into a statement over ``X1..Xm``."""
    if m < 1:
        raise ValueError("m must be positive")
    return _Parser(text, m).parse()


def parse_corpus(text: str, m: int) -> list[Statement]:
    """One statement per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse(line, m))
    return out


def load_corpus(path: str | Path, m: int) -> list[Statement]:
    return parse_corpus(Path(path).read_text(encoding="utf-8"), m)


def to_text(s: Statement) -> str:
    """Render with the minimum parentheses needed for ``parse`` to rebuild ``s``."""
    if isinstance(s, Var):
        return f"X{s.index}"
    if isinstance(s, Not):
        inner = to_text(s.child)
        if _PRECEDENCE[type(s.child)] < _PRECEDENCE[Not]:
            inner = f"({inner})"
        return "!" + inner
    op = type(s)
    prec = _PRECEDENCE[op]
    left, right = to_text(s.left), to_text(s.right)
    lp, rp = _PRECEDENCE[type(s.left)], _PRECEDENCE[type(s.right)]
    if op is Implies:
        # right-associative: a same-precedence left child needs parentheses
        left_wrap, right_wrap = lp <= prec, rp < prec
    else:
        left_wrap, right_wrap = lp < prec, rp <= prec
    if left_wrap:
        left = f"({left})"
    if right_wrap:
        right = f"({right})"
    return f"{left} {_SYMBOL[op]} {right}"


# semantics -------------------------------------------------------------------


def max_var(s: Statement) -> int:
    if isinstance(s, Var):
        return s.index
    if isinstance(s, Not):
        return max_var(s.child)
    return max(max_var(s.left), max_var(s.right))


def _check_vars(s: Statement, m: int) -> None:
    top = max_var(s)
    if top > m:
        raise VarOutOfRange(f"statement mentions X{top} but m={m}")


def evaluate(s: Statement, w: int) -> bool:
    """Truth value of ``s`` in world ``w`` (bit ``i`` of ``w`` is ``X_{i+1}``)."""
    if isinstance(s, Var):
        return bool(w >> (s.index - 1) & 1)
    if isinstance(s, Not):
        return not evaluate(s.child, w)
    if isinstance(s, And):
        return evaluate(s.left, w) and evaluate(s.right, w)
    if isinstance(s, Or):
        return evaluate(s.left, w) or evaluate(s.right, w)
    if isinstance(s, Implies):
        return (not evaluate(s.left, w)) or evaluate(s.right, w)
    raise TypeError(f"not a statement: {s!r}")


def _evaluate_all(s: Statement, worlds: np.ndarray) -> np.ndarray:
    if isinstance(s, Var):
        return ((worlds >> (s.index - 1)) & 1).astype(bool)
    if isinstance(s, Not):
        return ~_evaluate_all(s.child, worlds)
    left = _evaluate_all(s.left, worlds)
    right = _evaluate_all(s.right, worlds)
    if isinstance(s, And):
        return left & right
    if isinstance(s, Or):
        return left | right
    return ~left | right


def kernel_of(s: Statement, m: int, cap: int = M_CAP) -> Kernel:
    """Exhaustive truth table of ``s`` over all ``2^m`` worlds."""
    check_cap(m, cap)
    _check_vars(s, m)
    worlds = np.arange(1 << m, dtype=np.int64)
    return Kernel.from_array(m, _evaluate_all(s, worlds))


def entails(a: Statement, b: Statement, m: int) -> bool:
    return kernel_of(a, m).is_subset(kernel_of(b, m))


def equivalent(a: Statement, b: Statement, m: int) -> bool:
    return kernel_of(a, m) == kernel_of(b, m)


def _minterm(w: int, m: int) -> Statement:
    literals = [Var(i) if w >> (i - 1) & 1 else Not(Var(i)) for i in range(1, m + 1)]
    return reduce(And, literals)


def synthesize(k: Kernel) -> Statement:
    """A statement whose kernel is exactly ``k``: the minterm DNF in world order."""
    if k.popcount() == 0:
        return And(Var(1), Not(Var(1)))
    if k.popcount() == k.n_worlds:
        return Or(Var(1), Not(Var(1)))
    return reduce(Or, (_minterm(w, k.m) for w in k.worlds()))
