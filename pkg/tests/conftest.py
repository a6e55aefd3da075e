from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import strategies as st

from semlogic import logic
from semlogic.kernels import Kernel


def statements(m: int, max_leaves: int = 12):
    leaf = st.integers(1, m).map(logic.Var)

    def extend(children):
        return st.one_of(
            children.map(logic.Not),
            st.tuples(children, children).map(lambda t: logic.And(*t)),
            st.tuples(children, children).map(lambda t: logic.Or(*t)),
            st.tuples(children, children).map(lambda t: logic.Implies(*t)),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


@st.composite
def statement_with_m(draw, max_m: int = 6):
    m = draw(st.integers(1, max_m))
    return m, draw(statements(m))


@st.composite
def kernels(draw, max_m: int = 8):
    m = draw(st.integers(1, max_m))
    bits = draw(st.integers(0, (1 << (1 << m)) - 1))
    return Kernel(m, bits)


def random_kernel(rng: np.random.Generator, m: int, density: float | None = None) -> Kernel:
    density = rng.random() if density is None else density
    return Kernel.from_array(m, rng.random(1 << m) < density)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20241016)


@pytest.fixture
def pyrng() -> random.Random:
    return random.Random(7)


# one PASS/FAIL line per acceptance criterion, echoed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
