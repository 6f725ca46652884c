import sys

import pytest
from hypothesis import strategies as st

from zlab.algebra import FiniteGroupoid
from zlab.terms import ZERO, Arrow, Var

VARS = ("x", "y", "z", "u")


def terms(names=VARS, max_leaves=12):
    leaves = st.one_of(st.sampled_from([Var(n) for n in names]), st.just(ZERO))
    return st.recursive(leaves, lambda sub: st.builds(Arrow, sub, sub), max_leaves=max_leaves)


@st.composite
def groupoids(draw, min_size=1, max_size=4):
    n = draw(st.integers(min_size, max_size))
    flat = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    return FiniteGroupoid.from_flat(n, tuple(flat))


@pytest.fixture
def table_file(tmp_path):
    def write(text, name="g.tbl"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
