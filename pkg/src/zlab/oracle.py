"""Naive brute force over every n x n table, vectorised with numpy.

Shares nothing with the backtracking kernel or the compiled checkers: terms
are interpreted directly as numpy gathers and isomorphism classes are formed
from explicit orbits.  Intended for n <= 3 (3**9 = 19683 tables).
"""

from __future__ import annotations

import itertools

import numpy as np

from .algebra import I_AXIOMS, FiniteGroupoid
from .terms import Arrow, Identity, Term, Var, Zero


def all_tables(n: int) -> np.ndarray:
    """Every table as a row of a (n**(n*n), n*n) array, in lexicographic order."""
    cells = n * n
    codes = np.arange(n ** cells, dtype=np.int64)
    out = np.empty((len(codes), cells), dtype=np.int64)
    for c in range(cells):
        out[:, c] = (codes // n ** (cells - 1 - c)) % n
    return out


def _eval(t: Term, tables: np.ndarray, n: int, env: dict[str, int]) -> np.ndarray:
    rows = np.arange(len(tables))
    if isinstance(t, Var):
        return np.full(len(tables), env[t.name], dtype=np.int64)
    if isinstance(t, Zero):
        return np.zeros(len(tables), dtype=np.int64)
    a = _eval(t.left, tables, n, env)
    b = _eval(t.right, tables, n, env)
    return tables[rows, a * n + b]


def holds_mask(tables: np.ndarray, n: int, ident: Identity) -> np.ndarray:
    names = ident.variables
    ok = np.ones(len(tables), dtype=bool)
    for values in itertools.product(range(n), repeat=len(names)):
        env = dict(zip(names, values))
        ok &= _eval(ident.lhs, tables, n, env) == _eval(ident.rhs, tables, n, env)
    return ok


def naive_models(n: int, must_satisfy=(), must_fail=(), in_I: bool = True) -> list[FiniteGroupoid]:
    tables = all_tables(n)
    ok = np.ones(len(tables), dtype=bool)
    for ident in (I_AXIOMS if in_I else ()) + tuple(must_satisfy):
        ok &= holds_mask(tables, n, ident)
    for ident in must_fail:
        ok &= ~holds_mask(tables, n, ident)
    return [FiniteGroupoid.from_flat(n, tuple(int(e) for e in row)) for row in tables[ok]]


def orbit(g: FiniteGroupoid) -> frozenset[FiniteGroupoid]:
    n = g.size
    out = set()
    for p in itertools.permutations(range(1, n)):
        out.add(g.relabel((0,) + p))
    return frozenset(out)


def iso_classes(models) -> list[frozenset[FiniteGroupoid]]:
    seen: dict[frozenset, None] = {}
    for g in models:
        seen.setdefault(orbit(g), None)
    return list(seen)


def naive_representatives(n: int, **kw) -> list[FiniteGroupoid]:
    """Least member of each isomorphism class among the naive models."""
    return sorted(min(cls) for cls in iso_classes(naive_models(n, **kw)))
