"""Backtracking enumeration of finite models of identity sets.

The kernel works on a flat ``(n+1) x (n+1)`` table in which the extra value
``n`` stands for "not yet assigned".  Row ``n`` and column ``n`` are filled with
``n`` so an unknown cell anywhere in a term makes the whole term evaluate to
``n``.  A ground instance is therefore decided exactly when both of its sides
evaluate below ``n``.

Each constraint keeps a list of still-undecided instances, and the list only
shrinks along a branch.  Once an instance is decided it is either violated
(backtrack) or satisfied for good.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .algebra import (
    I_AXIOMS,
    FiniteGroupoid,
    VarietySpec,
    canonical_flat,
    in_variety,
    satisfies,
    term_source,
)
from .terms import Identity, Term, canonical_identity

DEFAULT_MAX_SIZE = 6
# cells fixed before the search tree is split into independent subproblems
SPLIT_DEPTH = 2


class SizeGuardError(ValueError):
    pass


def size_limit() -> int:
    value = os.environ.get("ZLAB_MAX_SIZE")
    if value is None:
        return DEFAULT_MAX_SIZE
    try:
        return int(value)
    except ValueError:
        raise SizeGuardError(f"ZLAB_MAX_SIZE must be an integer, got {value!r}") from None


def check_size(n: int, max_size: int | None = None):
    limit = size_limit() if max_size is None else max_size
    if n > limit:
        raise SizeGuardError(
            f"size {n} exceeds the guard {limit}; set ZLAB_MAX_SIZE to override"
        )


def _identity_key(ident: Identity):
    try:
        return canonical_identity(ident)
    except ValueError:
        return ident


@dataclass(frozen=True)
class SearchProblem:
    size: int
    must_satisfy: tuple[Identity, ...] = ()
    must_fail: tuple[Identity, ...] = ()
    in_I: bool = True
    up_to_iso: bool = False
    limit: int | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if self.limit is not None and self.limit < 0:
            raise ValueError("limit must be non-negative")
        sat = {_identity_key(i) for i in self.must_satisfy}
        clash = [i for i in self.must_fail if _identity_key(i) in sat]
        if clash:
            raise ValueError(f"identity both required and forbidden: {clash[0]!r}")

    @property
    def constraints(self) -> tuple[Identity, ...]:
        base = I_AXIOMS if self.in_I else ()
        return base + tuple(self.must_satisfy)


@dataclass
class SearchStats:
    nodes: int = 0
    tables_tested: int = 0
    seconds: float = 0.0


@dataclass
class SearchOutcome:
    models: list[FiniteGroupoid]
    exhausted: bool
    stats: SearchStats = field(default_factory=SearchStats)


@lru_cache(maxsize=None)
def _pending_checker(lhs: Term, rhs: Term, n: int):
    ident = Identity(lhs, rhs)
    names = ident.variables
    env = {name: f"v_{name}" for name in names}
    tup = "(" + "".join(f"v_{name}, " for name in names) + ")"
    m = n + 1
    src = f"""
def check(T, pending):
    out = []
    for {tup} in pending:
        a = {term_source(lhs, m, env=env)}
        if a == {n}:
            out.append({tup})
            continue
        b = {term_source(rhs, m, env=env)}
        if b == {n}:
            out.append({tup})
            continue
        if a != b:
            return None
    return out
"""
    ns: dict = {}
    exec(src, ns)
    instances = list(itertools.product(range(n), repeat=len(names)))
    return ns["check"], instances


def cell_order(n: int) -> list[tuple[int, int]]:
    """Column 0 first (it holds every x'), then the remaining cells row-major."""
    return [(i, 0) for i in range(n)] + [(i, j) for i in range(n) for j in range(1, n)]


def _run_subproblem(problem: SearchProblem, prefix: tuple[int, ...], cap: int | None):
    """Enumerate the subtree below a fixed assignment of the first cells.

    Returns (models as flat tuples in DFS order, nodes, complete tables seen).
    At most ``cap`` models are collected.
    """
    n = problem.size
    m = n + 1
    T = [n] * (m * m)
    order = [i * m + j for i, j in cell_order(n)]
    for pos, value in zip(order, prefix):
        T[pos] = value
    checkers = [_pending_checker(c.lhs, c.rhs, n) for c in problem.constraints]
    check_fns = [c[0] for c in checkers]
    fail_ids = problem.must_fail
    up_to_iso = problem.up_to_iso
    found: list[tuple[int, ...]] = []
    nodes = 0
    complete = 0
    depth_end = len(order)

    def rec(depth: int, pending: list) -> bool:
        # returns True when the cap is reached
        nonlocal nodes, complete
        nodes += 1
        nxt = []
        for fn, pend in zip(check_fns, pending):
            rest = fn(T, pend)
            if rest is None:
                return False
            nxt.append(rest)
        if depth == depth_end:
            complete += 1
            flat = tuple(T[i * m + j] for i in range(n) for j in range(n))
            if fail_ids:
                g = FiniteGroupoid.from_flat(n, flat)
                if any(satisfies(g, ident).holds for ident in fail_ids):
                    return False
            if up_to_iso and canonical_flat(n, flat) != flat:
                return False
            found.append(flat)
            return cap is not None and len(found) >= cap
        pos = order[depth]
        for value in range(n):
            T[pos] = value
            if rec(depth + 1, nxt):
                T[pos] = n
                return True
        T[pos] = n
        return False

    if cap is None or cap > 0:
        rec(len(prefix), [c[1] for c in checkers])
    return found, nodes, complete


def _split(n: int) -> list[tuple[int, ...]]:
    depth = min(SPLIT_DEPTH, n * n)
    return list(itertools.product(range(n), repeat=depth))


def _subproblem_task(args):
    return _run_subproblem(*args)


def enumerate_models(problem: SearchProblem, jobs: int = 1, max_size: int | None = None) -> SearchOutcome:
    """All size-n tables satisfying the constraints, sorted by table.

    ``must_fail`` identities must each fail somewhere in the returned models.
    With ``up_to_iso`` only canonical representatives are returned.  With a
    ``limit`` the first ``limit`` models in search order are kept (then sorted)
    and ``exhausted`` tells whether there were no more.
    """
    check_size(problem.size, max_size)
    start = time.perf_counter()
    prefixes = _split(problem.size)
    cap = None if problem.limit is None else problem.limit + 1
    results = []
    if jobs > 1 and len(prefixes) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_subproblem_task, [(problem, p, cap) for p in prefixes]))
    else:
        remaining = cap
        for p in prefixes:
            res = _run_subproblem(problem, p, remaining)
            results.append(res)
            if remaining is not None:
                remaining -= len(res[0])
                if remaining <= 0:
                    break
    stats = SearchStats()
    flats: list[tuple[int, ...]] = []
    for found, nodes, complete in results:
        flats.extend(found)
        stats.nodes += nodes
        stats.tables_tested += complete
    exhausted = True
    if problem.limit is not None and len(flats) > problem.limit:
        flats = flats[: problem.limit]
        exhausted = False
    models = sorted(FiniteGroupoid.from_flat(problem.size, f) for f in flats)
    stats.seconds = time.perf_counter() - start
    return SearchOutcome(models, exhausted, stats)


_MODEL_CACHE: dict[SearchProblem, tuple[FiniteGroupoid, ...]] = {}


def cached_models(problem: SearchProblem, jobs: int = 1, max_size: int | None = None) -> tuple[FiniteGroupoid, ...]:
    """Memoised model list; only for problems without a limit."""
    if problem.limit is not None:
        return tuple(enumerate_models(problem, jobs, max_size).models)
    hit = _MODEL_CACHE.get(problem)
    if hit is None:
        hit = tuple(enumerate_models(problem, jobs, max_size).models)
        _MODEL_CACHE[problem] = hit
    return hit


def variety_problem(size: int, v: VarietySpec, up_to_iso: bool = True, **kw) -> SearchProblem:
    return SearchProblem(size, tuple(v.identities), in_I=v.relative_to_I, up_to_iso=up_to_iso, **kw)


def count_models(size: int, v: VarietySpec, up_to_iso: bool = False, jobs: int = 1,
                 max_size: int | None = None) -> int:
    return len(enumerate_models(variety_problem(size, v, up_to_iso), jobs, max_size).models)


@dataclass
class Separation:
    """Result of looking for a model in ``inside`` but not in ``outside``."""

    inside: str
    outside: str
    max_size: int
    model: FiniteGroupoid | None = None
    failed: Identity | None = None
    exhausted: bool = True

    @property
    def found(self) -> bool:
        return self.model is not None

    @property
    def size(self) -> int | None:
        return None if self.model is None else self.model.size


def find_separating_model(v: VarietySpec, w: VarietySpec, max_size: int, jobs: int = 1,
                          guard: int | None = None) -> Separation:
    """Smallest model of ``v`` outside ``w``, least canonical table first."""
    for n in range(1, max_size + 1):
        for g in cached_models(variety_problem(n, v), jobs, guard):
            rep = in_variety(g, w)
            if not rep.holds:
                return Separation(v.name, w.name, max_size, g, rep.identity, True)
    return Separation(v.name, w.name, max_size)


@dataclass
class ConditionalCheck:
    holds: bool
    max_size: int
    model: FiniteGroupoid | None = None
    failed: Identity | None = None
    models_checked: int = 0


def conditional_identity_check(hypotheses: Sequence[Identity], conclusions: Sequence[Identity],
                               max_size: int, jobs: int = 1, in_I: bool = True) -> ConditionalCheck:
    """Check that every I-zroupoid of size <= max_size satisfying the hypotheses
    satisfies the conclusions.  Models are taken up to isomorphism, which
    is enough since satisfaction is invariant under it."""
    checked = 0
    for n in range(1, max_size + 1):
        problem = SearchProblem(n, tuple(hypotheses), in_I=in_I, up_to_iso=True)
        for g in cached_models(problem, jobs):
            checked += 1
            for ident in conclusions:
                if not satisfies(g, ident).holds:
                    return ConditionalCheck(False, max_size, g, ident, checked)
    return ConditionalCheck(True, max_size, models_checked=checked)


def izroupoids(size: int, up_to_iso: bool = True, jobs: int = 1) -> list[FiniteGroupoid]:
    return list(cached_models(SearchProblem(size, up_to_iso=up_to_iso), jobs))


def models_up_to(max_size: int, up_to_iso: bool = True, jobs: int = 1) -> list[FiniteGroupoid]:
    out: list[FiniteGroupoid] = []
    for n in range(1, max_size + 1):
        out.extend(izroupoids(n, up_to_iso, jobs))
    return out


def separations_in(models: Iterable[FiniteGroupoid], v: VarietySpec, w: VarietySpec):
    return [g for g in models if in_variety(g, v).holds and not in_variety(g, w).holds]
