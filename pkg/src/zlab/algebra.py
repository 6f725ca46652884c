"""Finite zroupoids given by Cayley tables, and satisfaction of identities.

Element 0 of every table is the constant 0 of the language.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .terms import Arrow, Identity, Term, Var, Zero, parse_identity


@dataclass(frozen=True, order=True)
class FiniteGroupoid:
    """A Cayley table; ``table[i][j]`` is ``i -> j``.

    Ordering compares (size, rows) so a sorted list of same-size tables is in
    row-major lexicographic order.
    """

    size: int
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ValueError("size must be positive")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError(f"table must be {n}x{n}")
        for row in self.table:
            for e in row:
                if not 0 <= e < n:
                    raise ValueError(f"entry {e} out of range [0, {n})")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "FiniteGroupoid":
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        return cls(len(rows), rows)

    @classmethod
    def from_flat(cls, n: int, flat: Sequence[int]) -> "FiniteGroupoid":
        return cls(n, tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))

    @cached_property
    def flat(self) -> tuple[int, ...]:
        return tuple(e for row in self.table for e in row)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def relabel(self, perm: Sequence[int]) -> "FiniteGroupoid":
        """Image under the bijection ``i -> perm[i]``."""
        n = self.size
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[self.table[a][b]]
        return FiniteGroupoid.from_rows(new)

    def __str__(self):
        return format_table(self).rstrip("\n")


ZERO_ALGEBRA = FiniteGroupoid(1, ((0,),))


Assignment = dict[str, int]


@dataclass
class SatisfactionReport:
    holds: bool
    assignment: Assignment | None = None
    lhs_value: int | None = None
    rhs_value: int | None = None
    identity: Identity | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class VarietySpec:
    """A named equational class.  With ``relative_to_I`` membership also
    requires the implication-zroupoid axioms."""

    name: str
    identities: tuple[Identity, ...] = field(default=())
    relative_to_I: bool = True

    def __post_init__(self):
        if not self.identities and self.name not in ("I", "T"):
            raise ValueError(f"variety {self.name!r} has no identities")

    @classmethod
    def of(cls, name: str, *texts: str, relative_to_I: bool = True) -> "VarietySpec":
        return cls(name, tuple(parse_identity(t) for t in texts), relative_to_I)

    def meet(self, other: "VarietySpec", name: str | None = None) -> "VarietySpec":
        idents = list(self.identities)
        idents += [i for i in other.identities if i not in idents]
        return VarietySpec(
            name or f"{self.name}&{other.name}",
            tuple(idents),
            self.relative_to_I or other.relative_to_I,
        )


AXIOM_I = parse_identity("(x -> y) -> z = ((z' -> x) -> (y -> z)')'")
AXIOM_I0 = parse_identity("0'' = 0")
I_AXIOMS = (AXIOM_I0, AXIOM_I)


# --------------------------------------------------------------------------
# evaluation

def evaluate(t: Term, g: FiniteGroupoid, assignment: Assignment) -> int:
    if isinstance(t, Var):
        try:
            return assignment[t.name]
        except KeyError:
            raise KeyError(f"unassigned variable {t.name!r}") from None
    if isinstance(t, Zero):
        return 0
    return g.table[evaluate(t.left, g, assignment)][evaluate(t.right, g, assignment)]


def term_source(t: Term, width: int, table: str = "T", env: dict[str, str] | None = None) -> str:
    """Python expression evaluating ``t`` over a flat table of row width ``width``."""
    if isinstance(t, Var):
        return env[t.name] if env else t.name
    if isinstance(t, Zero):
        return "0"
    return (f"{table}[{term_source(t.left, width, table, env)}*{width}"
            f"+{term_source(t.right, width, table, env)}]")


@lru_cache(maxsize=None)
def _compiled_checker(lhs: Term, rhs: Term, n: int):
    # returns a function T -> None (holds) or (values, lhs, rhs) of the first failure;
    # keyed on the oriented pair since Identity equality ignores orientation
    ident = Identity(lhs, rhs)
    names = ident.variables
    lines = ["def check(T):"]
    indent = "    "
    for k, name in enumerate(names):
        lines.append(f"{indent * (k + 1)}for v_{name} in range({n}):")
    env = {name: f"v_{name}" for name in names}
    body = indent * (len(names) + 1)
    lines.append(f"{body}a = {term_source(ident.lhs, n, env=env)}")
    lines.append(f"{body}b = {term_source(ident.rhs, n, env=env)}")
    tup = "(" + "".join(f"v_{name}, " for name in names) + ")"
    lines.append(f"{body}if a != b: return {tup}, a, b")
    lines.append(f"{indent}return None")
    ns: dict = {}
    exec("\n".join(lines), ns)
    return ns["check"]


def satisfies(g: FiniteGroupoid, ident: Identity) -> SatisfactionReport:
    """Check ``ident`` under all assignments, in lexicographic order over the
    alphabetically sorted variables; report the first failure."""
    fail = _compiled_checker(ident.lhs, ident.rhs, g.size)(g.flat)
    if fail is None:
        return SatisfactionReport(True)
    values, a, b = fail
    return SatisfactionReport(False, dict(zip(ident.variables, values)), a, b, ident)


def satisfies_all(g: FiniteGroupoid, identities: Iterable[Identity]) -> SatisfactionReport:
    for ident in identities:
        rep = satisfies(g, ident)
        if not rep.holds:
            return rep
    return SatisfactionReport(True)


def is_izroupoid(g: FiniteGroupoid) -> SatisfactionReport:
    return satisfies_all(g, I_AXIOMS)


def in_variety(g: FiniteGroupoid, v: VarietySpec) -> SatisfactionReport:
    if v.relative_to_I:
        rep = is_izroupoid(g)
        if not rep.holds:
            return rep
    return satisfies_all(g, v.identities)


# --------------------------------------------------------------------------
# isomorphism

@lru_cache(maxsize=None)
def zero_fixing_permutations(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple((0,) + p for p in itertools.permutations(range(1, n)))


def canonical_flat(n: int, flat: Sequence[int]) -> tuple[int, ...]:
    best = None
    for perm in zero_fixing_permutations(n):
        new = [0] * (n * n)
        for a in range(n):
            pa = perm[a] * n
            row = a * n
            for b in range(n):
                new[pa + perm[b]] = perm[flat[row + b]]
        cand = tuple(new)
        if best is None or cand < best:
            best = cand
    return best


def canonical_form(g: FiniteGroupoid) -> FiniteGroupoid:
    """Least table, in row-major order, among all relabelings fixing 0."""
    return FiniteGroupoid.from_flat(g.size, canonical_flat(g.size, g.flat))


def isomorphic(g1: FiniteGroupoid, g2: FiniteGroupoid) -> bool:
    return g1.size == g2.size and canonical_form(g1) == canonical_form(g2)


# --------------------------------------------------------------------------
# Cayley-table files

class TableFormatError(ValueError):
    pass


def parse_table(text: str) -> FiniteGroupoid:
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append(line)
    if not lines:
        raise TableFormatError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise TableFormatError(f"bad size line {lines[0]!r}") from None
    if n < 1:
        raise TableFormatError("size must be positive")
    rows = lines[1:]
    if len(rows) != n:
        raise TableFormatError(f"expected {n} rows, found {len(rows)}")
    table = []
    for i, line in enumerate(rows):
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise TableFormatError(f"row {i}: non-integer entry") from None
        if len(row) != n:
            raise TableFormatError(f"row {i}: expected {n} entries, found {len(row)}")
        for e in row:
            if not 0 <= e < n:
                raise TableFormatError(f"row {i}: entry {e} out of range [0, {n})")
        table.append(row)
    return FiniteGroupoid.from_rows(table)


def format_table(g: FiniteGroupoid) -> str:
    out = [str(g.size)]
    out += [" ".join(str(e) for e in row) for row in g.table]
    return "\n".join(out) + "\n"


def load_table(path: str | Path) -> FiniteGroupoid:
    return parse_table(Path(path).read_text())
