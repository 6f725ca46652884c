"""Inclusion poset of a set of varieties, from finite models.

Relations are computed over a pool of models: every I-zroupoid up to the size
budget (one per isomorphism class) plus the embedded witness tables.  ``V`` is
reported as contained in ``W`` when every pool model of ``V`` is a model of
``W``; otherwise the least such model is the witness.  Because all pairs are
judged on the same pool the computed relation is a preorder.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..algebra import FiniteGroupoid, canonical_form, in_variety
from ..search import izroupoids
from .catalog import MAIN_NODES, SYMMETRIC_NODES, get_variety
from .witnesses import WitnessRecord, all_witnesses

SUBSET = "subset"            # contained, as far as the pool can tell
NOT_SUBSET = "not-subset"    # a witness is on record
UNKNOWN = "unknown"

# Inclusions and non-inclusions asserted by the classification results.
# (lower, upper, contained?, cite)
REFERENCE_RELATIONS: list[tuple[str, str, bool, str]] = [
    ("T", "SL", True, "trivial"), ("T", "BA", True, "trivial"),
    ("SL", "A3", True, "Thm 4.2(b)1"), ("A3", "A4", True, "Thm 4.2(b)1"),
    ("A3", "SL", False, "Thm 4.2(b)1"), ("A4", "A3", False, "Thm 4.2(b)1"),
    ("BA", "A4", True, "Thm 4.2(b)2"), ("A4", "I", True, "Thm 4.2(b)2"),
    ("A4", "BA", False, "Thm 4.2(b)2"), ("I", "A4", False, "Thm 4.2(b)2"),
    ("A3", "A1", True, "Thm 4.2(b)3"), ("A1", "I", True, "Thm 4.2(b)3"),
    ("A1", "A3", False, "Thm 4.2(b)3"), ("I", "A1", False, "Thm 4.2(b)3"),
    ("A3", "A2", True, "Thm 4.2(b)4"), ("A2", "A11", True, "Thm 4.2(b)4"),
    ("A3", "A6", True, "Thm 4.2(b)4"), ("A6", "A11", True, "Thm 4.2(b)4"),
    ("A3", "A9", True, "Thm 4.2(b)4"), ("A9", "A11", True, "Thm 4.2(b)4"),
    ("A2", "A3", False, "Thm 4.2(b)4"), ("A11", "A2", False, "Thm 4.2(b)4"),
    ("A6", "A3", False, "Thm 4.2(b)4"), ("A11", "A6", False, "Thm 4.2(b)4"),
    ("A9", "A3", False, "Thm 4.2(b)4"), ("A11", "A9", False, "Thm 4.2(b)4"),
    ("A11", "A14", True, "Thm 4.2(b)5"), ("A14", "I", True, "Thm 4.2(b)5"),
    ("A14", "A11", False, "Thm 4.2(b)5"), ("I", "A14", False, "Thm 4.2(b)5"),
    ("SL", "S14", True, "Thm 5.8(b)1"), ("S14", "S", True, "Thm 5.8(b)1"),
    ("S14", "SL", False, "Thm 5.8(b)1"), ("S", "S14", False, "Thm 5.8(b)1"),
    ("BA", "S14", False, "Thm 5.8(b)2"), ("BA", "S", True, "Thm 4.2(b)2 proof"),
]

# Covering pairs of the reference Hasse diagrams.
DRAWN_EDGES: dict[frozenset, set[tuple[str, str]]] = {
    frozenset(MAIN_NODES): {
        ("T", "SL"), ("T", "BA"), ("SL", "A3"), ("BA", "A4"),
        ("A3", "A1"), ("A3", "A2"), ("A3", "A4"), ("A3", "A6"), ("A3", "A9"),
        ("A2", "A11"), ("A6", "A11"), ("A9", "A11"), ("A11", "A14"),
        ("A1", "I"), ("A4", "I"), ("A14", "I"),
    },
    frozenset(SYMMETRIC_NODES): {("T", "SL"), ("T", "BA"), ("SL", "S14"), ("S14", "S"), ("BA", "S")},
}


@dataclass
class PoolModel:
    table: FiniteGroupoid
    source: str            # "search" or a witness record name


@dataclass
class PosetReport:
    nodes: list[str]
    budget: int
    relation: dict[str, dict[str, str]]
    witnesses: dict[tuple[str, str], PoolModel]
    hasse_edges: list[tuple[str, str]]
    equivalent: list[list[str]]
    discrepancies: list[dict]
    discovered: list[dict]
    drawn_edges: list[tuple[str, str]] | None = None
    pool_size: int = 0

    def subset(self, v: str, w: str) -> bool:
        return self.relation[v][w] == SUBSET

    @property
    def matches_drawing(self) -> bool | None:
        if self.drawn_edges is None:
            return None
        return set(self.hasse_edges) == set(self.drawn_edges)

    def edge_differences(self) -> dict[str, list[tuple[str, str]]]:
        drawn = set(self.drawn_edges or ())
        mine = set(self.hasse_edges)
        return {"missing": sorted(drawn - mine), "extra": sorted(mine - drawn)}


def model_pool(budget: int, witnesses: Sequence[WitnessRecord] | None = None,
               jobs: int = 1) -> list[PoolModel]:
    pool: list[PoolModel] = []
    seen: set[FiniteGroupoid] = set()
    for n in range(1, budget + 1):
        for g in izroupoids(n, up_to_iso=True, jobs=jobs):
            seen.add(g)
            pool.append(PoolModel(g, "search"))
    for rec in all_witnesses() if witnesses is None else witnesses:
        canon = canonical_form(rec.table)
        if canon not in seen:
            seen.add(canon)
            pool.append(PoolModel(rec.table, rec.name))
    pool.sort(key=lambda p: (p.table.size, canonical_form(p.table)))
    return pool


def _expected(nodes: Sequence[str]) -> tuple[set, set]:
    """Closure of the asserted relations: (contained pairs, non-contained pairs)."""
    universe = set(nodes) | {v for r in REFERENCE_RELATIONS for v in r[:2]}
    sub = {(v, v) for v in universe}
    sub |= {(a, b) for a, b, ok, _ in REFERENCE_RELATIONS if ok}
    for v in universe:
        sub.add(("T", v))
        sub.add((v, "I"))
    changed = True
    while changed:
        changed = False
        for a, b in list(sub):
            for c, d in list(sub):
                if b == c and (a, d) not in sub:
                    sub.add((a, d))
                    changed = True
    base_not = {(a, b) for a, b, ok, _ in REFERENCE_RELATIONS if not ok}
    # a not in b, a <= a2, b2 <= b  ==>  a2 not in b2
    notsub = {(a2, b2) for a, b in base_not for a2 in universe for b2 in universe
              if (a, a2) in sub and (b2, b) in sub}
    return sub, notsub


def build_poset(nodes: Sequence[str], budget: int = 3,
                witnesses: Sequence[WitnessRecord] | None = None, jobs: int = 1) -> PosetReport:
    nodes = list(dict.fromkeys(nodes))
    specs = {v: get_variety(v) for v in nodes}
    pool = model_pool(budget, witnesses, jobs)
    members = {v: [in_variety(p.table, s).holds for p in pool] for v, s in specs.items()}

    relation: dict[str, dict[str, str]] = {v: {} for v in nodes}
    witness_of: dict[tuple[str, str], PoolModel] = {}
    for v in nodes:
        for w in nodes:
            sep = next((p for p, a, b in zip(pool, members[v], members[w]) if a and not b), None)
            if sep is None:
                relation[v][w] = SUBSET
            else:
                relation[v][w] = NOT_SUBSET
                witness_of[(v, w)] = sep

    def strict(a, b):
        return relation[a][b] == SUBSET and relation[b][a] == NOT_SUBSET

    edges = [(a, b) for a in nodes for b in nodes if strict(a, b)
             and not any(strict(a, c) and strict(c, b) for c in nodes)]

    equivalent: list[list[str]] = []
    placed: set[str] = set()
    for v in nodes:
        if v in placed:
            continue
        group = [w for w in nodes if relation[v][w] == SUBSET and relation[w][v] == SUBSET]
        placed.update(group)
        if len(group) > 1:
            equivalent.append(group)

    exp_sub, exp_not = _expected(nodes)
    discrepancies, discovered = [], []
    for v in nodes:
        for w in nodes:
            if v == w:
                continue
            got = relation[v][w]
            if (v, w) in exp_sub and got != SUBSET:
                discrepancies.append({"lower": v, "upper": w, "expected": SUBSET, "computed": got,
                                      "witness": witness_of[(v, w)].source})
            elif (v, w) in exp_not and got != NOT_SUBSET:
                discrepancies.append({"lower": v, "upper": w, "expected": NOT_SUBSET, "computed": got,
                                      "witness": None})
            elif (v, w) not in exp_sub and (v, w) not in exp_not:
                entry = {"lower": v, "upper": w, "computed": got}
                if got == NOT_SUBSET:
                    entry["witness"] = witness_of[(v, w)].source
                discovered.append(entry)

    drawn = DRAWN_EDGES.get(frozenset(nodes))
    return PosetReport(
        nodes, budget, relation, witness_of, edges, equivalent, discrepancies, discovered,
        sorted(drawn) if drawn is not None else None, len(pool),
    )


def dot(report: PosetReport) -> str:
    lines = ["digraph hasse {", "  rankdir=BT;"]
    lines += [f'  "{a}" -> "{b}";' for a, b in report.hasse_edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
