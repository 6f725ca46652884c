"""Machine-checkable versions of the classification results.

Every claim is checked on finite models: distinctness by an embedded witness,
inclusions, equalities and lemmas by exhaustive search up to a size budget.
A failing inclusion or lemma can only mean a bug here, since these are proved
results; the budget just bounds how much evidence is gathered.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from ..algebra import FiniteGroupoid, VarietySpec, in_variety
from ..search import conditional_identity_check, find_separating_model
from ..terms import SIGMA, Identity, parse_identity, render_identity
from .catalog import E4_SCHEMA, get_variety
from .witnesses import WitnessRecord, reference_witnesses

PASS = "pass"
FAIL = "fail"
INSUFFICIENT = "insufficient-budget"


def _ids(*texts: str) -> tuple[Identity, ...]:
    return tuple(parse_identity(t) for t in texts)


def _v(name_or_spec) -> VarietySpec:
    return name_or_spec if isinstance(name_or_spec, VarietySpec) else get_variety(name_or_spec)


@dataclass
class ClaimResult:
    id: str
    kind: str
    cite: str
    statement: str
    status: str
    detail: str = ""
    table: FiniteGroupoid | None = None
    evidence_size: int | None = None
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass(frozen=True)
class Claim:
    id: str
    cite: str

    kind = "claim"

    def statement(self) -> str:
        raise NotImplementedError

    def check(self, budget: int, deep_budget: int) -> ClaimResult:
        raise NotImplementedError

    def _result(self, status, detail="", table=None, size=None) -> ClaimResult:
        return ClaimResult(self.id, self.kind, self.cite, self.statement(), status, detail, table, size)


@dataclass(frozen=True)
class DistinctnessClaim(Claim):
    """``witness`` lies in ``inside`` but not in ``outside``."""

    inside: str = ""
    outside: str = ""
    witness: str = ""

    kind = "distinct"

    def statement(self):
        return f"{self.inside} not contained in {self.outside} (witness {self.witness})"

    def check(self, budget, deep_budget):
        rec = _witness(self.witness)
        ins = in_variety(rec.table, _v(self.inside))
        out = in_variety(rec.table, _v(self.outside))
        if ins.holds and not out.holds:
            return self._result(PASS, f"fails {render_identity(out.identity, True)} at {out.assignment}",
                                rec.table, rec.table.size)
        why = "not in " + self.inside if not ins.holds else "also in " + self.outside
        return self._result(FAIL, why, rec.table, rec.table.size)


@dataclass(frozen=True)
class InclusionClaim(Claim):
    lower: str = ""
    upper: str = ""

    kind = "inclusion"

    def statement(self):
        return f"{self.lower} contained in {self.upper}"

    def check(self, budget, deep_budget):
        sep = find_separating_model(_v(self.lower), _v(self.upper), budget)
        if sep.found:
            return self._result(FAIL, f"counterexample fails {render_identity(sep.failed, True)}",
                                sep.model, sep.size)
        return self._result(PASS, f"no model of {self.lower} outside {self.upper} up to size {budget}",
                            size=budget)


@dataclass(frozen=True)
class EqualityClaim(Claim):
    members: tuple = ()

    kind = "equality"

    def _names(self):
        return [m if isinstance(m, str) else m.name for m in self.members]

    def statement(self):
        return " = ".join(self._names())

    def check(self, budget, deep_budget):
        specs = [_v(m) for m in self.members]
        for a in specs:
            for b in specs:
                if a is b:
                    continue
                sep = find_separating_model(a, b, budget)
                if sep.found:
                    return self._result(FAIL, f"model of {a.name} outside {b.name}", sep.model, sep.size)
        return self._result(PASS, f"no separating model up to size {budget}", size=budget)


@dataclass(frozen=True)
class LemmaClaim(Claim):
    hypotheses: tuple[Identity, ...] = ()
    conclusions: tuple[Identity, ...] = ()

    kind = "lemma"

    def statement(self):
        hyp = "; ".join(render_identity(i, True) for i in self.hypotheses) or "I"
        con = "; ".join(render_identity(i, True) for i in self.conclusions)
        return f"[{hyp}] implies [{con}]"

    def check(self, budget, deep_budget):
        res = conditional_identity_check(self.hypotheses, self.conclusions, budget)
        if res.holds:
            return self._result(PASS, f"{res.models_checked} models checked up to size {budget}", size=budget)
        return self._result(FAIL, f"fails {render_identity(res.failed, True)}", res.model, res.model.size)


@dataclass(frozen=True)
class SeparationClaim(Claim):
    """A model of ``inside`` outside ``outside`` is found by search, which
    needs models of size ``needs``."""

    inside: str = ""
    outside: str = ""
    needs: int = 4

    kind = "separation"

    def statement(self):
        return f"search finds a model of {self.inside} outside {self.outside}"

    def check(self, budget, deep_budget):
        sep = find_separating_model(_v(self.inside), _v(self.outside), deep_budget)
        if sep.found:
            return self._result(PASS, f"least witness fails {render_identity(sep.failed, True)}",
                                sep.model, sep.size)
        if deep_budget < self.needs:
            return self._result(INSUFFICIENT, f"needs size {self.needs}, deep budget {deep_budget}")
        return self._result(FAIL, f"no model up to size {deep_budget}")


def _witness(name: str) -> WitnessRecord:
    for rec in reference_witnesses():
        if rec.name == name:
            return rec
    raise KeyError(name)


def _spec(name: str, *texts: str) -> VarietySpec:
    return VarietySpec(name, _ids(*texts))


I20 = "x'' = x"
E1 = "(x -> y)' = x -> (0 -> y)"
E2 = "x' -> y = x -> y'"
E3 = "0 -> (x -> y) = 0 -> (y -> x)"
PRIME_COMM = "(x -> y)' = (y -> x)'"

_PERM_NAMES = ["xyz", "xzy", "yxz", "yzx", "zxy", "zyx"]


def _lemma_claims() -> list[Claim]:
    c: list[Claim] = [
        LemmaClaim("lem2.2", "Lemma 2.2", (), _ids("x''' -> y = x' -> y")),
        LemmaClaim("lem2.3", "Lemma 2.3", (), _ids("(x -> y) -> z = ((x -> y) -> z)''",
                                                    "(x -> y)' = (x'' -> y)'")),
        EqualityClaim("lem2.4", "Lemma 2.4", (
            _spec("0'->x=x", "0' -> x = x"), _spec("x''=x", "x'' = x"),
            _spec("(x->x')'=x", "(x -> x')' = x"), _spec("x'->x=x", "x' -> x = x"))),
        LemmaClaim("lem2.6", "Lemma 2.6", _ids(I20), _ids("x' -> 0' = 0 -> x", "0 -> x' = x -> 0'")),
        LemmaClaim("lem2.7", "Lemma 2.7", _ids(I20), _ids(
            "(x -> 0') -> y = (x -> y') -> y",
            "(y -> x) -> y = (0 -> x) -> y",
            "0 -> x = 0 -> (0 -> x)",
            "(0 -> x) -> (0 -> y) = x -> (0 -> y)",
            "x -> y = x -> (x -> y)",
            "0 -> (x -> y) = x -> (0 -> y)",
            "0 -> (x -> y')' = 0 -> (x' -> y)",
            "x -> (y -> x') = y -> x'")),
        LemmaClaim("lem3.1", "Lemma 3.1", _ids(E2), _ids("(x -> y) -> y' = x -> y'")),
        LemmaClaim("lem3.2", "Lemma 3.2", _ids(I20, E1), _ids("x -> y' = x -> (0 -> y)")),
        LemmaClaim("lem3.3", "Lemma 3.3", _ids(I20, E1), _ids("(x -> (y -> z)')' = x -> (y -> (0 -> z))'")),
        LemmaClaim("lem3.4", "Lemma 3.4", _ids(E1, E2), _ids("0 -> (x -> (y -> z)) = 0 -> ((x -> y) -> z)")),
        LemmaClaim("lem3.5", "Lemma 3.5", _ids(PRIME_COMM), _ids("(x -> y) -> z = (y -> x) -> z")),
    ]
    all_sigma = tuple(SIGMA[f"A{j}"] for j in range(1, 15))
    for name, e4 in zip(_PERM_NAMES, E4_SCHEMA):
        c.append(LemmaClaim(f"thm3.6-{name}", "Theorem 3.6", _ids(E1, E2, E3) + (e4,), all_sigma))
    c += [
        LemmaClaim("lem-A5", "Lemma on A5 members", (SIGMA["A5"],), _ids(
            "x' -> y = x -> y'", "(x -> y)' = 0 -> (x -> y)", "x -> (0 -> y) = 0 -> (x -> y)")),
        LemmaClaim("lem-A8", "Lemma on A8 members", (SIGMA["A8"],), _ids(
            "x -> y' = x' -> y'", "x -> y' = 0 -> (y' -> x)")),
        LemmaClaim("lem-A10", "Lemma on A10 members", (SIGMA["A10"],), _ids(
            "(0 -> (x -> y))' = x -> y'", "(y -> x)'' = x -> y'", "(x -> y)' = x -> y'")),
    ]
    for j in (3, 5, 7, 8, 10):
        c.append(LemmaClaim(f"lem-type1-A{j}", "Lemma: A3, A5, A7, A8, A10 members are type 1",
                            (SIGMA[f"A{j}"],), _ids(E1, E2, E3)))
    c += [
        EqualityClaim("thm3.7", "Theorem 3.7", ("A3", "A5", "A7", "A8", "A10")),
        LemmaClaim("lem3.8", "Lemma 3.8", (SIGMA["A13"],), _ids(
            "(x -> y)' = (0 -> x) -> y", "(x -> y)' = x' -> y'", "(x -> y)' = (0 -> y) -> x'",
            "(x -> y)' = (x -> y)''", PRIME_COMM)),
        EqualityClaim("thm3.9", "Theorem 3.9", ("A11", "A12", "A13")),
    ]
    for j in (2, 6, 9):
        c.append(LemmaClaim(f"lem4.1-A{j}", "Lemma 4.1", (SIGMA[f"A{j}"],), _ids(PRIME_COMM)))
        c.append(InclusionClaim(f"lem4.1-A{j}-A11", "Lemma 4.1", f"A{j}", "A11"))
    return c


_MAIN_INCLUSIONS = [
    ("SL", "A3", "Thm 4.2(b)1"), ("A3", "A4", "Thm 4.2(b)1"),
    ("BA", "A4", "Thm 4.2(b)2"), ("A4", "I", "Thm 4.2(b)2"),
    ("A3", "A1", "Thm 4.2(b)3"), ("A1", "I", "Thm 4.2(b)3"),
    ("A3", "A2", "Thm 4.2(b)4"), ("A2", "A11", "Thm 4.2(b)4"),
    ("A3", "A6", "Thm 4.2(b)4"), ("A6", "A11", "Thm 4.2(b)4"),
    ("A3", "A9", "Thm 4.2(b)4"), ("A9", "A11", "Thm 4.2(b)4"),
    ("A11", "A14", "Thm 4.2(b)5"), ("A14", "I", "Thm 4.2(b)5"),
]

# (inside, outside, witness, cite)
_MAIN_DISTINCT = [
    ("A3", "SL", "2z", "Thm 4.2(b)1"), ("A4", "A3", "2b", "Thm 4.2(b)1"),
    ("A4", "BA", "2s", "Thm 4.2(b)2"), ("I", "A4", "w3a", "Thm 4.2(b)2"),
    ("I", "A1", "2b", "Thm 4.2(b)3"), ("A1", "A3", "w3b", "Thm 4.2(b)3"),
    ("A2", "A3", "w3c", "Thm 4.2(b)4"), ("A11", "A2", "w3a", "Thm 4.2(b)4"),
    ("A6", "A3", "w4a", "Thm 4.2(b)4"), ("A11", "A6", "w3a", "Thm 4.2(b)4"),
    ("A9", "A3", "w4a", "Thm 4.2(b)4"), ("A11", "A9", "w3a", "Thm 4.2(b)4"),
    ("I", "A14", "2b", "Thm 4.2(b)5"), ("A14", "A11", "w4b", "Thm 4.2(b)5"),
]

_PROP57_GROUP = {4: "S", 14: "S14"}


def _main_claims() -> list[Claim]:
    c: list[Claim] = []
    for lo, up, cite in _MAIN_INCLUSIONS:
        c.append(InclusionClaim(f"thm4.2-incl-{lo}-{up}", cite, lo, up))
    for j in range(1, 15):
        if j != 3:
            c.append(InclusionClaim(f"thm4.2-A3-in-A{j}", "Thm 4.2 proof (A3 in every Aj)", "A3", f"A{j}"))
    for ins, out, wit, cite in _MAIN_DISTINCT:
        c.append(DistinctnessClaim(f"thm4.2-sep-{ins}-{out}", cite, ins, out, wit))
    return c


def _symmetric_claims() -> list[Claim]:
    c: list[Claim] = [
        InclusionClaim("lem5.1", "Lemma 5.1", "S", "A4"),
        InclusionClaim("lem5.2", "Lemma 5.2", _spec("MC&I10", "x & y = y & x", "x' = x"), "SL"),
        LemmaClaim("lem5.3", "Lemma 5.3", _ids("x'' = x", "x & y = y & x", "x -> x = x"), _ids("x' = x")),
        EqualityClaim("lem5.4", "Lemma 5.4", ("S11", "SL")),
        InclusionClaim("lem5.5", "Lemma 5.5", "S1", "SL"),
    ]
    for i in range(1, 15):
        group = _PROP57_GROUP.get(i, "SL")
        if group != f"S{i}":
            c.append(EqualityClaim(f"prop5.7-S{i}", "Proposition 5.7", (f"S{i}", group)))
    c += [
        InclusionClaim("thm5.8-SL-S14", "Thm 5.8(b)1", "SL", "S14"),
        InclusionClaim("thm5.8-S14-S", "Thm 5.8(b)1", "S14", "S"),
        InclusionClaim("thm5.8-BA-S", "Thm 4.2(b)2 proof (BA in S)", "BA", "S"),
        DistinctnessClaim("thm5.8-sep-S14-SL", "Thm 5.8(b)1", "S14", "SL", "w4b"),
        DistinctnessClaim("thm5.8-sep-S-S14", "Thm 5.8(b)1", "S", "S14", "2b"),
        DistinctnessClaim("thm5.8-sep-BA-S14", "Thm 5.8(b)2", "BA", "S14", "2b"),
    ]
    return c


def _deep_claims() -> list[Claim]:
    return [
        SeparationClaim("deep-A6-A3", "Thm 4.2(b)4", "A6", "A3", 4),
        SeparationClaim("deep-A9-A3", "Thm 4.2(b)4", "A9", "A3", 4),
        SeparationClaim("deep-A14-A11", "Thm 4.2(b)5", "A14", "A11", 4),
        SeparationClaim("deep-S14-SL", "Thm 5.8(b)1", "S14", "SL", 4),
    ]


def all_claims() -> list[Claim]:
    return _lemma_claims() + _main_claims() + _symmetric_claims() + _deep_claims()


@dataclass
class ClaimLedger:
    results: list[ClaimResult] = field(default_factory=list)
    budget: int = 3
    deep_budget: int = 4

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def by_id(self, claim_id: str) -> ClaimResult:
        for r in self.results:
            if r.id == claim_id:
                return r
        raise KeyError(claim_id)


def _check_one(args) -> ClaimResult:
    claim, budget, deep_budget = args
    start = time.perf_counter()
    res = claim.check(budget, deep_budget)
    res.elapsed = time.perf_counter() - start
    return res


def verify_claims(budget: int = 3, deep_budget: int = 4, claims: Sequence[Claim] | None = None,
                  jobs: int = 1) -> ClaimLedger:
    if budget < 2:
        raise ValueError("budget must be at least 2")
    claims = list(all_claims() if claims is None else claims)
    tasks = [(c, budget, deep_budget) for c in claims]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_one, tasks))
    else:
        results = [_check_one(t) for t in tasks]
    return ClaimLedger(results, budget, deep_budget)
