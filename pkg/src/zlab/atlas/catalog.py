"""Named varieties of implication zroupoids."""

from __future__ import annotations

import itertools
import re
from types import MappingProxyType
from typing import Mapping

from ..algebra import FiniteGroupoid, VarietySpec, in_variety, satisfies_all
from ..terms import SIGMA, Arrow, Identity, Var, parse_identity


class UnknownVarietyError(KeyError):
    def __str__(self):
        return f"unknown variety {self.args[0]!r}"


_BASE = {
    "T": ["x = y"],
    "I": [],
    "I10": ["x' = x"],
    "I20": ["x'' = x"],
    "MC": ["x & y = y & x"],
    "S": ["x'' = x", "x & y = y & x"],
    "SL": ["x' = x", "x -> y = y -> x"],
    "DM": ["(x -> y) -> x = x"],
    "BA": ["(x -> y) -> x = x", "x -> x = 0'"],
    # components of "type 1"; the fourth is a schema, see e4_identity
    "E1": ["(x -> y)' = x -> (0 -> y)"],
    "E2": ["x' -> y = x -> y'"],
    "E3": ["0 -> (x -> y) = 0 -> (y -> x)"],
}


def _build() -> dict[str, VarietySpec]:
    cat: dict[str, VarietySpec] = {}
    for name, texts in _BASE.items():
        cat[name] = VarietySpec(name, tuple(parse_identity(t) for t in texts))
    for i in range(1, 15):
        a = VarietySpec(f"A{i}", (SIGMA[f"A{i}"],))
        cat[a.name] = a
    s = cat["S"]
    for i in range(1, 15):
        cat[f"S{i}"] = cat[f"A{i}"].meet(s, f"S{i}")
    return cat


_CATALOG = MappingProxyType(_build())

MAIN_NODES = ("T", "SL", "BA", "A1", "A2", "A3", "A4", "A6", "A9", "A11", "A14", "I")
SYMMETRIC_NODES = ("T", "SL", "BA", "S14", "S")


def builtin_catalog() -> Mapping[str, VarietySpec]:
    return _CATALOG


def normalize_name(name: str) -> str:
    key = re.sub(r"[\s_{},$\\]", "", name)
    key = key.replace("mathcal", "")
    return key.upper() if key.upper() in _CATALOG else key


def get_variety(name: str) -> VarietySpec:
    key = normalize_name(name)
    try:
        return _CATALOG[key]
    except KeyError:
        raise UnknownVarietyError(name) from None


def e4_identity(perm: tuple[str, str, str]) -> Identity:
    """x -> (y -> z) = (p(x) -> p(y)) -> p(z) for p given by the image of (x, y, z)."""
    a, b, c = (Var(v) for v in perm)
    return Identity(Arrow(Var("x"), Arrow(Var("y"), Var("z"))), Arrow(Arrow(a, b), c))


E4_SCHEMA = tuple(e4_identity(p) for p in itertools.permutations(("x", "y", "z")))


def is_type1(g: FiniteGroupoid) -> bool:
    """E1-E3 hold and E4 holds for at least one permutation."""
    base = _CATALOG["E1"].identities + _CATALOG["E2"].identities + _CATALOG["E3"].identities
    if not in_variety(g, VarietySpec("E123", base)).holds:
        return False
    return any(satisfies_all(g, (e,)).holds for e in E4_SCHEMA)
