"""Embedded Cayley tables together with the memberships they are known for."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import FiniteGroupoid, SatisfactionReport, in_variety
from .catalog import get_variety


@dataclass(frozen=True)
class WitnessRecord:
    name: str
    table: FiniteGroupoid
    in_varieties: tuple[str, ...]
    not_in: tuple[str, ...]
    source: str

    def verify(self) -> "WitnessCheck":
        inside = {v: in_variety(self.table, get_variety(v)) for v in self.in_varieties}
        outside = {v: in_variety(self.table, get_variety(v)) for v in self.not_in}
        return WitnessCheck(self, inside, outside)


@dataclass
class WitnessCheck:
    record: WitnessRecord
    inside: dict[str, SatisfactionReport] = field(default_factory=dict)
    outside: dict[str, SatisfactionReport] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.holds for r in self.inside.values()) and not any(
            r.holds for r in self.outside.values()
        )

    def problems(self) -> list[str]:
        out = [f"not in {v}" for v, r in self.inside.items() if not r.holds]
        out += [f"unexpectedly in {v}" for v, r in self.outside.items() if r.holds]
        return out


def _g(*rows) -> FiniteGroupoid:
    return FiniteGroupoid.from_rows(rows)


TWO_Z = _g((0, 0), (0, 0))
TWO_S = _g((0, 1), (1, 1))
TWO_B = _g((1, 1), (0, 1))

_REFERENCE = (
    WitnessRecord("2z", TWO_Z, ("I", "A3"), ("SL",), "Thm 4.2(b)1"),
    WitnessRecord("2s", TWO_S, ("SL", "A4"), ("BA",), "Thm 4.2(b)2"),
    WitnessRecord("2b", TWO_B, ("I", "BA", "A4", "S"), ("A3", "A1", "A14", "S14"),
                  "Thm 4.2(b)1,3,5; Thm 5.8(b)"),
    WitnessRecord("w3a", _g((0, 0, 0), (2, 0, 0), (0, 0, 0)), ("I", "A11"),
                  ("A4", "A2", "A6", "A9"), "Thm 4.2(b)2,4"),
    WitnessRecord("w3b", _g((0, 1, 2), (1, 1, 2), (2, 1, 2)), ("A1",), ("A3",), "Thm 4.2(b)3"),
    WitnessRecord("w3c", _g((0, 0, 0), (2, 0, 2), (0, 0, 0)), ("A2",), ("A3",), "Thm 4.2(b)4"),
    WitnessRecord("w4a", _g((0, 0, 0, 0), (0, 2, 3, 0), (0, 0, 0, 0), (0, 0, 0, 0)),
                  ("A6", "A9"), ("A3",), "Thm 4.2(b)4"),
    WitnessRecord("w4b", _g((0, 1, 2, 3), (2, 3, 2, 3), (1, 1, 3, 3), (3, 3, 3, 3)),
                  ("A14", "S14"), ("A11", "SL"), "Thm 4.2(b)5; Thm 5.8(b)"),
)

# Found by search rather than taken from the reference results.
_DISCOVERED = (
    WitnessRecord(
        "w5a",
        _g((0, 0, 0, 0, 0), (0, 0, 0, 0, 0), (0, 0, 0, 0, 0), (0, 0, 0, 0, 1), (0, 2, 0, 0, 0)),
        ("A9",), ("A2", "A4", "A6"), "discovered: size-5 search, least table in A9 outside A2",
    ),
)


def reference_witnesses() -> list[WitnessRecord]:
    return list(_REFERENCE)


def discovered_witnesses() -> list[WitnessRecord]:
    return list(_DISCOVERED)


def all_witnesses() -> list[WitnessRecord]:
    return list(_REFERENCE + _DISCOVERED)
