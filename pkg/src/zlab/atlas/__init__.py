from .catalog import (
    E4_SCHEMA,
    MAIN_NODES,
    SYMMETRIC_NODES,
    UnknownVarietyError,
    builtin_catalog,
    e4_identity,
    get_variety,
    is_type1,
)
from .claims import ClaimLedger, ClaimResult, all_claims, verify_claims
from .poset import PosetReport, build_poset
from .witnesses import WitnessRecord, all_witnesses, discovered_witnesses, reference_witnesses
