"""Lifting ideal surjections over Laurent polynomial towers, with certificates."""

from .applications import (
    SetTheoreticCertificate,
    UnimodularResult,
    euler_trivial_witness,
    find_unimodular,
    settheoretic_generators,
    unimodular_certify,
)
from .certificates import normalization_certificate, verify_certificate
from .errors import (
    BudgetExceeded,
    InvalidTower,
    ParseError,
    PreconditionError,
    TowerliftError,
)
from .lifting import (
    LiftCertificate,
    LocalizedMatrix,
    check_surjection_mod_sq,
    fiber_glue,
    lift_T2,
    lift_T3,
    mandal_lift,
)
from .polycore import Element
from .tower import (
    Automorphism,
    IdealHandle,
    RingTower,
    apply_automorphism,
    combined_automorphism,
    contract_ideal,
    height_at_level,
    ideal,
    laurent_automorphism,
    make_tower,
    suslin_automorphism,
)
from .transforms import (
    NormalizationWitness,
    analytic_delta,
    combined_normalize,
    contains_monic,
    contains_unit_shift,
    laurent_monicize,
    suslin_monicize,
)

__version__ = "0.1.0"

__all__ = [
    "Automorphism",
    "BudgetExceeded",
    "Element",
    "IdealHandle",
    "InvalidTower",
    "LiftCertificate",
    "LocalizedMatrix",
    "NormalizationWitness",
    "ParseError",
    "PreconditionError",
    "RingTower",
    "SetTheoreticCertificate",
    "TowerliftError",
    "UnimodularResult",
    "analytic_delta",
    "apply_automorphism",
    "check_surjection_mod_sq",
    "combined_automorphism",
    "combined_normalize",
    "contains_monic",
    "contains_unit_shift",
    "contract_ideal",
    "euler_trivial_witness",
    "fiber_glue",
    "find_unimodular",
    "height_at_level",
    "ideal",
    "laurent_automorphism",
    "laurent_monicize",
    "lift_T2",
    "lift_T3",
    "make_tower",
    "mandal_lift",
    "normalization_certificate",
    "settheoretic_generators",
    "suslin_automorphism",
    "suslin_monicize",
    "unimodular_certify",
    "verify_certificate",
]
