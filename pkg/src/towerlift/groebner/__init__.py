"""Groebner bases, ideal operations and the linear-algebra membership oracle."""

from .buchberger import GroebnerBasis, buchberger, normal_form
from .ideals import dimension_height, elim_contract, groebner, ideal_equal, radical_member, saturate
from .oracle import UNKNOWN, oracle_member
from .orders import GREVLEX, LEX, TermOrder, block_order

__all__ = [
    "GREVLEX",
    "GroebnerBasis",
    "LEX",
    "TermOrder",
    "UNKNOWN",
    "block_order",
    "buchberger",
    "dimension_height",
    "elim_contract",
    "groebner",
    "ideal_equal",
    "normal_form",
    "oracle_member",
    "radical_member",
    "saturate",
]
