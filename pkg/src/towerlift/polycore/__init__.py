"""Exact polynomial arithmetic over Q and F_p with localized elements."""

from .element import Element
from .fields import GF, QQ, PrimeField, RationalField, make_field
from .parse import parse_element, parse_poly
from .poly import Polynomial, PolyRing, format_poly

__all__ = [
    "Element",
    "GF",
    "QQ",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "RationalField",
    "format_poly",
    "make_field",
    "parse_element",
    "parse_poly",
]
