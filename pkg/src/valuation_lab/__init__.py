"""Exact p-adic valuations on towers of number fields.

Extensions of valuations with certified ramification and residue degrees,
Hensel lifting, value groups in Q + Q*r with divisibility, and finite-stage
replays of diagonal constructions over valued fields.
"""

from .errors import LabError
from .exact import QQ, Poly, PrimeField, finite_field, factor_over_fp
from .numberfields import FieldTower, factor_over_field, minimal_polynomial, primitive_element
from .valuation import INFINITY, PadicApprox, Value, newton_polygon, vp_rational, weak_approximation
from .extensions import (
    ExtensionDescriptor,
    ExtensionReport,
    absolute_valuations,
    common_extension_exists,
    extensions_of,
    henselization_membership,
    is_immediate,
    restricts_to,
)
from .hensel import hensel_lift, hensel_set_membership, hensel_simple_root
from .valuegroup import FGGroup, div_query, extend_div, group_contains, least_positive_is_one, subgroup_index
from .closure import MonomialElem, Stage, closure_stage, formally_padic_check, initial_stage, run_closure
from .polyparse import parse_poly

__version__ = "0.1.0"

__all__ = [
    "ExtensionDescriptor",
    "ExtensionReport",
    "FGGroup",
    "FieldTower",
    "INFINITY",
    "LabError",
    "MonomialElem",
    "PadicApprox",
    "Poly",
    "PrimeField",
    "QQ",
    "Stage",
    "Value",
    "absolute_valuations",
    "closure_stage",
    "common_extension_exists",
    "div_query",
    "extend_div",
    "extensions_of",
    "factor_over_field",
    "factor_over_fp",
    "finite_field",
    "formally_padic_check",
    "group_contains",
    "hensel_lift",
    "hensel_set_membership",
    "hensel_simple_root",
    "henselization_membership",
    "initial_stage",
    "is_immediate",
    "least_positive_is_one",
    "minimal_polynomial",
    "newton_polygon",
    "parse_poly",
    "primitive_element",
    "restricts_to",
    "run_closure",
    "subgroup_index",
    "vp_rational",
    "weak_approximation",
]
