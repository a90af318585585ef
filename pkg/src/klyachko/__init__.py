"""Exact computation with the multi-parameter Klyachko element of the twisted group algebra K(q)S_n."""

from .cyclotomic import CyclotomicElement
from .groupalg import (
    GroupAlgebraElement,
    check_ideal,
    check_idempotency,
    check_specialization,
    gmaj,
    klyachko_element,
    partner_element,
    twisted_product,
)
from .lie import dynkin_left_bracketing, is_lie_element, scalar_product, shuffle_product
from .perm import Permutation, descent_stats, standardize
from .ppart import ChainPoset, check_shuffle_identity, check_stanley_formula, genfun_closed_form
from .ratfun import RatFun, parse_ratfun, rf_equal
from .report import VerificationReport
from .ring import Polynomial, RingMode
from .theta import TruncatedSeries, check_product_theorem, star_product

__all__ = [
    "ChainPoset",
    "CyclotomicElement",
    "GroupAlgebraElement",
    "Permutation",
    "Polynomial",
    "RatFun",
    "RingMode",
    "TruncatedSeries",
    "VerificationReport",
    "check_ideal",
    "check_idempotency",
    "check_product_theorem",
    "check_shuffle_identity",
    "check_specialization",
    "check_stanley_formula",
    "descent_stats",
    "dynkin_left_bracketing",
    "genfun_closed_form",
    "gmaj",
    "is_lie_element",
    "klyachko_element",
    "parse_ratfun",
    "partner_element",
    "rf_equal",
    "scalar_product",
    "shuffle_product",
    "standardize",
    "star_product",
    "twisted_product",
]
