"""Exact rational, polynomial, rational-map and number-field arithmetic."""

from fractions import Fraction as Rat

from .fppoly import FpPoly, fp_gcd
from .mpoly import BiPoly, MPoly, ratfun_equal, substitute_ratfun
from .numberfield import NFElem
from .orbit import (
    Certificate,
    EscapeCertified,
    HitFixed,
    OrbitRecord,
    PreperiodicTail,
    Unresolved,
    orbit,
)
from .poly import UPoly, format_poly, poly_gcd, poly_xgcd, taylor_shift
from .ratmap import (
    INFINITY,
    ZERO,
    ProjPoint,
    RatMap,
    mobius,
    mobius_conjugate,
    multiplier_at,
    proj_eval,
    series_expand,
)
from .text import format_rat, parse_mpoly, parse_poly, parse_rat

__all__ = [
    "Rat", "UPoly", "FpPoly", "MPoly", "BiPoly", "NFElem", "RatMap", "ProjPoint",
    "INFINITY", "ZERO", "OrbitRecord", "PreperiodicTail", "HitFixed", "EscapeCertified",
    "Unresolved", "Certificate", "poly_gcd", "poly_xgcd", "taylor_shift", "fp_gcd",
    "ratfun_equal", "substitute_ratfun", "mobius", "mobius_conjugate", "multiplier_at",
    "proj_eval", "series_expand", "orbit", "format_poly", "format_rat", "parse_poly",
    "parse_rat", "parse_mpoly",
]
