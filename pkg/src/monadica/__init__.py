"""Divisor theory of monadic submonoids of the ring of integer-valued polynomials."""
from .divisor import ClassGroup, DivisorTheory, PrimeIdeal, davenport_lower_bound, divisor_theory
from .errors import (
    AtomBoundExceeded,
    CrossCheckMismatch,
    DepthLimitExceeded,
    FactorizationFailed,
    HypothesisViolated,
    MonadicaError,
    NotIntegerValued,
    NotMember,
    ParseError,
    RankMismatch,
)
from .invariants import (
    InvariantBounds,
    check_product_hypotheses,
    growth_schedule,
    residue_family,
    verify_product_isomorphism,
)
from .monoid import MonadicElement, atoms, build_context, membership
from .submonoid import (
    Submonoid,
    contraction_is_divisorial,
    monadic_submonoid,
    restricted_primes,
    restricted_v_exponent,
    submonoid_class_group,
)
from .zpoly import IntPoly, RatPoly, factor, parse

__all__ = [
    "AtomBoundExceeded",
    "ClassGroup",
    "CrossCheckMismatch",
    "DepthLimitExceeded",
    "DivisorTheory",
    "FactorizationFailed",
    "HypothesisViolated",
    "IntPoly",
    "InvariantBounds",
    "MonadicElement",
    "MonadicaError",
    "NotIntegerValued",
    "NotMember",
    "ParseError",
    "PrimeIdeal",
    "RankMismatch",
    "RatPoly",
    "Submonoid",
    "atoms",
    "build_context",
    "check_product_hypotheses",
    "contraction_is_divisorial",
    "davenport_lower_bound",
    "divisor_theory",
    "factor",
    "growth_schedule",
    "membership",
    "monadic_submonoid",
    "parse",
    "residue_family",
    "restricted_primes",
    "restricted_v_exponent",
    "submonoid_class_group",
    "verify_product_isomorphism",
]
