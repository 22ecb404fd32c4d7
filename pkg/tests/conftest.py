"""Shared corpus and cached theories for the test suite."""
from __future__ import annotations

from functools import lru_cache

import pytest

from monadica import build_context, divisor_theory, parse
from monadica.divisor import DivisorTheory

CONSECUTIVE = "X*(X-1)*(X-2)"

# Integer-coefficient generators of degree at most 6 that analyse in well under a second.
CORPUS = [
    "X",
    "7",
    "6",
    "12*X",
    "X*(X-1)",
    "X*(X-1)*(X-2)",
    "X^2*(X-1)",
    "X*(X-1)*(X-2)*(X-3)",
    "X*(X+1)*(2*X+1)",
    "X^2+X+2",
    "X*(X-3)",
    "X*(X-1)*(X-3)",
    "(X-1)*(X-5)*(X-7)",
    "X*(X^2+X+2)",
    "X*(X-2)*(X-4)",
    "30*X*(X-1)",
    "(X-2)*(X-3)",
    "(X-3)*(X-5)*(X-7)",
    "X*(X-1)^2",
    "(X^2-2)*(X^2-3)",
    "(X^3+2)*(X-1)",
    "X^2*(X+1)^2*(X+2)^2",
    "(2*X-3)*(X-2)",
    "X*(X-1)*(X^2+1)",
    "(X^2+X+2)*(X^2+X+4)",
    "(X^3-X)*(X^2+X+2)",
    "4*(X^2+X+2)",
    "X*(X-1)*(X-2)*(X-4)",
    "X^3*(X-1)^3",
    "(X^2+1)*(X^2+X+2)*(X^2+3)",
]

# Generators with at most three distinct factors, for box brute force.
SMALL_CORPUS = [
    "X*(X-1)",
    "X*(X-1)*(X-2)",
    "X^2*(X-1)",
    "X*(X+1)*(2*X+1)",
    "X^2+X+2",
    "X*(X-1)*(X-3)",
    "X*(X^2+X+2)",
    "X*(X-2)*(X-4)",
    "30*X*(X-1)",
    "(X-3)*(X-5)*(X-7)",
    "(X^2-2)*(X^2-3)",
    "X*(X-1)*(X^2+1)",
]


@lru_cache(maxsize=None)
def theory_of(text: str) -> DivisorTheory:
    return divisor_theory(build_context(parse(text)))


@pytest.fixture(scope="session")
def consecutive() -> DivisorTheory:
    return theory_of(CONSECUTIVE)
