"""Minimal p-adic valuation profiles of a factor system.

For distinct primitive irreducible ``f_1, ..., f_n`` and a prime ``p`` the
profile set ``W_p`` is the antichain of minimal vectors
``(v_p(f_1(c)), ..., v_p(f_n(c)))`` over integers ``c`` that are not roots.
Then ``v_p(d(prod f_i**x_i)) = min over w in W_p of <w, x>``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Mapping, Sequence

from .cones import dot, extreme_rays, is_full_dimensional
from .errors import DepthLimitExceeded
from .zpoly import IntPoly, fixed_divisor, prime_factorization, valuation

if TYPE_CHECKING:
    from .monoid import MonadicElement

DEFAULT_DEPTH_CAP = 64

Vector = tuple[int, ...]


@dataclass(frozen=True)
class ProfileSet:
    prime: int
    profiles: tuple[Vector, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "profiles", tuple(sorted(set(self.profiles))))

    @property
    def n(self) -> int:
        return len(self.profiles[0])

    def e(self, x: Sequence[int]) -> int:
        return min(dot(w, x) for w in self.profiles)

    @cached_property
    def vertices(self) -> tuple[Vector, ...]:
        """Profiles that are strict minimizers on a full-dimensional cone.

        These are the vertices of ``conv(W_p) + R_{>=0}^n``; the remaining
        profiles never decide the minimum on their own.
        """
        if len(self.profiles) == 1:
            return self.profiles
        return tuple(w for w in self.profiles if is_full_dimensional(self.region(w), self.n))

    def region(self, w: Vector) -> list[Vector]:
        """Extreme rays of the cone where ``w`` attains the minimum."""
        ineqs = [tuple(a - b for a, b in zip(v, w)) for v in self.profiles if v != w]
        return extreme_rays(ineqs, self.n)

    def max_pairing(self, x: Sequence[int]) -> int:
        return max(dot(w, x) for w in self.vertices)

    def to_json(self) -> dict:
        return {"p": self.prime, "profiles": [list(w) for w in self.profiles]}


@dataclass(frozen=True)
class FContext:
    """Analysed generator: factors, constant, constant primes and profiles.

    ``generator`` is the element of the analysed polynomial inside the
    monoid described here (the ambient one when the input is fractional).
    """

    factors: tuple[IntPoly, ...]
    constant: Mapping[int, int]
    constant_primes: tuple[int, ...]
    profile_sets: Mapping[int, ProfileSet]
    generator: "MonadicElement | None" = None
    source: str | None = None
    multiplicities: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.factors)

    def e(self, x: Sequence[int]) -> dict[int, int]:
        return {p: self.profile_sets[p].e(x) for p in self.constant_primes}


def candidate_primes(factors: Sequence[IntPoly], constant: int | Mapping[int, int] = 1) -> set[int]:
    """Primes dividing ``|a| * d(prod f_i)``."""
    if isinstance(constant, Mapping):
        primes = {p for p, e in constant.items() if e > 0}
    else:
        primes = set(prime_factorization(constant))
    product = IntPoly.const(1)
    for f in factors:
        product = product * f
    d = fixed_divisor(product)
    return primes | set(prime_factorization(d))


def _valuation_capped(value: int, p: int, cap: int) -> int | None:
    """``v_p(value)`` if below ``cap``, else None (undetermined)."""
    if value % p**cap == 0:
        return None
    return valuation(value, p)


def minimal_profiles(factors: Sequence[IntPoly], p: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> ProfileSet:
    """Minimal valuation vectors of ``factors`` at ``p`` by residue-class search.

    Classes ``c mod p**k`` are explored level by level. Coordinates whose
    value is nonzero mod ``p**k`` are fixed for the whole class; a class is
    dropped once a realized vector lies below its lower bound.
    """
    n = len(factors)
    if n == 0:
        return ProfileSet(p, ((),))
    found: list[Vector] = []
    level = [0]
    k = 0
    while level:
        k += 1
        if k > depth_cap:
            raise DepthLimitExceeded(f"profile search at p={p} exceeded depth {depth_cap}")
        modulus = p ** (k - 1)
        nodes: list[tuple[int, list[int | None]]] = []
        for r in level:
            for t in range(p):
                c = r + t * modulus
                bounds = [_valuation_capped(f(c), p, k) for f in factors]
                if all(b is not None for b in bounds):
                    found.append(tuple(bounds))
                else:
                    nodes.append((c, bounds))
        next_level = []
        for c, bounds in nodes:
            dominated = any(
                all(w[i] <= (k if b is None else b) for i, b in enumerate(bounds)) for w in found
            )
            if not dominated:
                next_level.append(c)
        level = next_level
    minimal = {
        w for w in found if not any(v != w and all(a <= b for a, b in zip(v, w)) for v in found)
    }
    return ProfileSet(p, tuple(minimal))


def e_exponent(ps: ProfileSet, x: Sequence[int]) -> int:
    return ps.e(x)


def fixed_divisor_of_product(ctx: FContext, x: Sequence[int], c: int = 1) -> dict[int, int]:
    """Prime map of ``d(c * prod f_i**x_i)``."""
    out = {p: e for p, e in prime_factorization(c).items()}
    for p in ctx.constant_primes:
        v = out.get(p, 0) + ctx.profile_sets[p].e(x)
        if v:
            out[p] = v
        else:
            out.pop(p, None)
    return dict(sorted(out.items()))


def e_f_exponent(ctx: FContext, g: "MonadicElement") -> dict[int, int]:
    """Exponents of ``e_f(g)``: the largest ratio ``d(gh)/d(h)`` over the monoid.

    Equals ``m_p + max <w, x>`` over the vertex profiles of ``W_p``.
    """
    out = {}
    for p in ctx.constant_primes:
        v = g.m.get(p, 0) + ctx.profile_sets[p].max_pairing(g.x)
        if v:
            out[p] = v
    return out
