"""Reduced model of the monadic submonoid generated by an integer-valued polynomial.

An element ``b * prod f_i**x_i / a`` is stored as ``(x, m)`` where ``m[p]`` is
the exponent of ``p`` in the rational constant ``b/a``. Integer-valuedness
is ``m[p] >= -e_p(x)`` for every constant prime ``p``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .cones import box_points, extreme_rays, in_cone, is_full_dimensional, zonotope_box
from .errors import AtomBoundExceeded, NotIntegerValued
from .padic import DEFAULT_DEPTH_CAP, FContext, candidate_primes, minimal_profiles
from .zpoly import (
    DEFAULT_DEGREE_CAP,
    Factorization,
    IntPoly,
    RatPoly,
    factor,
    is_integer_valued,
    prime_factorization,
)

Vector = tuple[int, ...]

# Rows of a box enumeration handled per numpy chunk.
_CHUNK_ROWS = 1 << 20


@dataclass(frozen=True, eq=False)
class MonadicElement:
    x: Vector
    m: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", tuple(int(a) for a in self.x))
        object.__setattr__(self, "m", {int(p): int(e) for p, e in sorted(self.m.items()) if e})

    def key(self) -> tuple:
        return (self.x, tuple(self.m.items()))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MonadicElement) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __mul__(self, other: MonadicElement) -> MonadicElement:
        m = dict(self.m)
        for p, e in other.m.items():
            m[p] = m.get(p, 0) + e
        return MonadicElement(tuple(a + b for a, b in zip(self.x, other.x)), m)

    def __pow__(self, k: int) -> MonadicElement:
        return MonadicElement(tuple(k * a for a in self.x), {p: k * e for p, e in self.m.items()})

    def is_constant(self) -> bool:
        return not any(self.x)

    def to_json(self) -> dict:
        return {"x": list(self.x), "m": {str(p): e for p, e in self.m.items()}}

    def polynomial(self, ctx: FContext) -> RatPoly:
        num = 1
        den = 1
        for p, e in self.m.items():
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        poly = IntPoly.const(num)
        for f, k in zip(ctx.factors, self.x):
            poly = poly * f**k
        return RatPoly(poly, den)


def constant_atom(ctx: FContext, p: int) -> MonadicElement:
    return MonadicElement((0,) * ctx.n, {p: 1})


def poly_atom(ctx: FContext, y: Sequence[int]) -> MonadicElement:
    return MonadicElement(tuple(y), {p: -e for p, e in ctx.e(y).items()})


def is_valid(ctx: FContext, g: MonadicElement) -> bool:
    """True iff ``(x, m)`` describes an element of the monoid of ``ctx``."""
    if len(g.x) != ctx.n or any(a < 0 for a in g.x):
        return False
    if any(p not in ctx.profile_sets for p in g.m):
        return False
    return all(g.m.get(p, 0) >= -e for p, e in ctx.e(g.x).items())


def context_from_factorization(
    fac: Factorization,
    denominator: int = 1,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    source: str | None = None,
) -> FContext:
    """Context of ``[[fac]]`` with the element ``fac / denominator`` attached."""
    factors = tuple(f for f, _ in fac.factors)
    mult = tuple(k for _, k in fac.factors)
    primes = tuple(sorted(candidate_primes(factors, fac.constant)))
    profiles = {p: minimal_profiles(factors, p, depth_cap) for p in primes}
    m = {p: fac.constant.get(p, 0) for p in primes}
    for p, e in prime_factorization(denominator).items():
        if p not in m:
            raise NotIntegerValued(f"denominator prime {p} does not divide the fixed divisor")
        m[p] -= e
    ctx = FContext(
        factors=factors,
        constant=dict(fac.constant),
        constant_primes=primes,
        profile_sets=profiles,
        generator=None,
        source=source,
        multiplicities=mult,
    )
    gen = MonadicElement(mult, m)
    if not is_valid(ctx, gen):
        raise NotIntegerValued(f"{source or 'input'} is not integer-valued")
    return FContext(
        factors=factors,
        constant=dict(fac.constant),
        constant_primes=primes,
        profile_sets=profiles,
        generator=gen,
        source=source,
        multiplicities=mult,
    )


def build_context(
    f: RatPoly | IntPoly | Factorization,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> FContext:
    """Context of ``[[f]]``, or of ``[[b f]]`` for the least denominator ``b`` of ``f``.

    The ``generator`` field always holds the element of ``f`` itself.
    """
    if isinstance(f, Factorization):
        return context_from_factorization(f, 1, depth_cap, str(f.expand()))
    f = RatPoly.of(f)
    if f.is_zero():
        raise ValueError("the zero polynomial generates no monadic submonoid")
    if not is_integer_valued(f):
        raise NotIntegerValued(f"{f} is not integer-valued")
    fac = factor(f.numerator, degree_cap=degree_cap)
    return context_from_factorization(fac, f.denominator, depth_cap, str(f))


def membership(ctx: FContext, g: RatPoly | IntPoly) -> MonadicElement | None:
    """Canonical ``(x, m)`` of ``g`` if ``g`` lies in the monoid of ``ctx``, else None."""
    g = RatPoly.of(g)
    if g.is_zero():
        return None
    content = g.numerator.content()
    rest = g.numerator.primitive_part()
    x = []
    for f in ctx.factors:
        k = 0
        while rest.degree >= f.degree:
            q = rest.exact_div(f)
            if q is None:
                break
            rest = q
            k += 1
        x.append(k)
    if rest.degree != 0 or abs(rest.coeffs[0]) != 1:
        return None
    m: dict[int, int] = {}
    for p, e in prime_factorization(content).items():
        m[p] = m.get(p, 0) + e
    for p, e in prime_factorization(g.denominator).items():
        m[p] = m.get(p, 0) - e
    element = MonadicElement(tuple(x), m)
    return element if is_valid(ctx, element) else None


def is_additive_split(ctx: FContext, x: Sequence[int], y: Sequence[int]) -> bool:
    """True iff ``e_p(x) = e_p(y) + e_p(x - y)`` for every constant prime."""
    z = tuple(a - b for a, b in zip(x, y))
    return all(
        ps.e(x) == ps.e(y) + ps.e(z) for ps in (ctx.profile_sets[p] for p in ctx.constant_primes)
    )


def is_f_irreducible(ctx: FContext, x: Sequence[int]) -> bool:
    """Exhaustive check over all ``0 < y < x`` for an additive split."""
    x = tuple(x)
    if not any(x):
        raise ValueError("the zero vector is not an atom candidate")
    total = sum(x)
    for y in product(*(range(a + 1) for a in x)):
        s = sum(y)
        if 0 < s < total and 2 * s <= total and is_additive_split(ctx, x, y):
            return False
    return True


@dataclass(frozen=True)
class AtomSet:
    constant_atoms: tuple[int, ...]
    poly_atoms: tuple[MonadicElement, ...]
    certified: bool
    degree_bound: int | None = None

    def all_atoms(self, ctx: FContext) -> list[MonadicElement]:
        """All atoms in id order (ids start at 1): constants first, then polynomial atoms."""
        return [constant_atom(ctx, p) for p in self.constant_atoms] + list(self.poly_atoms)

    def to_json(self) -> dict:
        return {
            "certified": self.certified,
            "degree_bound": self.degree_bound,
            "constant": list(self.constant_atoms),
            "poly": [a.to_json() for a in self.poly_atoms],
        }


def atom_order(x: Sequence[int]) -> tuple:
    """Sort key: degree first, then reverse lexicographic."""
    return (sum(x), tuple(-a for a in x))


def linearity_regions(ctx: FContext) -> list[tuple[list[Vector], list[Vector]]]:
    """Full-dimensional cones on which every ``e_p`` is linear.

    Returns ``(inequalities, extreme_rays)`` pairs; the cones cover the
    nonnegative orthant.
    """
    n = ctx.n
    regions: list[list[Vector]] = [[]]
    for p in ctx.constant_primes:
        ps = ctx.profile_sets[p]
        if len(ps.profiles) == 1:
            continue
        refined = []
        for ineqs in regions:
            for w in ps.vertices:
                extra = [tuple(a - b for a, b in zip(v, w)) for v in ps.profiles if v != w]
                cand = ineqs + extra
                if is_full_dimensional(extreme_rays(cand, n), n):
                    refined.append(cand)
        regions = refined
    return [(ineqs, extreme_rays(ineqs, n)) for ineqs in regions]


def _box_chunks(upper: Sequence[int]) -> Iterator[np.ndarray]:
    size = 1
    for u in upper:
        size *= u + 1
    if size <= _CHUNK_ROWS or not upper:
        yield box_points(upper)
        return
    for v in range(upper[0] + 1):
        for chunk in _box_chunks(upper[1:]):
            yield np.hstack([np.full((chunk.shape[0], 1), v, dtype=np.int64), chunk])


def region_candidates(ineqs: Sequence[Vector], rays: Sequence[Vector], n: int) -> set[Vector]:
    """Lattice points of the cone that are not a ray plus another cone point.

    This is a superset of the Hilbert basis of the cone; all such points lie
    in the zonotope spanned by the extreme rays.
    """
    A = np.array(ineqs, dtype=np.int64).reshape(-1, n)
    R = np.array(rays, dtype=np.int64).reshape(-1, n)
    degree_bound = int(R.sum())
    out: set[Vector] = set()
    for pts in _box_chunks(zonotope_box(rays, n)):
        pts = pts[in_cone(pts, A) & (pts.sum(axis=1) <= degree_bound) & pts.any(axis=1)]
        keep = np.ones(len(pts), dtype=bool)
        for r in R:
            y = pts - r
            keep &= ~(in_cone(y, A) & y.any(axis=1))
        out.update(tuple(int(a) for a in row) for row in pts[keep])
    return out


def _filter_atoms(ctx: FContext, candidates: Iterable[Vector]) -> list[Vector]:
    """Keep candidates that no smaller atom divides (processed by degree)."""
    accepted: list[Vector] = []
    for x in sorted(set(candidates), key=lambda v: (sum(v), v)):
        if any(
            a != x and all(b <= c for b, c in zip(a, x)) and is_additive_split(ctx, x, a)
            for a in accepted
        ):
            continue
        accepted.append(x)
    return accepted


def atoms(ctx: FContext, degree_bound: int | None = None, verify: bool = True) -> AtomSet:
    """Constant and polynomial atoms of the monoid of ``ctx``.

    Without ``degree_bound`` the list is complete: every atom is a Hilbert
    basis element of some cone on which all ``e_p`` are linear. With a manual
    ``degree_bound`` all vectors up to that degree are scanned and the result
    is marked uncertified; an atom on the boundary raises ``AtomBoundExceeded``.
    """
    n = ctx.n
    if n == 0:
        return AtomSet(tuple(ctx.constant_primes), (), True, 0)
    if degree_bound is not None:
        cands = [
            x for x in product(range(degree_bound + 1), repeat=n) if 0 < sum(x) <= degree_bound
        ]
        found = _filter_atoms(ctx, cands)
        if any(sum(x) == degree_bound for x in found):
            raise AtomBoundExceeded(f"an atom reaches the manual degree bound {degree_bound}")
        certified = False
        bound = degree_bound
    else:
        cands: set[Vector] = set()
        bound = 0
        for ineqs, rays in linearity_regions(ctx):
            bound = max(bound, sum(sum(r) for r in rays))
            cands |= region_candidates(ineqs, rays, n)
        found = _filter_atoms(ctx, cands)
        certified = True
    if verify:
        for x in found:
            size = 1
            for a in x:
                size *= a + 1
            if size <= 50_000 and not is_f_irreducible(ctx, x):
                raise AssertionError(f"atom filter accepted reducible vector {x}")
    polys = tuple(poly_atom(ctx, x) for x in sorted(found, key=atom_order))
    return AtomSet(tuple(ctx.constant_primes), polys, certified, bound)


def d_is_multiplicative(ctx: FContext) -> bool:
    """True iff every profile set is a singleton, so each ``e_p`` is linear."""
    return all(len(ctx.profile_sets[p].profiles) == 1 for p in ctx.constant_primes)
