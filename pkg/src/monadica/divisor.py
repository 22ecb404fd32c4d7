"""Height-one primes, exponent vectors and the divisor-class group.

The monoid of a context is the set of lattice points ``(x, m)`` with
``x >= 0`` and ``<w, x> + m_p >= 0`` for every ``p`` and every profile
``w``. Its primes correspond to the irredundant inequalities: one per factor
and one per vertex profile of each ``W_p``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .cones import dot
from .errors import CrossCheckMismatch, RankMismatch
from .monoid import AtomSet, MonadicElement, atoms
from .padic import FContext
from .snf import smith_normal_form
from .zerosum import davenport

Vector = tuple[int, ...]


@dataclass(frozen=True)
class PrimeIdeal:
    kind: str
    trace: frozenset[int]
    factor: int | None = None
    p: int | None = None
    profile: Vector | None = None

    def describe(self, ctx: FContext) -> str:
        if self.kind == "poly":
            return f"poly[{ctx.factors[self.factor]}]"
        return f"const[p={self.p}, w={list(self.profile)}]"

    def to_json(self, ctx: FContext, index: int) -> dict:
        out: dict = {"id": index, "kind": self.kind, "trace": sorted(self.trace)}
        if self.kind == "poly":
            out["factor"] = str(ctx.factors[self.factor])
        else:
            out["p"] = self.p
            out["profile"] = list(self.profile)
        return out


def v_exponent(ctx: FContext, g: MonadicElement, P: PrimeIdeal) -> int:
    """Exponent of ``g`` at ``P``: ``x_i`` for a factor prime, ``<w, x> + m_p`` otherwise."""
    if P.kind == "poly":
        return g.x[P.factor]
    return dot(P.profile, g.x) + g.m.get(P.p, 0)


def divisor_vector(ctx: FContext, g: MonadicElement, primes: Sequence[PrimeIdeal]) -> list[int]:
    return [v_exponent(ctx, g, P) for P in primes]


def _compatible_witnesses(ctx: FContext, atomset: AtomSet, p: int) -> list[Vector]:
    """Witness vectors ``y`` for the p-compatibility search.

    For every profile region: the sum of its extreme rays scaled by
    ``s * K`` for ``s = 1, 2, 3``, with ``K`` large enough that adding any
    atom keeps the point inside the region. A small box of shallow points is
    added for low dimension.
    """
    ps = ctx.profile_sets[p]
    n = ctx.n
    xs = [a.x for a in atomset.poly_atoms]
    out: list[Vector] = []
    for w in ps.profiles:
        rays = ps.region(w)
        if not rays:
            continue
        base = tuple(sum(r[i] for r in rays) for i in range(n))
        K = 1 + max(
            (abs(dot(tuple(a - b for a, b in zip(v, w)), x)) for v in ps.profiles for x in xs),
            default=0,
        )
        out.extend(tuple(s * K * b for b in base) for s in (1, 2, 3))
    if n <= 6:
        out.extend(tuple(y) for y in product(range(3), repeat=n))
    return out


def maximal_compatible_sets(ctx: FContext, atomset: AtomSet, p: int) -> set[frozenset[int]]:
    """Maximal sets of polynomial atoms ``u`` admitting one ``y`` with
    ``e_p(x_u + y) - e_p(x_u) - e_p(y) >= 1`` for every member.

    Atom ids follow :meth:`AtomSet.all_atoms`.
    """
    ps = ctx.profile_sets[p]
    offset = len(atomset.constant_atoms) + 1
    polys = list(atomset.poly_atoms)
    sets: set[frozenset[int]] = set()
    for y in _compatible_witnesses(ctx, atomset, p):
        ey = ps.e(y)
        members = frozenset(
            offset + j
            for j, u in enumerate(polys)
            if ps.e(tuple(a + b for a, b in zip(u.x, y))) - ps.e(u.x) - ey >= 1
        )
        sets.add(members)
    return {s for s in sets if not any(s < t for t in sets)}


def primes(ctx: FContext, atomset: AtomSet, cross_check: bool = True) -> list[PrimeIdeal]:
    """Height-one primes in the order: factor primes, then ``(p, w)`` by ``p`` and ``w``."""
    elems = atomset.all_atoms(ctx)

    def trace_of(P: PrimeIdeal) -> frozenset[int]:
        return frozenset(i + 1 for i, a in enumerate(elems) if v_exponent(ctx, a, P) > 0)

    out: list[PrimeIdeal] = []
    for i in range(ctx.n):
        P = PrimeIdeal("poly", frozenset(), factor=i)
        out.append(PrimeIdeal("poly", trace_of(P), factor=i))
    for p in ctx.constant_primes:
        for w in ctx.profile_sets[p].vertices:
            P = PrimeIdeal("const", frozenset(), p=p, profile=w)
            out.append(PrimeIdeal("const", trace_of(P), p=p, profile=w))
    if cross_check:
        _cross_check(ctx, atomset, out)
    return out


def _cross_check(ctx: FContext, atomset: AtomSet, prime_list: Sequence[PrimeIdeal]) -> None:
    const_ids = {p: i + 1 for i, p in enumerate(atomset.constant_atoms)}
    for p in ctx.constant_primes:
        pid = const_ids[p]
        from_profiles = [P.trace - {pid} for P in prime_list if P.kind == "const" and P.p == p]
        for P in prime_list:
            if P.kind == "const" and P.p == p and pid not in P.trace:
                raise CrossCheckMismatch(f"prime over {p} misses the constant atom")
            if P.kind == "const" and P.p != p and pid in P.trace:
                raise CrossCheckMismatch(f"constant atom {p} lies in a prime over {P.p}")
        compatible = maximal_compatible_sets(ctx, atomset, p)
        if len(set(from_profiles)) != len(from_profiles) or set(from_profiles) != compatible:
            raise CrossCheckMismatch(
                f"p={p}: profile traces {sorted(map(sorted, from_profiles))} "
                f"!= maximal compatible sets {sorted(map(sorted, compatible))}"
            )


@dataclass(frozen=True)
class ClassGroup:
    free_rank: int
    torsion: tuple[int, ...]
    prime_classes: tuple[Vector, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def invariants(self) -> tuple[tuple[int, ...], int]:
        return self.torsion, self.free_rank

    def describe(self) -> str:
        parts = [f"Z/{d}Z" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " x ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "rank": self.free_rank,
            "torsion": list(self.torsion),
            "description": self.describe(),
            "prime_classes": [list(c) for c in self.prime_classes],
        }


def class_group_from_divisors(rows: Sequence[Sequence[int]], nprimes: int) -> ClassGroup:
    """``Z^nprimes`` modulo the span of ``rows``, with the image of each unit vector."""
    M = [[row[j] for row in rows] for j in range(nprimes)]
    D, U, _ = smith_normal_form(M, nrows=nprimes)
    ncols = len(rows)
    diag = [D[i][i] for i in range(min(nprimes, ncols)) if D[i][i]]
    s = len(diag)
    keep_torsion = [i for i in range(s) if diag[i] > 1]
    classes = []
    for j in range(nprimes):
        coords = [U[i][j] % diag[i] for i in keep_torsion]
        coords += [U[i][j] for i in range(s, nprimes)]
        classes.append(tuple(coords))
    return ClassGroup(nprimes - s, tuple(diag[i] for i in keep_torsion), tuple(classes))


def class_group(
    ctx: FContext, atomset: AtomSet, prime_list: Sequence[PrimeIdeal], check_rank: bool = True
) -> ClassGroup:
    """Class group of the whole monoid of ``ctx``.

    With ``check_rank`` the result is compared with the rank formula
    ``#constant primes - #constant atoms`` and a torsion-free group.
    """
    rows = [divisor_vector(ctx, a, prime_list) for a in atomset.all_atoms(ctx)]
    cg = class_group_from_divisors(rows, len(prime_list))
    if check_rank:
        expected = sum(1 for P in prime_list if P.kind == "const") - len(ctx.constant_primes)
        if cg.torsion or cg.free_rank != expected:
            raise RankMismatch(f"class group {cg.describe()} but rank formula gives Z^{expected}")
    return cg


def is_principal_trace(ctx: FContext, g: MonadicElement) -> bool:
    """True iff ``max <w, x_g>`` equals ``min <w, x_g>`` over the profiles at every prime."""
    return all(
        ctx.profile_sets[p].max_pairing(g.x) == ctx.profile_sets[p].e(g.x)
        for p in ctx.constant_primes
    )


@dataclass(frozen=True)
class DavenportBound:
    value: int
    exact: bool

    def to_json(self) -> dict:
        return {"value": self.value, "exact": self.exact}


def davenport_lower_bound(cg: ClassGroup, cap: int = 12) -> DavenportBound:
    """Davenport constant of the set of prime classes, exact when the search is complete."""
    if not cg.prime_classes:
        return DavenportBound(1, True)
    value, exact = davenport(cg.prime_classes, cg.torsion, cap)
    return DavenportBound(value, exact)


@dataclass(frozen=True)
class DivisorTheory:
    """Everything computed for one context: atoms, primes, divisors, class group."""

    ctx: FContext
    atoms: AtomSet
    primes: tuple[PrimeIdeal, ...]
    class_group: ClassGroup

    @property
    def atom_elements(self) -> list[MonadicElement]:
        return self.atoms.all_atoms(self.ctx)

    def divisor(self, g: MonadicElement) -> list[int]:
        return divisor_vector(self.ctx, g, self.primes)

    def atom_divisors(self) -> list[list[int]]:
        return [self.divisor(a) for a in self.atom_elements]

    def constant_atom_id(self, p: int) -> int:
        return self.atoms.constant_atoms.index(p) + 1


def divisor_theory(
    ctx: FContext,
    degree_bound: int | None = None,
    cross_check: bool = True,
    check_rank: bool = True,
) -> DivisorTheory:
    atomset = atoms(ctx, degree_bound=degree_bound)
    prime_list = primes(ctx, atomset, cross_check=cross_check)
    cg = class_group(ctx, atomset, prime_list, check_rank=check_rank)
    return DivisorTheory(ctx, atomset, tuple(prime_list), cg)

