"""Product certificates for class groups and lower-bound families for elasticity and tame degree."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Sequence

from sympy import Poly, isprime, nextprime, prime, resultant
from sympy.abc import x as _sym_x

from .divisor import ClassGroup, DavenportBound, DivisorTheory, davenport_lower_bound, divisor_theory
from .errors import HypothesisViolated, NotMember
from .monoid import build_context, context_from_factorization, membership
from .padic import fixed_divisor_of_product
from .snf import smith_normal_form
from .submonoid import monadic_submonoid, submonoid_class_group
from .zpoly import Factorization, IntPoly, RatPoly, factor, prime_factorization

# Multiplicity range used when confirming the fixed-divisor identity of a family.
IDENTITY_GRID = 3


def _as_factorization(f: Factorization | IntPoly) -> Factorization:
    return f if isinstance(f, Factorization) else factor(f)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class DecompositionCertificate:
    """Evaluated hypotheses for splitting the class group of a product.

    ``left`` and ``right`` are optional elements of ``[[f]]`` and ``[[g]]``
    whose product is the polynomial of interest; without them the product is
    ``f * g`` itself.
    """

    f: Factorization
    g: Factorization
    witness_point: int
    checks: tuple[Check, ...]
    left: RatPoly | None = None
    right: RatPoly | None = None

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def left_poly(self) -> RatPoly:
        return self.left if self.left is not None else RatPoly.of(self.f.expand())

    def right_poly(self) -> RatPoly:
        return self.right if self.right is not None else RatPoly.of(self.g.expand())

    def to_json(self) -> dict:
        return {
            "f": str(self.f.expand()),
            "g": str(self.g.expand()),
            "witness_point": self.witness_point,
            "left": None if self.left is None else str(self.left),
            "right": None if self.right is None else str(self.right),
            "checks": [c.to_json() for c in self.checks],
            "all_pass": self.all_pass,
        }


def _divides_nonconstant(p: int, h: IntPoly) -> bool:
    """``p | h - h(a)`` in Z[X] for any ``a``: every nonconstant coefficient is divisible by ``p``."""
    return all(c % p == 0 for c in h.coeffs[1:])


def _cross_condition(value: int, other: Factorization) -> tuple[bool, str]:
    factors = [h for h, _ in other.factors]
    if value == 0:
        if factors:
            return False, "value is 0, so every prime divides it"
        return True, ""
    for p in sorted(prime_factorization(value)):
        for h in factors:
            if not _divides_nonconstant(p, h):
                return False, f"{p} does not divide {h} - {h}(a)"
    return True, ""


def _common_root_primes(f: IntPoly, g: IntPoly) -> list[int]:
    """Primes ``q`` with some residue ``c`` where ``q`` divides both ``f(c)`` and ``g(c)``."""
    res = int(resultant(Poly(list(reversed(f.coeffs)), _sym_x), Poly(list(reversed(g.coeffs)), _sym_x)))
    if res == 0:
        return [0]
    bad = []
    for q in sorted(prime_factorization(res)):
        if any(f(c) % q == 0 and g(c) % q == 0 for c in range(q)):
            bad.append(q)
    return bad


def check_product_hypotheses(
    f: Factorization | IntPoly,
    g: Factorization | IntPoly,
    a: int,
    left: RatPoly | IntPoly | None = None,
    right: RatPoly | IntPoly | None = None,
) -> DecompositionCertificate:
    """Evaluate the hypotheses under which the class group of a product splits.

    For ``f, g`` in Z[X] and a point ``a``: coprimality in Z[X], coprime
    values at ``a``, and ``p | h - h(a)`` whenever ``p | f(a)`` and ``h | g``
    (and symmetrically). With ``left``/``right`` given, they must lie in
    ``[[f]]``/``[[g]]`` and ``gcd(f(x), g(x)) = 1`` must hold for all but
    finitely many ``x``.
    """
    F = _as_factorization(f)
    G = _as_factorization(g)
    fe, ge = F.expand(), G.expand()
    checks: list[Check] = []

    shared = {h.coeffs for h, _ in F.factors} & {h.coeffs for h, _ in G.factors}
    content_gcd = gcd(F.constant_value(), G.constant_value())
    checks.append(
        Check(
            "coprime_in_ZX",
            not shared and content_gcd == 1,
            "" if not shared and content_gcd == 1 else "common factor in Z[X]",
        )
    )
    fa, ga = fe(a), ge(a)
    value_gcd = gcd(fa, ga)
    checks.append(Check("values_coprime", value_gcd == 1, f"gcd(f(a), g(a)) = {value_gcd}"))
    ok, detail = _cross_condition(fa, G)
    checks.append(Check("f_primes_vs_g_factors", ok, detail))
    ok, detail = _cross_condition(ga, F)
    checks.append(Check("g_primes_vs_f_factors", ok, detail))

    L = None if left is None else RatPoly.of(left)
    Rr = None if right is None else RatPoly.of(right)
    if L is not None or Rr is not None:
        bad = _common_root_primes(fe, ge)
        checks.append(
            Check(
                "values_coprime_cofinitely",
                not bad,
                "" if not bad else f"common roots modulo {bad}",
            )
        )
        if L is not None:
            ctx = context_from_factorization(F)
            checks.append(Check("left_in_f_monoid", membership(ctx, L) is not None))
        if Rr is not None:
            ctx = context_from_factorization(G)
            checks.append(Check("right_in_g_monoid", membership(ctx, Rr) is not None))
    return DecompositionCertificate(F, G, a, tuple(checks), L, Rr)


def class_group_of(
    poly: RatPoly | IntPoly | Factorization,
    degree_bound: int | None = None,
    denominator: int = 1,
) -> ClassGroup:
    """Class group of ``[[poly]]``; fractional input is analysed inside ``[[b poly]]``.

    A :class:`Factorization` is used as given, divided by ``denominator``.
    """
    if isinstance(poly, Factorization):
        ctx = context_from_factorization(poly, denominator)
    else:
        ctx = build_context(poly)
    theory = divisor_theory(ctx, degree_bound=degree_bound)
    sub = monadic_submonoid(theory, ctx.generator)
    if sub.is_full():
        return theory.class_group
    return submonoid_class_group(sub)


def group_invariants(cg: ClassGroup) -> tuple[tuple[int, ...], int]:
    return cg.torsion, cg.free_rank


def product_invariants(
    a: tuple[Sequence[int], int], b: tuple[Sequence[int], int]
) -> tuple[tuple[int, ...], int]:
    """Invariant factors and rank of a direct product."""
    orders = list(a[0]) + list(b[0])
    if not orders:
        return (), a[1] + b[1]
    diag = [[orders[i] if i == j else 0 for j in range(len(orders))] for i in range(len(orders))]
    D, _, _ = smith_normal_form(diag)
    torsion = tuple(D[i][i] for i in range(len(orders)) if D[i][i] > 1)
    return torsion, a[1] + b[1]


@dataclass(frozen=True)
class ProductComparison:
    left: ClassGroup
    right: ClassGroup
    product: ClassGroup | None
    expected: tuple[tuple[int, ...], int]

    @property
    def holds(self) -> bool | None:
        """None when the product group was not computed."""
        if self.product is None:
            return None
        return group_invariants(self.product) == self.expected

    def describe_expected(self) -> str:
        return ClassGroup(self.expected[1], self.expected[0], ()).describe()

    def to_json(self) -> dict:
        return {
            "left": self.left.describe(),
            "right": self.right.describe(),
            "product": None if self.product is None else self.product.describe(),
            "expected": self.describe_expected(),
            "holds": self.holds,
        }


def _factored(fac: Factorization, poly: RatPoly) -> tuple[Factorization, int]:
    """Factor an element of ``[[fac]]`` over the factors of ``fac``."""
    ctx = context_from_factorization(fac)
    element = membership(ctx, poly)
    if element is None:
        raise NotMember(f"{poly} does not lie in [[{fac.expand()}]]")
    constant = {p: e for p, e in element.m.items() if e > 0}
    denominator = 1
    for p, e in element.m.items():
        if e < 0:
            denominator *= p**-e
    factors = tuple((h, k) for h, k in zip(ctx.factors, element.x) if k)
    return Factorization(1, constant, factors), denominator


def _merge(a: Factorization, b: Factorization) -> Factorization:
    constant = {p: a.constant.get(p, 0) + b.constant.get(p, 0) for p in set(a.constant) | set(b.constant)}
    return Factorization(a.sign * b.sign, constant, a.factors + b.factors)


def compare_product(
    cert: DecompositionCertificate, direct: bool = True, degree_bound: int | None = None
) -> ProductComparison:
    """Class groups of the two factors and, with ``direct``, of the product itself."""
    lf, ld = _factored(cert.f, cert.left_poly())
    rf, rd = _factored(cert.g, cert.right_poly())
    left = class_group_of(lf, degree_bound, ld)
    right = class_group_of(rf, degree_bound, rd)
    expected = product_invariants(group_invariants(left), group_invariants(right))
    prod_group = None
    if direct:
        prod_group = class_group_of(_merge(lf, rf), degree_bound, ld * rd)
    return ProductComparison(left, right, prod_group, expected)


def verify_product_isomorphism(cert: DecompositionCertificate, degree_bound: int | None = None) -> bool:
    """Compute all three class groups directly and compare the product with the factors."""
    return bool(compare_product(cert, True, degree_bound).holds)


@dataclass(frozen=True)
class InvariantBounds:
    davenport: DavenportBound
    elasticity_lb: Fraction
    tame_lb: int

    @classmethod
    def from_davenport(cls, d: DavenportBound) -> InvariantBounds:
        return cls(d, Fraction(d.value, 2), d.value)

    def to_json(self) -> dict:
        return {
            "davenport": self.davenport.value,
            "exact": self.davenport.exact,
            "elasticity_lb": str(self.elasticity_lb),
            "tame_lb": self.tame_lb,
        }


def bounds_for(theory: DivisorTheory, cap: int = 12) -> InvariantBounds:
    return InvariantBounds.from_davenport(davenport_lower_bound(theory.class_group, cap))


def family_hypotheses(n: int, a: Sequence[int], p: Sequence[int]) -> list[str]:
    """Failed conditions for ``prod (a_i X - p_i)`` to have class group ``Z^(n-1)``; empty when all hold."""
    failed: list[str] = []
    if n < 2 or len(a) != n or len(p) != n:
        return [f"need n >= 2 with {n} coefficients and {n} primes"]
    if not all(isprime(q) for q in p):
        failed.append("every p_i must be prime")
    if len(set(p)) != n:
        failed.append("the primes p_i must be distinct")
    p1 = p[0]
    for i, ai in enumerate(a, start=1):
        if (ai - 1) % p1:
            failed.append(f"p_1 = {p1} does not divide a_{i} - 1 = {ai - 1}")
        for k in range(1, n):
            if ai % p[k] == 0:
                failed.append(f"a_{i} = {ai} is not a unit modulo p_{k + 1} = {p[k]}")
    residues = {q % p1 for q in p}
    if len(residues) != p1 or n != p1:
        failed.append(f"the p_j must cover all {p1} residues modulo p_1 exactly once (n = {n})")
    for i in range(1, n):
        if p[i] <= p1:
            failed.append(f"p_{i + 1} = {p[i]} must exceed p_1 = {p1}")
    return failed


@dataclass(frozen=True)
class FamilyInstance:
    a: tuple[int, ...]
    p: tuple[int, ...]
    theory: DivisorTheory
    bounds: InvariantBounds
    checks: tuple[Check, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "a": list(self.a),
            "p": list(self.p),
            "class_group": self.theory.class_group.to_json(),
            "bounds": self.bounds.to_json(),
            "checks": [c.to_json() for c in self.checks],
        }


def family_factors(a: Sequence[int], p: Sequence[int]) -> list[IntPoly]:
    return [IntPoly((-q, ai)) for ai, q in zip(a, p)]


def residue_family(
    n: int, a: Sequence[int], p: Sequence[int], davenport_cap: int = 12, validate: bool = True
) -> FamilyInstance:
    """Analyse ``[[prod (a_i X - p_i)]]`` and check the predicted structure.

    Checks: ``d(prod f_i**r_i) = p_1**min(r)`` on a grid of multiplicities,
    class group ``Z^(n-1)``, atoms ``p_1``, the ``f_i`` and ``prod f_i / p_1``,
    and a Davenport bound of at least ``n``. With ``validate`` the
    hypotheses are enforced first.
    """
    if validate:
        failed = family_hypotheses(n, a, p)
        if failed:
            raise HypothesisViolated("; ".join(failed))
    facs = Factorization.from_factors(family_factors(a, p))
    ctx = context_from_factorization(facs, source="family")
    theory = divisor_theory(ctx, check_rank=False)
    bounds = bounds_for(theory, davenport_cap)
    checks: list[Check] = []

    identity = True
    for r in product(range(IDENTITY_GRID + 1), repeat=n):
        expected = {p[0]: min(r)} if min(r) else {}
        if fixed_divisor_of_product(ctx, r) != expected:
            identity = False
            break
    checks.append(Check("fixed_divisor_identity", identity))
    cg = theory.class_group
    checks.append(
        Check("class_group", cg.free_rank == n - 1 and not cg.torsion, cg.describe())
    )
    poly_atoms = sorted(a_.x for a_ in theory.atoms.poly_atoms)
    expected_atoms = sorted([tuple(int(i == j) for i in range(n)) for j in range(n)] + [(1,) * n])
    atoms_ok = theory.atoms.constant_atoms == (p[0],) and poly_atoms == expected_atoms
    checks.append(Check("atoms", atoms_ok))
    checks.append(
        Check("davenport_at_least_n", bounds.davenport.value >= n, str(bounds.davenport.value))
    )
    return FamilyInstance(tuple(a), tuple(p), theory, bounds, tuple(checks))


def schedule_primes(i: int) -> list[int]:
    """The ``i``-th prime ``p`` and, for each nonzero residue ``r``, the least prime ``q > p`` with ``q = r mod p``."""
    p = prime(i)
    out = [p]
    for r in range(1, p):
        q = nextprime(p)
        while q % p != r:
            q = nextprime(q)
        out.append(q)
    return out


@dataclass(frozen=True)
class ScheduleEntry:
    i: int
    primes: tuple[int, ...]
    class_group: ClassGroup
    bounds: InvariantBounds

    def to_json(self) -> dict:
        return {
            "i": self.i,
            "primes": list(self.primes),
            "size": len(self.primes),
            "class_group": self.class_group.describe(),
            **self.bounds.to_json(),
        }


def growth_schedule(i_max: int, davenport_cap: int = 12) -> list[ScheduleEntry]:
    """For ``i = 1..i_max`` analyse ``[[prod (X - q)]]`` over :func:`schedule_primes`."""
    out = []
    for i in range(1, i_max + 1):
        ps = schedule_primes(i)
        facs = Factorization.from_factors([IntPoly((-q, 1)) for q in sorted(ps)])
        ctx = context_from_factorization(facs, source=f"schedule-{i}")
        theory = divisor_theory(ctx)
        out.append(ScheduleEntry(i, tuple(ps), theory.class_group, bounds_for(theory, davenport_cap)))
    return out
