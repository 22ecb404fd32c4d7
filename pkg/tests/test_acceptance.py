"""Acceptance run: one PASS/FAIL line per criterion."""
import random
from itertools import combinations

import pytest

from conftest import CORPUS, SMALL_CORPUS, theory_of
from oracles import BruteMonoid, value_gcd
from monadica.divisor import maximal_compatible_sets
from monadica.fixtures import run_fixtures
from monadica.invariants import family_factors, growth_schedule, residue_family
from monadica.padic import fixed_divisor_of_product
from monadica.submonoid import Submonoid, submonoid_class_group
from monadica.zpoly import IntPoly, RatPoly, prime_factorization


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, failures: list[str]) -> None:
        ok = not failures
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}")
            for line in failures:
                print(f"    {line}")
        assert ok, failures

    return emit


def fixture_failures(block: str) -> list[str]:
    return [
        f"{r.block}/{r.name}: expected {r.expected!r}, got {r.actual!r}" + (f" ({r.error})" if r.error else "")
        for r in run_fixtures(only=[block])
        if not r.passed
    ]


def test_criterion_1_consecutive(verdict):
    verdict(1, "atoms, primes, class group and decompositions of [[X(X-1)(X-2)]]", fixture_failures("consecutive"))


def test_criterion_2_submonoids(verdict):
    verdict(2, "six divisor-closed submonoids of [[X(X-1)(X-2)]]", fixture_failures("consecutive-submonoids"))


def test_criterion_3_mixed_torsion(verdict):
    verdict(3, "Z/2Z x Z^6 by certificate and directly", fixture_failures("mixed-torsion"))


def test_criterion_4_two_block(verdict):
    verdict(4, "two-block product Z^5", fixture_failures("two-block"))


def test_criterion_5_family(verdict):
    failures = fixture_failures("family")
    for a, p in (((1, 1), (2, 3)), ((1, 1, 1), (3, 5, 7))):
        n = len(p)
        inst = residue_family(n, a, p)
        theory = inst.theory
        ctx = theory.ctx
        if theory.class_group.describe() != ("Z" if n == 2 else f"Z^{n - 1}"):
            failures.append(f"p={p}: class group {theory.class_group.describe()}")
        factors = family_factors(a, p)
        prod = IntPoly.const(1)
        for f in factors:
            prod = prod * f
        expected = {str(RatPoly.of(f)) for f in factors} | {str(RatPoly(prod, p[0]))}
        found = {str(u.polynomial(ctx)) for u in theory.atoms.poly_atoms}
        if found != expected or theory.atoms.constant_atoms != (p[0],):
            failures.append(f"p={p}: atoms {sorted(found)} and {theory.atoms.constant_atoms}")
        k = len(theory.primes)
        for size in range(1, k + 1):
            for avoided in combinations(range(k), size):
                group = submonoid_class_group(Submonoid(theory, frozenset(avoided)))
                if not group.is_trivial():
                    failures.append(f"p={p}: avoiding {avoided} gives {group.describe()}")
        D = inst.bounds.davenport
        if D.value < n or not D.exact:
            failures.append(f"p={p}: Davenport bound {D.value} exact={D.exact}")
    verdict(5, "residue family: group, atoms, factorial proper submonoids, Davenport", failures)


def test_criterion_6_rank_formula(verdict):
    failures = []
    if len(CORPUS) < 20:
        failures.append(f"corpus has only {len(CORPUS)} generators")
    for text in CORPUS:
        theory = theory_of(text)
        degree = sum(f.degree * k for f, k in zip(theory.ctx.factors, theory.ctx.multiplicities))
        if degree > 6:
            failures.append(f"{text}: degree {degree} above 6")
        cg = theory.class_group
        meeting = sum(1 for P in theory.primes if P.kind == "const")
        expected = meeting - len(theory.atoms.constant_atoms)
        if cg.torsion or cg.free_rank != expected:
            failures.append(f"{text}: got {cg.describe()}, expected Z^{expected}")
    verdict(6, f"torsion-free of rank #primes meeting Z - #constant atoms on {len(CORPUS)} generators", failures)


def test_criterion_7_oracles(verdict):
    failures = []
    contexts = [t for t in CORPUS if theory_of(t).ctx.n > 0]
    for text in contexts:
        ctx = theory_of(text).ctx
        rng = random.Random(sum(map(ord, text)))
        for _ in range(50):
            x = tuple(rng.randint(0, 3) for _ in range(ctx.n))
            got = fixed_divisor_of_product(ctx, x)
            want = prime_factorization(value_gcd(ctx.factors, x, 256))
            if got != want:
                failures.append(f"fixed divisor {text} at {x}: {got} vs {want}")
    for text in SMALL_CORPUS:
        theory = theory_of(text)
        ctx = theory.ctx
        brute = BruteMonoid(ctx.factors, ctx.constant_primes).atoms_in_box(6)
        found = {a.x for a in theory.atoms.poly_atoms if sum(a.x) <= 6}
        if found != brute:
            failures.append(f"atoms {text}: {sorted(found ^ brute)}")
    for text in CORPUS:
        theory = theory_of(text)
        ctx = theory.ctx
        offset = len(theory.atoms.constant_atoms)
        for p in ctx.constant_primes:
            traces = {
                frozenset(i for i in P.trace if i > offset)
                for P in theory.primes
                if P.kind == "const" and P.p == p
            }
            if traces != maximal_compatible_sets(ctx, theory.atoms, p):
                failures.append(f"traces {text} at {p}")
    verdict(7, "fixed divisors, atoms and prime traces against brute force", failures)


def test_criterion_8_schedule(verdict):
    failures = fixture_failures("schedule")
    entries = growth_schedule(3)
    values = [e.bounds.davenport.value for e in entries]
    if [e.i for e in entries] != [1, 2, 3]:
        failures.append(f"indices {[e.i for e in entries]}")
    if not all(x < y for x, y in zip(values, values[1:])):
        failures.append(f"not strictly increasing: {values}")
    for e in entries:
        b = e.bounds
        if b.davenport.value <= e.i:
            failures.append(f"i={e.i}: D={b.davenport.value}")
        if b.elasticity_lb * 2 != b.davenport.value or b.tame_lb != b.davenport.value:
            failures.append(f"i={e.i}: elasticity {b.elasticity_lb}, tame {b.tame_lb}")
    verdict(8, f"growth schedule Davenport bounds {values}", failures)
