import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from conftest import CORPUS, theory_of
from monadica.divisor import (
    PrimeIdeal,
    _cross_check,
    class_group,
    class_group_from_divisors,
    davenport_lower_bound,
    is_principal_trace,
    maximal_compatible_sets,
    primes,
    v_exponent,
)
from monadica.errors import CrossCheckMismatch, RankMismatch
from monadica.monoid import MonadicElement, constant_atom, is_valid
from monadica.snf import invariant_factors, smith_normal_form

# Traces of the height-one primes of [[X(X-1)(X-2)]], keyed by reference label.
TRACES = {
    "P1": {1, 3, 5, 6, 8, 9},
    "P2": {1, 3, 5, 7, 8, 9},
    "P3": {1, 4},
    "P4": {2, 3, 6},
    "P5": {2, 4, 6, 7, 9, 10},
    "P6": {2, 5, 7},
    "P7": {3, 6, 8, 9, 10},
    "P8": {4, 6, 7, 8, 9, 10},
    "P9": {5, 7, 8, 9, 10},
}


def labelled(theory) -> dict[str, PrimeIdeal]:
    by_trace = {P.trace: P for P in theory.primes}
    return {k: by_trace[frozenset(v)] for k, v in TRACES.items()}


def decomposition(theory, g) -> dict[str, int]:
    out = {}
    for k, P in labelled(theory).items():
        v = v_exponent(theory.ctx, g, P)
        if v:
            out[k] = v
    return out


def random_element(theory, rng, size=3):
    g = MonadicElement((0,) * theory.ctx.n)
    for a in theory.atom_elements:
        g = g * a ** rng.randint(0, size)
    return g


def test_prime_traces(consecutive):
    assert sorted(sorted(P.trace) for P in consecutive.primes) == sorted(sorted(t) for t in TRACES.values())
    P3 = labelled(consecutive)["P3"]
    assert (P3.kind, P3.p, P3.profile) == ("const", 2, (0, 1, 0))


def test_family_primes():
    theory = theory_of("(X-3)*(X-5)*(X-7)")
    # ids: 1 = the prime 3, 2..4 = the factors, 5 = their product over 3
    expected = [{1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 5}, {4, 5}]
    assert sorted(sorted(P.trace) for P in theory.primes) == sorted(sorted(t) for t in expected)
    single = theory_of("X")
    assert [P.trace for P in single.primes] == [frozenset({1})]


def test_v_exponent_examples(consecutive):
    atoms = consecutive.atom_elements
    assert decomposition(consecutive, atoms[5]) == {"P1": 1, "P4": 1, "P5": 1, "P7": 1, "P8": 1}
    assert decomposition(consecutive, atoms[0]) == {"P1": 1, "P2": 1, "P3": 1}
    assert decomposition(consecutive, atoms[9]) == {"P5": 2, "P7": 1, "P8": 3, "P9": 1}


def test_quotient_relation(consecutive):
    # u3 = u1 u6 / u4 at the level of divisors
    d = consecutive.atom_divisors()
    assert d[2] == [a + b - c for a, b, c in zip(d[0], d[5], d[3])]


def test_class_group_examples(consecutive):
    assert consecutive.class_group.describe() == "Z^4"
    assert theory_of("(X-3)*(X-5)*(X-7)").class_group.describe() == "Z^2"
    assert theory_of("X").class_group.is_trivial()
    assert theory_of("7").class_group.is_trivial()


def test_principal_trace_examples(consecutive):
    ctx = consecutive.ctx
    atoms = consecutive.atom_elements
    assert not is_principal_trace(ctx, atoms[7])
    assert is_principal_trace(ctx, constant_atom(ctx, 2))
    # a single profile per prime makes every e_p linear
    linear = theory_of("X*(X^2+X+2)")
    assert all(len(ps.profiles) == 1 for ps in linear.ctx.profile_sets.values())
    assert all(is_principal_trace(linear.ctx, a) for a in linear.atom_elements)


@pytest.mark.parametrize("text", ["X*(X-1)*(X-2)", "X*(X-1)*(X-3)", "(X-3)*(X-5)*(X-7)", "X*(X^2+X+2)"])
def test_principal_trace_matches_definition(text):
    """``d(gh) = d(g) d(h)`` for all ``h`` on a grid of deep and shallow points."""
    theory = theory_of(text)
    ctx = theory.ctx
    grid = [y for y in product(range(7), repeat=ctx.n)]
    for g in theory.atom_elements:
        additive = all(
            ps.e(tuple(a + b for a, b in zip(g.x, y))) == ps.e(g.x) + ps.e(y)
            for y in grid
            for ps in ctx.profile_sets.values()
        )
        assert is_principal_trace(ctx, g) == additive


def test_davenport_examples():
    trivial = davenport_lower_bound(theory_of("X").class_group)
    assert (trivial.value, trivial.exact) == (1, True)
    z2 = class_group_from_divisors([[2]], 1)
    assert z2.torsion == (2,) and z2.prime_classes == ((1,),)
    bound = davenport_lower_bound(z2)
    assert (bound.value, bound.exact) == (2, True)
    fam = davenport_lower_bound(theory_of("(X-3)*(X-5)*(X-7)").class_group)
    assert (fam.value, fam.exact) == (3, True)


@pytest.mark.parametrize("text", CORPUS)
def test_rank_formula(text):
    theory = theory_of(text)
    cg = theory.class_group
    meeting = sum(1 for P in theory.primes if P.kind == "const")
    assert cg.torsion == ()
    assert cg.free_rank == meeting - len(theory.atoms.constant_atoms)


@pytest.mark.parametrize("text", CORPUS)
def test_prime_characterizations_agree(text):
    theory = theory_of(text)
    ctx = theory.ctx
    offset = len(theory.atoms.constant_atoms)
    for p in ctx.constant_primes:
        pid = theory.constant_atom_id(p)
        over_p = [P for P in theory.primes if P.kind == "const" and P.p == p]
        assert all(pid in P.trace for P in over_p)
        traces = {frozenset(i for i in P.trace if i > offset) for P in over_p}
        assert traces == maximal_compatible_sets(ctx, theory.atoms, p)


@pytest.mark.parametrize("text", CORPUS)
def test_divisor_properties(text):
    theory = theory_of(text)
    ctx = theory.ctx
    rng = random.Random(sum(map(ord, text)) + 1)
    const_ids = {theory.constant_atom_id(p) for p in ctx.constant_primes}
    for P in theory.primes:
        assert len(P.trace & const_ids) <= 1
        for p in ctx.constant_primes:
            if theory.constant_atom_id(p) in P.trace:
                assert v_exponent(ctx, constant_atom(ctx, p), P) == 1
    seen: dict[tuple, MonadicElement] = {}
    for _ in range(25):
        g = random_element(theory, rng)
        h = random_element(theory, rng)
        dg, dh = theory.divisor(g), theory.divisor(h)
        assert all(v >= 0 for v in dg)
        assert theory.divisor(g * h) == [a + b for a, b in zip(dg, dh)]
        key = tuple(dg)
        assert seen.setdefault(key, g) == g
        for p in ctx.constant_primes:
            inv = MonadicElement((0,) * ctx.n, {p: -1})
            divides = is_valid(ctx, g * inv)
            for k in range(2, 5):
                assert is_valid(ctx, g**k * inv) == divides


@pytest.mark.parametrize("text", CORPUS)
def test_principal_divisors_have_zero_class(text):
    theory = theory_of(text)
    cg = theory.class_group
    t = len(cg.torsion)
    width = len(cg.prime_classes[0]) if cg.prime_classes else 0
    for row in theory.atom_divisors():
        for r in range(width):
            s = sum(v * c[r] for v, c in zip(row, cg.prime_classes))
            assert (s % cg.torsion[r] if r < t else s) == 0


def test_rank_mismatch_is_raised(consecutive):
    ctx = consecutive.ctx
    with pytest.raises(RankMismatch):
        class_group(ctx, consecutive.atoms, list(consecutive.primes)[1:])


def test_cross_check_detects_wrong_trace(consecutive):
    ctx = consecutive.ctx
    prime_list = list(consecutive.primes)
    i = next(k for k, P in enumerate(prime_list) if P.kind == "const")
    P = prime_list[i]
    prime_list[i] = PrimeIdeal(P.kind, P.trace | {10}, p=P.p, profile=P.profile)
    with pytest.raises(CrossCheckMismatch):
        _cross_check(ctx, consecutive.atoms, prime_list)
    primes(ctx, consecutive.atoms, cross_check=True)


matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


@settings(derandomize=True, max_examples=150, deadline=None)
@given(matrices)
def test_snf_matches_sympy(M):
    D, U, V = smith_normal_form(M)
    m, n = len(M), len(M[0])
    UMV = Matrix(U) * Matrix(M) * Matrix(V)
    assert UMV == Matrix(D)
    assert abs(Matrix(U).det()) == 1 and abs(Matrix(V).det()) == 1
    diag = [D[i][i] for i in range(min(m, n))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    nonzero = [d for d in diag if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    ours, _ = invariant_factors(M)
    theirs = [abs(int(d)) for d in sympy_invariant_factors(Matrix(M), domain=ZZ) if d]
    assert ours == theirs
