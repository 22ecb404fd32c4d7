import random

import pytest

from conftest import theory_of
from test_divisor import TRACES
from monadica.errors import NotMember
from monadica.monoid import MonadicElement, is_valid
from monadica.submonoid import (
    contraction_is_divisorial,
    full_submonoid,
    monadic_submonoid,
    plain_max_exponent,
    restricted_divisor,
    restricted_primes,
    restricted_v_exponent,
    submonoid_class_group,
    submonoid_of_polynomial,
)
from monadica.zpoly import parse

GENERATORS = {
    "S": MonadicElement((2, 3, 2), {2: -3}),
    "T": MonadicElement((1, 3, 3), {2: -3, 3: -1}),
    "V": MonadicElement((1, 3, 1), {2: -1, 3: -1}),
    "W": MonadicElement((1, 2, 1), {2: -2, 3: -1}),
    "Y": MonadicElement((1, 1, 0)),
    "Z": MonadicElement((2, 1, 0), {2: -1}),
}
GROUPS = {"S": "Z^4", "T": "Z", "V": "Z", "W": "Z/2Z", "Y": "Z", "Z": "0"}


def index_of(theory, label: str) -> int:
    return [P.trace for P in theory.primes].index(frozenset(TRACES[label]))


def random_element(theory, rng, size=2):
    g = MonadicElement((0,) * theory.ctx.n)
    for a in theory.atom_elements:
        g = g * a ** rng.randint(0, size)
    return g


def divides_some_power(theory, g, h, k_max=60) -> bool:
    """``g | h^k`` in the ambient monoid for some ``k <= k_max``."""
    inv = MonadicElement(tuple(-a for a in g.x), {p: -e for p, e in g.m.items()})
    return any(
        all(a >= 0 for a in (h**k * inv).x) and is_valid(theory.ctx, h**k * inv)
        for k in range(1, k_max + 1)
    )


def test_submonoid_examples(consecutive):
    S = monadic_submonoid(consecutive, GENERATORS["S"])
    assert S.avoided == {index_of(consecutive, "P3")}
    assert set(S.atom_ids) == {2, 3, 5, 6, 7, 8, 9, 10}
    full = monadic_submonoid(consecutive, consecutive.ctx.generator)
    assert full.is_full() and len(full.atom_ids) == 10
    Z = monadic_submonoid(consecutive, GENERATORS["Z"])
    assert set(Z.atom_ids) == {3, 6}
    removed = set(range(1, 11)) - set(Z.atom_ids)
    assert removed == {1, 2, 4, 5, 7, 8, 9, 10}


def test_restricted_primes_examples(consecutive):
    W = monadic_submonoid(consecutive, GENERATORS["W"])
    rp = restricted_primes(W)
    assert [sorted(P.trace) for P in rp] == [[8, 9], [9, 10]]
    assert sorted(rp[0].lifts) == sorted(index_of(consecutive, k) for k in ("P1", "P2"))
    assert list(rp[1].lifts) == [index_of(consecutive, "P5")]
    full = restricted_primes(full_submonoid(consecutive))
    assert sorted(sorted(P.trace) for P in full) == sorted(sorted(P.trace) for P in consecutive.primes)
    Z = monadic_submonoid(consecutive, GENERATORS["Z"])
    assert sorted(sorted(P.trace) for P in restricted_primes(Z)) == [[3], [6]]


def test_restricted_exponents_examples(consecutive):
    W = monadic_submonoid(consecutive, GENERATORS["W"])
    q1, q2 = restricted_primes(W)
    u = consecutive.atom_elements
    assert restricted_v_exponent(W, u[7], q1) == 2
    assert restricted_v_exponent(W, u[8], q1) == 1
    assert restricted_v_exponent(W, u[8], q2) == 1
    assert restricted_v_exponent(W, u[9], q2) == 2
    full = full_submonoid(consecutive)
    rp = restricted_primes(full)
    for a in u:
        assert sorted(restricted_divisor(full, a, rp)) == sorted(consecutive.divisor(a))


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_class_groups(consecutive, name):
    sub = monadic_submonoid(consecutive, GENERATORS[name])
    assert submonoid_class_group(sub).describe() == GROUPS[name]


def test_fractional_generator():
    sub = submonoid_of_polynomial(parse("(X*(X-1)^2*(X-2))/12"))
    assert submonoid_class_group(sub).describe() == "Z/2Z"
    sub = submonoid_of_polynomial(parse("(X^2*(X-1))/2"))
    assert submonoid_class_group(sub).is_trivial()


def test_contraction_examples(consecutive):
    Z = monadic_submonoid(consecutive, GENERATORS["Z"])
    assert not contraction_is_divisorial(Z, index_of(consecutive, "P7"))
    full = full_submonoid(consecutive)
    assert all(contraction_is_divisorial(full, i) for i in range(len(consecutive.primes)))
    W = monadic_submonoid(consecutive, GENERATORS["W"])
    assert contraction_is_divisorial(W, index_of(consecutive, "P1"))


def test_not_member(consecutive):
    S = monadic_submonoid(consecutive, GENERATORS["S"])
    with pytest.raises(NotMember):
        monadic_submonoid(S, consecutive.atom_elements[0])
    with pytest.raises(NotMember):
        monadic_submonoid(consecutive, MonadicElement((1, 0, 0), {2: -1}))


@pytest.mark.parametrize("text", ["X*(X-1)*(X-2)", "X*(X-1)*(X-3)", "(X-3)*(X-5)*(X-7)", "X*(X-1)*(X-2)*(X-3)"])
def test_membership_duality_and_transitivity(text):
    theory = theory_of(text)
    rng = random.Random(sum(map(ord, text)))
    for _ in range(20):
        g = random_element(theory, rng, 1)
        h = random_element(theory, rng, 1)
        if not any(g.x) and not g.m or not any(h.x) and not h.m:
            continue
        Hh = monadic_submonoid(theory, h)
        supp_g = {i for i, v in enumerate(theory.divisor(g)) if v}
        supp_h = {i for i, v in enumerate(theory.divisor(h)) if v}
        assert Hh.contains(g) == (supp_g <= supp_h)
        assert Hh.contains(g) == divides_some_power(theory, g, h)
        if Hh.contains(g):
            assert monadic_submonoid(Hh, g).avoided == monadic_submonoid(theory, g).avoided


@pytest.mark.parametrize("name", sorted(GENERATORS))
def test_restricted_prime_structure(consecutive, name):
    sub = monadic_submonoid(consecutive, GENERATORS[name])
    ids = set(sub.atom_ids)
    rp = restricted_primes(sub)
    traces = {
        frozenset(P.trace & ids)
        for i, P in enumerate(consecutive.primes)
        if i not in sub.avoided and P.trace & ids
    }
    for P in rp:
        for i in P.lifts:
            assert consecutive.primes[i].trace & ids == P.trace
        assert not any(t < P.trace for t in traces)
    const_ids = {consecutive.constant_atom_id(p) for p in consecutive.ctx.constant_primes}
    for P in rp:
        if P.trace & const_ids:
            for a in sub.atom_elements():
                assert restricted_v_exponent(sub, a, P) == plain_max_exponent(sub, a, P)
