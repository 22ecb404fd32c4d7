"""Reference expectations with a harness that replays them.

Atom ids follow the tool's order, which coincides with the reference
numbering ``u_1..u_10`` of ``[[X(X-1)(X-2)]]``. Reference primes are
labelled ``P1..P9`` and identified with computed primes by their traces.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Any, Callable, Sequence

from .divisor import DivisorTheory, divisor_theory
from .invariants import (
    check_product_hypotheses,
    compare_product,
    growth_schedule,
    residue_family,
)
from .monoid import MonadicElement, build_context
from .padic import e_f_exponent
from .submonoid import (
    Submonoid,
    contraction_is_divisorial,
    monadic_submonoid,
    restricted_primes,
    restricted_v_exponent,
    submonoid_class_group,
)
from .zpoly import Factorization, IntPoly, RatPoly, certify_irreducible, parse

CONSECUTIVE = "X*(X-1)*(X-2)"

# Reference atoms as (x, m): u1 = 2, u2 = 3, u3..u5 the linear factors, then quotients.
REFERENCE_ATOMS = [
    ((0, 0, 0), {2: 1}),
    ((0, 0, 0), {3: 1}),
    ((1, 0, 0), {}),
    ((0, 1, 0), {}),
    ((0, 0, 1), {}),
    ((1, 1, 0), {2: -1}),
    ((0, 1, 1), {2: -1}),
    ((1, 1, 1), {2: -1, 3: -1}),
    ((1, 2, 1), {2: -2, 3: -1}),
    ((1, 3, 1), {2: -3, 3: -1}),
]

REFERENCE_PRIMES = {
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

REFERENCE_DECOMPOSITIONS = {
    1: {"P1": 1, "P2": 1, "P3": 1},
    2: {"P4": 1, "P5": 1, "P6": 1},
    3: {"P1": 2, "P2": 1, "P4": 1, "P7": 1},
    4: {"P3": 1, "P5": 1, "P8": 1},
    # Exponent 1 at P1 follows from u5 = u1 * u7 / u4; the printed square is a typo.
    5: {"P1": 1, "P2": 2, "P6": 1, "P9": 1},
    6: {"P1": 1, "P4": 1, "P5": 1, "P7": 1, "P8": 1},
    7: {"P2": 1, "P5": 1, "P6": 1, "P8": 1, "P9": 1},
    8: {"P1": 2, "P2": 2, "P7": 1, "P8": 1, "P9": 1},
    9: {"P1": 1, "P2": 1, "P5": 1, "P7": 1, "P8": 2, "P9": 1},
    10: {"P5": 2, "P7": 1, "P8": 3, "P9": 1},
}

REFERENCE_E_F = {4: 6, 6: 6, 7: 6, 9: 6}

# Submonoid generators as (atom exponents, denominator map).
REFERENCE_SUBMONOIDS = {
    "S": ({3: 2, 4: 3, 5: 2}, {2: 3}),
    "T": ({3: 1, 4: 3, 5: 3}, {2: 3, 3: 1}),
    "V": ({3: 1, 4: 3, 5: 1}, {2: 1, 3: 1}),
    "W": ({3: 1, 4: 2, 5: 1}, {2: 2, 3: 1}),
    "Y": ({3: 1, 4: 1}, {}),
    "Z": ({3: 2, 4: 1}, {2: 1}),
}

# Atoms of H lying in the removed union U_J H.
REFERENCE_REMOVED = {
    "S": {1, 4},
    "T": {1, 2, 3, 4, 6},
    "V": {2, 3, 5, 6, 7},
    "W": {1, 2, 3, 4, 5, 6, 7},
    "Y": {2, 5, 7, 8, 9, 10},
    "Z": {1, 2, 4, 5, 7, 8, 9, 10},
}

REFERENCE_SUB_ATOMS = {
    "S": {2, 3, 5, 6, 7, 8, 9, 10},
    "T": {5, 7, 8, 9, 10},
    "V": {1, 4, 8, 9, 10},
    "W": {8, 9, 10},
    "Y": {1, 3, 4, 6},
    "Z": {3, 6},
}

REFERENCE_SUB_PRIMES = {
    "S": [{2, 3, 6}, {2, 5, 7}, {2, 6, 7, 9, 10}, {3, 5, 6, 8, 9}, {3, 5, 7, 8, 9},
          {3, 6, 8, 9, 10}, {5, 7, 8, 9, 10}, {6, 7, 8, 9, 10}],
    "T": [{5, 7}, {5, 8, 9}, {7, 9, 10}, {8, 9, 10}],
    "V": [{1, 4}, {1, 8, 9}, {4, 9, 10}, {8, 9, 10}],
    "W": [{8, 9}, {9, 10}],
    "Y": [{1, 3}, {1, 4}, {3, 6}, {4, 6}],
    "Z": [{3}, {6}],
}

REFERENCE_SUB_GROUPS = {"S": "Z^4", "T": "Z", "V": "Z", "W": "Z/2Z", "Y": "Z", "Z": "0"}

MIXED_PRIMES = (7, 13, 19, 31, 37, 43, 67)
TWO_BLOCK = "(95095*X+2)*(95095*X+3)*(6*X+5)*(6*X+7)*(6*X+11)*(6*X+13)*(6*X+19)"


def _sets(traces: Sequence[set[int] | frozenset[int]]) -> list[list[int]]:
    return sorted(sorted(t) for t in traces)


class Workspace:
    """Lazily computed objects shared by the fixtures."""

    @cached_property
    def consecutive(self) -> DivisorTheory:
        return divisor_theory(build_context(parse(CONSECUTIVE)))

    def atom(self, i: int) -> MonadicElement:
        return self.consecutive.atom_elements[i - 1]

    def label_index(self) -> dict[str, int]:
        """Reference label to 0-based computed prime index, matched by trace."""
        by_trace = {P.trace: i for i, P in enumerate(self.consecutive.primes)}
        return {k: by_trace.get(frozenset(v), -1) for k, v in REFERENCE_PRIMES.items()}

    def sub_generator(self, name: str) -> MonadicElement:
        exps, den = REFERENCE_SUBMONOIDS[name]
        g = MonadicElement((0, 0, 0))
        for i, k in exps.items():
            g = g * self.atom(i) ** k
        m = dict(g.m)
        for p, e in den.items():
            m[p] = m.get(p, 0) - e
        return MonadicElement(g.x, m)

    def sub(self, name: str) -> Submonoid:
        return monadic_submonoid(self.consecutive, self.sub_generator(name))

    @cached_property
    def mixed(self) -> dict[str, Any]:
        a = 1
        for q in MIXED_PRIMES:
            a *= q
        l1, l2, l3 = IntPoly((1, a)), IntPoly((2, a)), IntPoly((3, a))
        f0 = l1 * l2 * l3
        gs = [IntPoly.x() * f0 * 6 + q for q in MIXED_PRIMES]
        F = Factorization.from_factors([l1, l2, l3])
        G = Factorization.from_factors(gs)
        left = RatPoly(l1 * l2 * l2 * l3, 12)
        cert = check_product_hypotheses(F, G, 0, left=left, right=G.expand())
        return {"cert": cert, "factors": gs, "left": left, "right": G.expand()}

    @cached_property
    def mixed_comparison(self):
        return compare_product(self.mixed["cert"], direct=True)

    @cached_property
    def two_block(self):
        fac = parse(TWO_BLOCK).numerator
        F = Factorization.from_factors([IntPoly((2, 95095)), IntPoly((3, 95095))])
        G = Factorization.from_factors([IntPoly((q, 6)) for q in (5, 7, 11, 13, 19)])
        cert = check_product_hypotheses(F, G, 0)
        theory = divisor_theory(build_context(fac))
        return cert, compare_product(cert, direct=True), theory


@dataclass(frozen=True)
class Fixture:
    block: str
    name: str
    expected: Any
    compute: Callable[[Workspace], Any]


@dataclass(frozen=True)
class FixtureResult:
    block: str
    name: str
    passed: bool
    expected: Any
    actual: Any
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "block": self.block,
            "name": self.name,
            "passed": self.passed,
            "expected": self.expected,
            "actual": self.actual,
            "error": self.error,
        }


def _atoms_json(ws: Workspace) -> list:
    return [a.to_json() for a in ws.consecutive.atom_elements]


def _decompositions(ws: Workspace) -> dict:
    idx = ws.label_index()
    out = {}
    for u in range(1, 11):
        div = ws.consecutive.divisor(ws.atom(u))
        out[str(u)] = {k: div[i] for k, i in sorted(idx.items()) if i >= 0 and div[i]}
    return out


def _quotients(ws: Workspace) -> dict:
    div = {u: ws.consecutive.divisor(ws.atom(u)) for u in range(1, 11)}

    def rel(target: int, a: int, b: int, c: int) -> bool:
        return div[target] == [x + y - z for x, y, z in zip(div[a], div[b], div[c])]

    return {
        "u3=u1*u6/u4": rel(3, 1, 6, 4),
        "u5=u1*u7/u4": rel(5, 1, 7, 4),
        "u8=u1*u9/u4": rel(8, 1, 9, 4),
        "u10=u4*u9/u1": rel(10, 4, 9, 1),
    }


def _removed(ws: Workspace, name: str) -> list[int]:
    sub = ws.sub(name)
    traces = [ws.consecutive.primes[i].trace for i in sub.avoided]
    return sorted(set().union(*traces)) if traces else []


def _w_exponents(ws: Workspace) -> dict:
    sub = ws.sub("W")
    q1, q2 = sorted(restricted_primes(sub), key=lambda P: sorted(P.trace))
    return {
        "Q1(u8)": restricted_v_exponent(sub, ws.atom(8), q1),
        "Q1(u9)": restricted_v_exponent(sub, ws.atom(9), q1),
        "Q2(u9)": restricted_v_exponent(sub, ws.atom(9), q2),
        "Q2(u10)": restricted_v_exponent(sub, ws.atom(10), q2),
    }


def _w_lifts(ws: Workspace) -> dict:
    sub = ws.sub("W")
    idx = {i: k for k, i in ws.label_index().items()}
    return {
        str(sorted(P.trace)): sorted(idx[i] for i in P.lifts) for P in restricted_primes(sub)
    }


def _z_contraction(ws: Workspace) -> bool:
    idx = ws.label_index()["P7"]
    return contraction_is_divisorial(ws.sub("Z"), idx)


def _expected_atoms() -> list:
    return [MonadicElement(x, m).to_json() for x, m in REFERENCE_ATOMS]


def default_fixtures() -> list[Fixture]:
    fx: list[Fixture] = [
        Fixture("consecutive", "atoms", _expected_atoms(), _atoms_json),
        Fixture(
            "consecutive",
            "prime_traces",
            _sets(list(REFERENCE_PRIMES.values())),
            lambda ws: _sets([P.trace for P in ws.consecutive.primes]),
        ),
        Fixture(
            "consecutive", "class_group", "Z^4", lambda ws: ws.consecutive.class_group.describe()
        ),
        Fixture(
            "consecutive",
            "decompositions",
            {str(k): dict(sorted(v.items())) for k, v in REFERENCE_DECOMPOSITIONS.items()},
            _decompositions,
        ),
        Fixture(
            "consecutive",
            "quotient_relations",
            {"u3=u1*u6/u4": True, "u5=u1*u7/u4": True, "u8=u1*u9/u4": True, "u10=u4*u9/u1": True},
            _quotients,
        ),
        Fixture(
            "consecutive",
            "e_f",
            {str(k): v for k, v in REFERENCE_E_F.items()},
            lambda ws: {
                str(u): _value(e_f_exponent(ws.consecutive.ctx, ws.atom(u))) for u in REFERENCE_E_F
            },
        ),
    ]
    for name in REFERENCE_SUBMONOIDS:
        fx.append(
            Fixture("consecutive-submonoids", f"{name}.removed", sorted(REFERENCE_REMOVED[name]),
                    lambda ws, n=name: _removed(ws, n))
        )
        fx.append(
            Fixture("consecutive-submonoids", f"{name}.atoms", sorted(REFERENCE_SUB_ATOMS[name]),
                    lambda ws, n=name: list(ws.sub(n).atom_ids))
        )
        fx.append(
            Fixture("consecutive-submonoids", f"{name}.primes", _sets(REFERENCE_SUB_PRIMES[name]),
                    lambda ws, n=name: _sets([P.trace for P in restricted_primes(ws.sub(n))]))
        )
        fx.append(
            Fixture("consecutive-submonoids", f"{name}.class_group", REFERENCE_SUB_GROUPS[name],
                    lambda ws, n=name: submonoid_class_group(ws.sub(n)).describe())
        )
    fx += [
        Fixture(
            "consecutive-submonoids",
            "W.exponents",
            {"Q1(u8)": 2, "Q1(u9)": 1, "Q2(u10)": 2, "Q2(u9)": 1},
            _w_exponents,
        ),
        Fixture(
            "consecutive-submonoids",
            "W.lifts",
            {"[8, 9]": ["P1", "P2"], "[9, 10]": ["P5"]},
            _w_lifts,
        ),
        Fixture("consecutive-submonoids", "Z.contraction_divisorial", False, _z_contraction),
        Fixture(
            "mixed-torsion",
            "certificate",
            True,
            lambda ws: ws.mixed["cert"].all_pass,
        ),
        Fixture(
            "mixed-torsion",
            "factors_irreducible",
            True,
            lambda ws: all(certify_irreducible(h) is not None for h in ws.mixed["factors"]),
        ),
        Fixture(
            "mixed-torsion",
            "via_certificate",
            "Z/2Z x Z^6",
            lambda ws: ws.mixed_comparison.describe_expected(),
        ),
        Fixture(
            "mixed-torsion",
            "direct",
            "Z/2Z x Z^6",
            lambda ws: ws.mixed_comparison.product.describe(),
        ),
        Fixture("two-block", "certificate", True, lambda ws: ws.two_block[0].all_pass),
        Fixture(
            "two-block", "via_certificate", "Z^5", lambda ws: ws.two_block[1].describe_expected()
        ),
        Fixture(
            "two-block", "direct", "Z^5", lambda ws: ws.two_block[2].class_group.describe()
        ),
    ]
    for a, p in (((1, 1), (2, 3)), ((1, 1, 1), (3, 5, 7))):
        n = len(p)
        fx.append(
            Fixture(
                "family",
                f"p={list(p)}",
                {"class_group": "Z" if n == 2 else f"Z^{n - 1}", "davenport_at_least_n": True},
                lambda ws, a=a, p=p: _family(a, p),
            )
        )
    fx.append(
        Fixture(
            "schedule",
            "growth",
            {"strictly_increasing": True, "exceeds_index": True},
            _schedule,
        )
    )
    return fx


def _value(exps: dict[int, int]) -> int:
    out = 1
    for p, e in exps.items():
        out *= p**e
    return out


def _family(a: Sequence[int], p: Sequence[int]) -> dict:
    inst = residue_family(len(p), a, p)
    return {
        "class_group": inst.theory.class_group.describe(),
        "davenport_at_least_n": inst.bounds.davenport.value >= len(p),
    }


def _schedule(ws: Workspace) -> dict:
    values = [e.bounds.davenport.value for e in growth_schedule(3)]
    return {
        "strictly_increasing": all(x < y for x, y in zip(values, values[1:])),
        "exceeds_index": all(v > i for i, v in enumerate(values, start=1)),
    }


BLOCKS = ("consecutive", "consecutive-submonoids", "mixed-torsion", "two-block", "family", "schedule")


def run_fixtures(
    fixtures: Sequence[Fixture] | None = None, only: Sequence[str] | None = None
) -> list[FixtureResult]:
    fixtures = default_fixtures() if fixtures is None else fixtures
    ws = Workspace()
    results = []
    for fx in fixtures:
        if only and fx.block not in only:
            continue
        try:
            actual = fx.compute(ws)
            results.append(FixtureResult(fx.block, fx.name, actual == fx.expected, fx.expected, actual))
        except Exception as exc:  # reported as a failed fixture
            results.append(
                FixtureResult(fx.block, fx.name, False, fx.expected, None, f"{type(exc).__name__}: {exc}")
            )
    return results


def corrupt(fixtures: Sequence[Fixture], block: str, name: str, expected: Any) -> list[Fixture]:
    """Copy of ``fixtures`` with one expectation replaced, for harness self-tests."""
    return [
        replace(fx, expected=expected) if fx.block == block and fx.name == name else fx
        for fx in fixtures
    ]
