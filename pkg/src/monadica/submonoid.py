"""Divisor-closed submonoids of a monadic monoid and their divisor theory.

Every monadic submonoid ``[[g]]`` with ``g`` in ``[[f]]`` is the complement
of the union of the primes not containing ``g``. Its primes are the minimal
nonempty traces of the ambient primes, and its exponents come from the
ambient exponents by a ceiling ratio.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Sequence

from .divisor import ClassGroup, DivisorTheory, PrimeIdeal, class_group_from_divisors, divisor_theory, v_exponent
from .errors import NotMember
from .monoid import MonadicElement, build_context, is_valid
from .zerosum import minimal_zero_sum_sequences
from .zpoly import IntPoly, RatPoly

# Length cap of the zero-sum search behind the divisoriality test.
DIVISORIAL_SEARCH_CAP = 64


@dataclass(frozen=True)
class Submonoid:
    """The ambient monoid minus the union of the ``avoided`` primes (0-based prime indices)."""

    ambient: DivisorTheory
    avoided: frozenset[int]
    generator: MonadicElement | None = None

    def contains(self, g: MonadicElement) -> bool:
        ctx = self.ambient.ctx
        if not is_valid(ctx, g):
            return False
        return all(v_exponent(ctx, g, self.ambient.primes[i]) == 0 for i in self.avoided)

    @property
    def atom_ids(self) -> tuple[int, ...]:
        """Ambient atom ids (1-based) of the atoms lying in the submonoid."""
        divisors = self.ambient.atom_divisors()
        return tuple(
            i + 1 for i, d in enumerate(divisors) if all(d[j] == 0 for j in self.avoided)
        )

    def atom_elements(self) -> list[MonadicElement]:
        elems = self.ambient.atom_elements
        return [elems[i - 1] for i in self.atom_ids]

    def is_full(self) -> bool:
        return not self.avoided

    def to_json(self) -> dict:
        ctx = self.ambient.ctx
        return {
            "avoided": sorted(i + 1 for i in self.avoided),
            "atoms": list(self.atom_ids),
            "generator": None if self.generator is None else self.generator.to_json(),
            "avoided_primes": [
                self.ambient.primes[i].to_json(ctx, i + 1) for i in sorted(self.avoided)
            ],
        }


def full_submonoid(ambient: DivisorTheory) -> Submonoid:
    return Submonoid(ambient, frozenset(), ambient.ctx.generator)


def monadic_submonoid(ambient: DivisorTheory | Submonoid, g: MonadicElement) -> Submonoid:
    """``[[g]]`` as the complement of the primes where ``g`` has exponent zero."""
    base = ambient if isinstance(ambient, Submonoid) else full_submonoid(ambient)
    if not base.contains(g):
        raise NotMember("the generator does not lie in the given monoid")
    theory = base.ambient
    avoided = frozenset(
        i for i, P in enumerate(theory.primes) if v_exponent(theory.ctx, g, P) == 0
    )
    return Submonoid(theory, avoided, g)


def submonoid_of_polynomial(
    f: RatPoly | IntPoly, degree_bound: int | None = None
) -> Submonoid:
    """``[[f]]`` for any integer-valued ``f``, analysed inside ``[[b f]]``."""
    ctx = build_context(f)
    theory = divisor_theory(ctx, degree_bound=degree_bound)
    return monadic_submonoid(theory, ctx.generator)


@dataclass(frozen=True)
class RestrictedPrime:
    trace: frozenset[int]
    lifts: tuple[int, ...]

    def to_json(self, index: int) -> dict:
        return {
            "id": index,
            "trace": sorted(self.trace),
            "lifts": [i + 1 for i in self.lifts],
        }


def restricted_primes(sub: Submonoid) -> list[RestrictedPrime]:
    """Minimal nonempty traces of the non-avoided ambient primes, with their lifts."""
    ids = set(sub.atom_ids)
    traces: dict[frozenset[int], list[int]] = {}
    for i, P in enumerate(sub.ambient.primes):
        if i in sub.avoided:
            continue
        t = P.trace & ids
        if t:
            traces.setdefault(frozenset(t), []).append(i)
    minimal = [t for t in traces if not any(s < t for s in traces)]
    minimal.sort(key=lambda t: (min(traces[t]), sorted(t)))
    return [RestrictedPrime(t, tuple(traces[t])) for t in minimal]


def _trace_minimum(sub: Submonoid, i: int, trace: frozenset[int]) -> int:
    """``min v_Q(u)`` over the atoms ``u`` of ``trace`` for the ambient prime ``Q``."""
    elems = sub.ambient.atom_elements
    P = sub.ambient.primes[i]
    return min(v_exponent(sub.ambient.ctx, elems[u - 1], P) for u in trace)


def restricted_v_exponent(sub: Submonoid, g: MonadicElement, P: RestrictedPrime) -> int:
    """``max over lifts Q of ceil(v_Q(g) / min_{u in trace} v_Q(u))``."""
    ctx = sub.ambient.ctx
    return max(
        ceil(v_exponent(ctx, g, sub.ambient.primes[i]) / _trace_minimum(sub, i, P.trace))
        for i in P.lifts
    )


def plain_max_exponent(sub: Submonoid, g: MonadicElement, P: RestrictedPrime) -> int:
    """``max over lifts Q of v_Q(g)``; agrees with the ceiling formula when every minimum is 1."""
    ctx = sub.ambient.ctx
    return max(v_exponent(ctx, g, sub.ambient.primes[i]) for i in P.lifts)


def restricted_divisor(
    sub: Submonoid, g: MonadicElement, prime_list: Sequence[RestrictedPrime] | None = None
) -> list[int]:
    prime_list = restricted_primes(sub) if prime_list is None else prime_list
    return [restricted_v_exponent(sub, g, P) for P in prime_list]


def submonoid_class_group(sub: Submonoid) -> ClassGroup:
    """Class group from the restricted divisors of the submonoid atoms."""
    prime_list = restricted_primes(sub)
    rows = [restricted_divisor(sub, a, prime_list) for a in sub.atom_elements()]
    return class_group_from_divisors(rows, len(prime_list))


def contraction_is_divisorial(sub: Submonoid, ambient_prime: int) -> bool:
    """Whether the trace of an ambient prime (0-based index) is divisorial in ``sub``.

    With ``n`` the componentwise minimum of the restricted divisors of the
    trace atoms, the divisorial closure of the trace is the set of elements
    with divisor at least ``n``. Its minimal elements are ``n + b`` where
    ``b`` together with the class of ``n`` forms a minimal zero-sum sequence
    containing that class once. The trace is divisorial iff each of them is
    divisible by a trace atom. An empty trace is the empty ideal.
    """
    ids = set(sub.atom_ids)
    trace = sub.ambient.primes[ambient_prime].trace & ids
    if not trace:
        return True
    prime_list = restricted_primes(sub)
    elems = sub.ambient.atom_elements
    trace_divs = [restricted_divisor(sub, elems[u - 1], prime_list) for u in sorted(trace)]
    n = [min(col) for col in zip(*trace_divs)]
    cg = submonoid_class_group(sub)
    classes = list(cg.prime_classes)
    width = len(classes[0]) if classes else 0
    n_class = tuple(
        sum(c * classes[j][r] for j, c in enumerate(n)) for r in range(width)
    )
    entries = classes + [n_class]
    limits = [None] * len(classes) + [1]
    if not entries or width == 0:
        completions = [[0] * len(classes)]
    else:
        search = minimal_zero_sum_sequences(entries, cg.torsion, DIVISORIAL_SEARCH_CAP, limits)
        completions = [list(s[:-1]) for s in search.sequences if s[-1] == 1]
    for b in completions:
        a = [x + y for x, y in zip(n, b)]
        if not any(all(x >= y for x, y in zip(a, d)) for d in trace_divs):
            return False
    return True


def prime_summary(sub: Submonoid) -> list[dict]:
    return [P.to_json(i + 1) for i, P in enumerate(restricted_primes(sub))]


def ambient_prime_index(theory: DivisorTheory, P: PrimeIdeal) -> int:
    return list(theory.primes).index(P)
