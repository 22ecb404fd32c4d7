"""Integer and rational univariate polynomials.

Coefficient tuples are stored low-to-high degree. ``IntPoly`` is an exact
polynomial over Z, ``RatPoly`` an integer polynomial over a positive integer
denominator, and ``Factorization`` the content/irreducible split of an
integer polynomial.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

from sympy import factorint
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_factor_list

from .errors import FactorizationFailed, ParseError

DEFAULT_DEGREE_CAP = 12
DEFAULT_COEFF_BITS_CAP = 4096


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[i]`` multiplies ``X**i``."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, a: int) -> IntPoly:
        return cls((a,))

    @classmethod
    def linear(cls, a: int, b: int) -> IntPoly:
        """The polynomial ``a*X + b``."""
        return cls((b, a))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        return reduce(gcd, self.coeffs, 0)

    @property
    def is_primitive(self) -> bool:
        return bool(self.coeffs) and self.content() == 1 and self.lc > 0

    def primitive_part(self) -> IntPoly:
        """Divide by the content and make the leading coefficient positive."""
        c = self.content()
        if c == 0:
            return self
        if self.lc < 0:
            c = -c
        return IntPoly(a // c for a in self.coeffs)

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __neg__(self) -> IntPoly:
        return IntPoly(-a for a in self.coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _as_intpoly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_as_intpoly(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _as_intpoly(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        other = _as_intpoly(other)
        if self.is_zero() or other.is_zero():
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise ValueError("negative exponent")
        result = IntPoly((1,))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self) -> IntPoly:
        return IntPoly(i * a for i, a in enumerate(self.coeffs) if i)

    def scale(self, c: int) -> IntPoly:
        return IntPoly(c * a for a in self.coeffs)

    def shift(self, s: int) -> IntPoly:
        """The polynomial ``p(X + s)``."""
        result = IntPoly()
        lin = IntPoly((s, 1))
        for a in reversed(self.coeffs):
            result = result * lin + a
        return result

    def exact_div(self, other: IntPoly) -> IntPoly | None:
        """Quotient in Z[X] if ``other`` divides ``self`` exactly, else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return IntPoly() if not rem else None
        quot = [0] * (len(rem) - dq)
        lc = other.lc
        for k in range(len(rem) - 1 - dq, -1, -1):
            top = rem[k + dq]
            if top % lc:
                return None
            q = top // lc
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        if any(rem):
            return None
        return IntPoly(quot)

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def _as_intpoly(p: IntPoly | int) -> IntPoly:
    return p if isinstance(p, IntPoly) else IntPoly((p,))


def format_poly(coeffs: Sequence[int]) -> str:
    """Render coefficients in the grammar accepted by :func:`parse`."""
    if not coeffs:
        return "0"
    parts: list[str] = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if i == 0:
            body = str(mag)
        else:
            mono = "X" if i == 1 else f"X^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if sign == "-" else "") + body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


@dataclass(frozen=True)
class RatPoly:
    """``numerator / denominator`` with a positive, reduced denominator."""

    numerator: IntPoly
    denominator: int = 1

    def __post_init__(self) -> None:
        num, den = self.numerator, self.denominator
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = -num, -den
        g = gcd(num.content(), den)
        if g > 1:
            num = IntPoly(a // g for a in num.coeffs)
            den //= g
        if num.is_zero():
            den = 1
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def of(cls, p: IntPoly | RatPoly | int) -> RatPoly:
        if isinstance(p, RatPoly):
            return p
        return cls(_as_intpoly(p), 1)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    @property
    def degree(self) -> int:
        return self.numerator.degree

    def __add__(self, other: RatPoly) -> RatPoly:
        other = RatPoly.of(other)
        return RatPoly(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __neg__(self) -> RatPoly:
        return RatPoly(-self.numerator, self.denominator)

    def __sub__(self, other: RatPoly) -> RatPoly:
        return self + (-RatPoly.of(other))

    def __mul__(self, other: RatPoly) -> RatPoly:
        other = RatPoly.of(other)
        return RatPoly(self.numerator * other.numerator, self.denominator * other.denominator)

    def __pow__(self, k: int) -> RatPoly:
        return RatPoly(self.numerator**k, self.denominator**k)

    def div_int(self, c: int) -> RatPoly:
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return RatPoly(self.numerator, self.denominator * c)

    def __str__(self) -> str:
        if self.denominator == 1:
            return str(self.numerator)
        return f"({self.numerator})/{self.denominator}"


def eval_poly(p: RatPoly | IntPoly, x: int) -> Fraction:
    """Exact value of ``p`` at the integer ``x``."""
    p = RatPoly.of(p)
    return Fraction(p.numerator(x), p.denominator)


def is_integer_valued(p: RatPoly | IntPoly) -> bool:
    """True iff ``p`` maps Z into Z; checks the values at 0, ..., deg p."""
    p = RatPoly.of(p)
    if p.denominator == 1:
        return True
    return all(p.numerator(c) % p.denominator == 0 for c in range(p.degree + 1))


def fixed_divisor(p: IntPoly) -> int:
    """gcd of all values of ``p`` on Z, from the values at 0, ..., deg p."""
    if p.is_zero():
        raise ValueError("fixed divisor of the zero polynomial")
    return reduce(gcd, (p(c) for c in range(p.degree + 1)), 0)


def prime_factorization(n: int) -> dict[int, int]:
    """Prime-exponent map of ``|n|`` (empty for 1)."""
    n = abs(n)
    if n == 0:
        raise ValueError("0 has no prime factorization")
    if n == 1:
        return {}
    return {int(p): int(e) for p, e in factorint(n).items()}


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class Factorization:
    """``sign * constant * prod(factor**mult)`` with primitive irreducible factors."""

    sign: int = 1
    constant: Mapping[int, int] = field(default_factory=dict)
    factors: tuple[tuple[IntPoly, int], ...] = ()

    def constant_value(self) -> int:
        out = 1
        for p, e in self.constant.items():
            out *= p**e
        return out

    def expand(self) -> IntPoly:
        out = IntPoly.const(self.sign * self.constant_value())
        for f, k in self.factors:
            out = out * f**k
        return out

    @classmethod
    def from_factors(
        cls, factors: Sequence[IntPoly | tuple[IntPoly, int]], constant: int = 1
    ) -> Factorization:
        """Assemble a factorization from trusted irreducible factors.

        Each factor is normalized to a positive leading coefficient with any
        content moved into the constant. Repeated factors are merged.
        """
        sign = -1 if constant < 0 else 1
        const = abs(constant)
        merged: dict[tuple[int, ...], int] = {}
        order: list[IntPoly] = []
        for item in factors:
            f, k = item if isinstance(item, tuple) else (item, 1)
            c = f.content()
            if f.lc < 0:
                sign = -sign if k % 2 else sign
            const *= c**k
            g = f.primitive_part()
            if g.coeffs not in merged:
                order.append(g)
                merged[g.coeffs] = 0
            merged[g.coeffs] += k
        facs = tuple((g, merged[g.coeffs]) for g in order if not g.is_constant())
        return cls(sign, prime_factorization(const), facs)


def factor_order(p: IntPoly) -> tuple:
    """Canonical factor order: degree, then absolute coefficients from the constant term up."""
    return (p.degree, tuple(abs(a) for a in p.coeffs), p.coeffs)


def factor(
    p: IntPoly,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    coeff_bits_cap: int = DEFAULT_COEFF_BITS_CAP,
) -> Factorization:
    """Complete factorization of ``p`` over Z[X].

    Every nonconstant factor is checked by :func:`certify_irreducible`;
    ``FactorizationFailed`` is raised when that certificate cannot be found or
    when the input exceeds the configured caps.
    """
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > degree_cap:
        raise FactorizationFailed(
            f"degree {p.degree} exceeds cap {degree_cap}; supply the factors explicitly"
        )
    if max(abs(a) for a in p.coeffs).bit_length() > coeff_bits_cap:
        raise FactorizationFailed("coefficient size exceeds cap; supply the factors explicitly")
    content, facs = dup_factor_list([ZZ(a) for a in reversed(p.coeffs)], ZZ)
    pairs: list[tuple[IntPoly, int]] = []
    for f, k in facs:
        g = IntPoly(int(a) for a in reversed(f))
        pairs.append((g, int(k)))
    pairs.sort(key=lambda pair: factor_order(pair[0]))
    result = Factorization.from_factors(pairs, int(content))
    for g, _ in result.factors:
        if certify_irreducible(g) is None:
            raise FactorizationFailed(f"could not certify {g} irreducible")
    if result.expand() != p:
        raise FactorizationFailed(f"factors of {p} do not multiply back")
    return result


def eisenstein_at_point(p: IntPoly, q: int) -> bool:
    """Reversed Eisenstein test at the prime ``q``.

    True when ``q`` does not divide the constant term, ``q**2`` does not divide
    the leading coefficient and ``q`` divides every other coefficient. A true
    result proves ``p`` irreducible in Z[X]; false says nothing.
    """
    c = p.coeffs
    if len(c) < 2:
        return False
    if c[0] % q == 0 or c[-1] % (q * q) == 0:
        return False
    return all(a % q == 0 for a in c[1:])


def _standard_eisenstein(p: IntPoly, q: int) -> bool:
    c = p.coeffs
    if c[-1] % q == 0 or c[0] % (q * q) == 0:
        return False
    return all(a % q == 0 for a in c[:-1])


def _eisenstein_certificate(p: IntPoly) -> str | None:
    c = p.coeffs
    low = reduce(gcd, c[:-1], 0)
    for q in prime_factorization(low) if low else ():
        if _standard_eisenstein(p, q):
            return f"eisenstein:{q}"
    high = reduce(gcd, c[1:], 0)
    for q in prime_factorization(high) if high else ():
        if eisenstein_at_point(p, q):
            return f"reversed-eisenstein:{q}"
    return None


# Arithmetic in F_q[X]; polynomials are lists low-to-high with no trailing zeros.

def _fq_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fq_divmod(a: list[int], b: list[int], q: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv = pow(b[-1], -1, q)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        coef = a[k + db] * inv % q
        quot[k] = coef
        if coef:
            for j, bj in enumerate(b):
                a[k + j] = (a[k + j] - coef * bj) % q
    return _fq_trim(quot), _fq_trim(a[:db] if db else [])


def _fq_mul(a: list[int], b: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % q
    return _fq_trim(out)


def _fq_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    while b:
        a, b = b, _fq_divmod(a, b, q)[1]
    if a:
        inv = pow(a[-1], -1, q)
        a = [x * inv % q for x in a]
    return a


def _fq_powmod(base: list[int], e: int, mod: list[int], q: int) -> list[int]:
    result = [1]
    base = _fq_divmod(base, mod, q)[1]
    while e:
        if e & 1:
            result = _fq_divmod(_fq_mul(result, base, q), mod, q)[1]
        base = _fq_divmod(_fq_mul(base, base, q), mod, q)[1]
        e >>= 1
    return result


def _fq_sub(a: list[int], b: list[int], q: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _fq_trim([(x - y) % q for x, y in zip(a, b)])


def _distinct_degree_pattern(p: IntPoly, q: int) -> list[int] | None:
    """Degrees of the irreducible factors of ``p`` mod ``q``.

    None when ``q`` divides the leading coefficient or ``p`` is not
    square-free mod ``q``.
    """
    f = _fq_trim([a % q for a in p.coeffs])
    if len(f) != len(p.coeffs):
        return None
    df = _fq_trim([i * a % q for i, a in enumerate(f)][1:])
    if not df or len(_fq_gcd(f, df, q)) > 1:
        return None
    inv = pow(f[-1], -1, q)
    f = [a * inv % q for a in f]
    degrees: list[int] = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _fq_powmod(h, q, f, q)
        g = _fq_gcd(f, _fq_sub(h, [0, 1], q), q)
        if len(g) > 1:
            degrees.extend([d] * ((len(g) - 1) // d))
            f = _fq_divmod(f, g, q)[0]
            h = _fq_divmod(h, f, q)[1]
    if len(f) > 1:
        degrees.append(len(f) - 1)
    return degrees


def _subset_sums(degrees: Sequence[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _small_primes(count: int) -> list[int]:
    out: list[int] = []
    k = 2
    while len(out) < count:
        if all(k % r for r in out if r * r <= k):
            out.append(k)
        k += 1
    return out


def certify_irreducible(p: IntPoly, prime_budget: int = 40) -> str | None:
    """Return a short irreducibility certificate for primitive ``p``, or None.

    Tried in order: degree one; Eisenstein and reversed Eisenstein, also after
    small shifts ``X -> X + s``; intersection of the factor-degree patterns
    modulo the first ``prime_budget`` primes.
    """
    if p.degree < 1 or p.content() != 1:
        return None
    if p.degree == 1:
        return "linear"
    for s in (0, 1, -1, 2, -2, 3, -3):
        cert = _eisenstein_certificate(p.shift(s) if s else p)
        if cert:
            return cert if s == 0 else f"{cert}@shift{s}"
    n = p.degree
    possible = set(range(1, n))
    used: list[int] = []
    for q in _small_primes(prime_budget):
        pattern = _distinct_degree_pattern(p, q)
        if pattern is None:
            continue
        used.append(q)
        possible &= _subset_sums(pattern)
        if not possible:
            return "degree-pattern:" + ",".join(map(str, used))
    return None


_TOKEN = re.compile(r"\s*(?:(\d+)|([Xx])|(.))")


def parse(text: str) -> RatPoly:
    """Parse the polynomial grammar: integers, ``X``, ``+ - * ^ / ( )``.

    Division is only allowed by nonzero integer constants. Juxtaposition such
    as ``6X`` or ``2(X+1)`` is read as multiplication.
    """
    tokens: list[tuple[str, str]] = []
    for m in _TOKEN.finditer(text):
        num, var, other = m.groups()
        if num is not None:
            tokens.append(("int", num))
        elif var is not None:
            tokens.append(("X", var))
        elif other is not None:
            if other not in "+-*^/()":
                raise ParseError(f"unexpected character {other!r}")
            tokens.append((other, other))
    if not tokens:
        raise ParseError("empty input")
    parser = _Parser(tokens)
    result = parser.expr()
    if parser.pos != len(tokens):
        raise ParseError(f"unexpected token {tokens[parser.pos][1]!r}")
    return result


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            found = self.tokens[self.pos][1] if self.pos < len(self.tokens) else "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}")
        value = self.tokens[self.pos][1]
        self.pos += 1
        return value

    def expr(self) -> RatPoly:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatPoly:
        value = self.unary()
        while True:
            kind = self.peek()
            if kind == "*":
                self.take("*")
                value = value * self.unary()
            elif kind == "/":
                self.take("/")
                rhs = self.unary()
                if rhs.degree > 0 or rhs.denominator != 1:
                    raise ParseError("division is only allowed by integer constants")
                if rhs.is_zero():
                    raise ParseError("division by zero")
                value = value.div_int(rhs.numerator.coeffs[0])
            elif kind in ("int", "X", "("):
                value = value * self.power()
            else:
                return value

    def unary(self) -> RatPoly:
        if self.peek() == "-":
            self.take("-")
            return -self.unary()
        if self.peek() == "+":
            self.take("+")
            return self.unary()
        return self.power()

    def power(self) -> RatPoly:
        base = self.atom()
        if self.peek() == "^":
            self.take("^")
            exponent = int(self.take("int"))
            return base**exponent
        return base

    def atom(self) -> RatPoly:
        kind = self.peek()
        if kind == "int":
            return RatPoly.of(int(self.take("int")))
        if kind == "X":
            self.take("X")
            return RatPoly.of(IntPoly.x())
        if kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        found = self.tokens[self.pos][1] if self.pos < len(self.tokens) else "end of input"
        raise ParseError(f"unexpected {found!r}")
