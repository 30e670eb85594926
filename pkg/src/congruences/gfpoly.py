"""Polynomials over prime fields F_p: arithmetic, gcd, factorization, divisors.

Coefficients are stored ascending, reduced into [0, p), with no trailing
zeros. Factorization is squarefree decomposition, distinct-degree splitting,
then equal-degree splitting with a fixed seed, so repeated runs agree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .intarith import is_probable_prime

_SPLITTING_SEED = 0x5EED


@dataclass(frozen=True)
class PrimeField:
    """The field F_p for a prime p."""

    p: int

    def __post_init__(self) -> None:
        if self.p < 2 or not is_probable_prime(self.p):
            raise ValueError("field order must be a prime number")

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)


@dataclass(frozen=True)
class GFPolynomial:
    """A polynomial over a prime field, coefficients ascending by power of t."""

    field: PrimeField
    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        p = self.field.p
        if any(not 0 <= c < p for c in self.coefficients):
            raise ValueError("coefficients must be reduced into [0, p)")
        if self.coefficients and self.coefficients[-1] == 0:
            raise ValueError("no trailing zero coefficients allowed")

    @classmethod
    def from_coeffs(cls, field: PrimeField, coeffs: Iterable[int]) -> GFPolynomial:
        reduced = [c % field.p for c in coeffs]
        while reduced and reduced[-1] == 0:
            reduced.pop()
        return cls(field, tuple(reduced))

    @classmethod
    def zero(cls, field: PrimeField) -> GFPolynomial:
        return cls(field, ())

    @classmethod
    def one(cls, field: PrimeField) -> GFPolynomial:
        return cls(field, (1,))

    @classmethod
    def constant(cls, field: PrimeField, c: int) -> GFPolynomial:
        return cls.from_coeffs(field, (c,))

    @classmethod
    def indeterminate(cls, field: PrimeField) -> GFPolynomial:
        return cls(field, (0, 1))

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is reported as -1
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def is_unit(self) -> bool:
        return self.degree == 0

    @property
    def lc(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def norm(self) -> int:
        """p ** degree: the number of residues modulo this polynomial."""
        if self.is_zero:
            raise ValueError("zero polynomial has no norm")
        return self.field.p**self.degree

    def monic(self) -> GFPolynomial:
        if self.is_zero:
            return self
        if self.lc == 1:
            return self
        inv = self.field.inv(self.lc)
        return GFPolynomial.from_coeffs(self.field, (c * inv for c in self.coefficients))

    def scale(self, c: int) -> GFPolynomial:
        return GFPolynomial.from_coeffs(self.field, (x * c for x in self.coefficients))

    def derivative(self) -> GFPolynomial:
        return GFPolynomial.from_coeffs(
            self.field, (i * c for i, c in enumerate(self.coefficients) if i)
        )

    def _check_field(self, other: GFPolynomial) -> None:
        if self.field != other.field:
            raise ValueError("mixed fields")

    def __add__(self, other: GFPolynomial) -> GFPolynomial:
        self._check_field(other)
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return GFPolynomial.from_coeffs(self.field, out)

    def __neg__(self) -> GFPolynomial:
        return GFPolynomial.from_coeffs(self.field, (-c for c in self.coefficients))

    def __sub__(self, other: GFPolynomial) -> GFPolynomial:
        return self + (-other)

    def __mul__(self, other: GFPolynomial) -> GFPolynomial:
        self._check_field(other)
        if self.is_zero or other.is_zero:
            return GFPolynomial.zero(self.field)
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return GFPolynomial.from_coeffs(self.field, out)

    def __divmod__(self, other: GFPolynomial) -> tuple[GFPolynomial, GFPolynomial]:
        self._check_field(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        rem = list(self.coefficients)
        div = other.coefficients
        inv = self.field.inv(div[-1])
        quo = [0] * max(len(rem) - len(div) + 1, 0)
        for shift in range(len(rem) - len(div), -1, -1):
            factor = rem[shift + len(div) - 1] * inv % p
            if factor:
                quo[shift] = factor
                for i, c in enumerate(div):
                    rem[shift + i] = (rem[shift + i] - factor * c) % p
        return (
            GFPolynomial.from_coeffs(self.field, quo),
            GFPolynomial.from_coeffs(self.field, rem[: len(div) - 1]),
        )

    def __mod__(self, other: GFPolynomial) -> GFPolynomial:
        return divmod(self, other)[1]

    def __floordiv__(self, other: GFPolynomial) -> GFPolynomial:
        return divmod(self, other)[0]

    def divides(self, other: GFPolynomial) -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """(degree, ascending coefficient tuple): the canonical divisor order."""
        return (self.degree, self.coefficients)


def poly_gcd(a: GFPolynomial, b: GFPolynomial) -> GFPolynomial:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_gcd_many(values: Sequence[GFPolynomial]) -> GFPolynomial:
    if not values:
        raise ValueError("poly_gcd_many needs at least one value")
    out = values[0]
    for v in values[1:]:
        out = poly_gcd(out, v)
    return out.monic()


def poly_ext_gcd(
    a: GFPolynomial, b: GFPolynomial
) -> tuple[GFPolynomial, GFPolynomial, GFPolynomial]:
    """(g, s, t) with s*a + t*b = g and g the monic gcd."""
    field = a.field
    one = GFPolynomial.one(field)
    zero = GFPolynomial.zero(field)
    r0, r1 = a, b
    s0, s1 = one, zero
    t0, t1 = zero, one
    while not r1.is_zero:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    inv = field.inv(r0.lc)
    return r0.monic(), s0.scale(inv), t0.scale(inv)


def poly_lcm(a: GFPolynomial, b: GFPolynomial) -> GFPolynomial:
    if a.is_zero or b.is_zero:
        return GFPolynomial.zero(a.field)
    return ((a * b) // poly_gcd(a, b)).monic()


def poly_lcm_many(values: Sequence[GFPolynomial]) -> GFPolynomial:
    if not values:
        raise ValueError("poly_lcm_many needs at least one value")
    out = values[0]
    for v in values[1:]:
        out = poly_lcm(out, v)
    return out.monic()


def pow_mod(base: GFPolynomial, exponent: int, modulus: GFPolynomial) -> GFPolynomial:
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    result = GFPolynomial.one(base.field)
    base = base % modulus
    while exponent:
        if exponent & 1:
            result = result * base % modulus
        base = base * base % modulus
        exponent >>= 1
    return result


@dataclass(frozen=True)
class FactoredPolynomial:
    """value = unit * product of monic irreducible factors ** exponents."""

    value: GFPolynomial
    unit: int
    factors: tuple[tuple[GFPolynomial, int], ...]

    def __post_init__(self) -> None:
        field = self.value.field
        if not 1 <= self.unit < field.p:
            raise ValueError("unit must be a nonzero field element")
        check = GFPolynomial.constant(field, self.unit)
        previous = None
        for poly, exponent in self.factors:
            if exponent < 1:
                raise ValueError("exponents must be at least 1")
            if poly.is_zero or poly.lc != 1 or poly.degree < 1:
                raise ValueError("factors must be monic and non-constant")
            key = poly.sort_key()
            if previous is not None and key <= previous:
                raise ValueError("factors must be sorted and distinct")
            previous = key
            for _ in range(exponent):
                check = check * poly
        if check != self.value:
            raise ValueError("factorization does not multiply back to value")


def _pth_root(f: GFPolynomial) -> GFPolynomial:
    p = f.field.p
    return GFPolynomial.from_coeffs(
        f.field, (c for i, c in enumerate(f.coefficients) if i % p == 0)
    )


def _squarefree_parts(f: GFPolynomial) -> list[tuple[GFPolynomial, int]]:
    """f monic -> [(g, e)] with f = prod g**e, g squarefree pairwise coprime."""
    p = f.field.p
    if f.degree <= 0:
        return []
    d = f.derivative()
    if d.is_zero:
        return [(g, e * p) for g, e in _squarefree_parts(_pth_root(f))]
    out: list[tuple[GFPolynomial, int]] = []
    c = poly_gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = w // y
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((g, e * p) for g, e in _squarefree_parts(_pth_root(c)))
    return out


def _distinct_degree(f: GFPolynomial) -> list[tuple[GFPolynomial, int]]:
    """f monic squarefree -> [(product of degree-d irreducible factors, d)]."""
    p = f.field.p
    x = GFPolynomial.indeterminate(f.field)
    out = []
    g = f
    h = x % g
    d = 0
    while g.degree > 0 and 2 * (d + 1) <= g.degree:
        d += 1
        h = pow_mod(h, p, g)
        gd = poly_gcd(h - x, g)
        if gd.degree > 0:
            out.append((gd, d))
            g = g // gd
            h = h % g
    if g.degree > 0:
        out.append((g, g.degree))
    return out


def _random_poly(field: PrimeField, degree: int, rng: random.Random) -> GFPolynomial:
    coeffs = [rng.randrange(field.p) for _ in range(degree)]
    coeffs.append(rng.randrange(1, field.p))
    return GFPolynomial.from_coeffs(field, coeffs)


def _equal_degree(f: GFPolynomial, d: int, rng: random.Random) -> list[GFPolynomial]:
    """f monic squarefree, all irreducible factors of degree d -> those factors."""
    p = f.field.p
    if f.degree == d:
        return [f]
    one = GFPolynomial.one(f.field)
    while True:
        u = _random_poly(f.field, rng.randrange(1, f.degree), rng)
        g = poly_gcd(u, f)
        if 0 < g.degree < f.degree:
            break
        if p == 2:
            w = GFPolynomial.zero(f.field)
            v = u % f
            for _ in range(d):
                w = (w + v) % f
                v = v * v % f
            g = poly_gcd(w, f)
        else:
            w = pow_mod(u, (p**d - 1) // 2, f)
            g = poly_gcd(w - one, f)
        if 0 < g.degree < f.degree:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def factorize_poly(h: GFPolynomial) -> FactoredPolynomial:
    """Factor a nonzero polynomial into monic irreducibles times a unit."""
    if h.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    unit = h.lc
    monic = h.monic()
    rng = random.Random(_SPLITTING_SEED)
    counts: dict[GFPolynomial, int] = {}
    for squarefree, multiplicity in _squarefree_parts(monic):
        for part, degree in _distinct_degree(squarefree):
            for irreducible in _equal_degree(part, degree, rng):
                counts[irreducible] = counts.get(irreducible, 0) + multiplicity
    factors = tuple(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
    return FactoredPolynomial(value=h, unit=unit, factors=factors)


def monic_divisors(h: GFPolynomial) -> tuple[GFPolynomial, ...]:
    """All monic divisors, ordered by (degree, coefficient tuple)."""
    if h.is_zero:
        raise ValueError("zero polynomial has no divisor list")
    factored = factorize_poly(h)
    out = [GFPolynomial.one(h.field)]
    for poly, exponent in factored.factors:
        powers = [GFPolynomial.one(h.field)]
        for _ in range(exponent):
            powers.append(powers[-1] * poly)
        out = [d * q for d in out for q in powers]
    return tuple(sorted(out, key=GFPolynomial.sort_key))


def mobius_poly(h: GFPolynomial) -> int:
    """Mobius function on F_p[t]: (-1)^(number of irreducible factors) on
    squarefree polynomials, 0 otherwise; 1 on units and 0 on the zero input."""
    if h.is_zero:
        return 0
    if h.degree == 0:
        return 1
    factored = factorize_poly(h.monic())
    if any(e >= 2 for _, e in factored.factors):
        return 0
    return -1 if len(factored.factors) % 2 else 1


def phi_poly(h: GFPolynomial) -> int:
    """Totient on F_p[t]: units coprime to h among residues modulo h.

    Evaluated by the divisor sum of mu(h/D) * |D|; phi(0) = 0 and phi(unit) = 1
    by convention.
    """
    if h.is_zero:
        return 0
    if h.degree == 0:
        return 1
    monic = h.monic()
    return sum(mobius_poly(monic // d) * d.norm() for d in monic_divisors(monic))


def residues(field: PrimeField, degree_bound: int) -> list[GFPolynomial]:
    """All polynomials of degree < degree_bound, in base-p counting order."""
    if degree_bound < 0:
        raise ValueError("degree bound must be nonnegative")
    out = []
    for combo in product(range(field.p), repeat=degree_bound):
        # reversed so index c maps to digits of c base p: coeff of t^i is
        # (c // p**i) % p
        out.append(GFPolynomial.from_coeffs(field, reversed(combo)))
    return out


def parse_poly(text: str, field: PrimeField) -> GFPolynomial:
    """Parse the textual polynomial syntax: terms c, t, c*t^k, t^k joined by
    + and -, optional leading -."""
    import re

    tokens = re.findall(r"\d+|[t^*+\-]|\S", text)
    pos = 0

    def fail(msg: str) -> None:
        raise ValueError(f"bad polynomial {text!r}: {msg}")

    def peek() -> str | None:
        return tokens[pos] if pos < len(tokens) else None

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            fail("unexpected end")
        pos += 1
        return tokens[pos - 1]

    def monomial() -> tuple[int, int]:
        coeff = 1
        power = 0
        tok = take()
        if tok.isdigit():
            coeff = int(tok)
            if peek() == "*":
                take()
                tok = take()
                if tok != "t":
                    fail("expected t after '*'")
                power = 1
        elif tok == "t":
            power = 1
        else:
            fail(f"unexpected {tok!r}")
        if power == 1 and peek() == "^":
            take()
            tok = take()
            if not tok.isdigit():
                fail("expected integer exponent")
            power = int(tok)
        return coeff, power

    if not tokens:
        fail("empty input")
    coeffs: dict[int, int] = {}
    sign = 1
    if peek() == "-":
        take()
        sign = -1
    while True:
        c, k = monomial()
        coeffs[k] = coeffs.get(k, 0) + sign * c
        nxt = peek()
        if nxt is None:
            break
        if nxt == "+":
            sign = 1
        elif nxt == "-":
            sign = -1
        else:
            fail(f"unexpected {nxt!r}")
        take()
    size = max(coeffs) + 1 if coeffs else 0
    out = [0] * size
    for k, c in coeffs.items():
        out[k] = c
    return GFPolynomial.from_coeffs(field, out)


def format_poly(poly: GFPolynomial) -> str:
    """Canonical text: descending powers, zero terms omitted, '0' for zero."""
    if poly.is_zero:
        return "0"
    parts = []
    for k in range(poly.degree, -1, -1):
        c = poly.coefficients[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        elif k == 1:
            parts.append("t" if c == 1 else f"{c}*t")
        else:
            parts.append(f"t^{k}" if c == 1 else f"{c}*t^{k}")
    return " + ".join(parts)
