"""Exact arithmetic in the cyclotomic field Q(zeta_m).

An element is a rational-coefficient residue modulo the m-th cyclotomic
polynomial Phi_m, stored as an integer coefficient vector of length
euler_phi(m) over a single positive denominator.  All arithmetic is exact;
the float embedding exists only as a cross-check and is never ground truth.

The conductor m is fixed per element and mixed-conductor arithmetic is
rejected; callers lift explicitly via CycNum.lift.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache


class ConductorMismatch(ValueError):
    """Raised when two operands live in different cyclotomic fields."""


def _poly_mul_int(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic; exact integer division is guaranteed for our inputs
    assert den[-1] == 1
    num = list(num)
    q = [0] * max(1, len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for j, y in enumerate(den):
                num[shift + j] -= c * y
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, ascending degree, monic."""
    assert m >= 1
    if m == 1:
        return (-1, 1)
    poly = [0] * m + [1]
    poly[0] = -1  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert rem == [0]
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class _Context:
    """Cached reduction data for one conductor."""

    __slots__ = ("m", "phi", "poly", "power_rows")

    def __init__(self, m: int):
        self.m = m
        self.poly = cyclotomic_polynomial(m)
        self.phi = len(self.poly) - 1
        # power_rows[t] = integer vector of x^t mod Phi_m; products of two
        # reduced vectors reach degree 2*(phi - 1), zeta powers reach m - 1
        top = max(self.m, 2 * self.phi - 1)
        rows = []
        for t in range(top):
            if t < self.phi:
                row = [0] * self.phi
                row[t] = 1
            else:
                prev = rows[t - 1]
                row = [0] + list(prev[:-1])
                lead = prev[-1]
                if lead:
                    for k in range(self.phi):
                        row[k] -= lead * self.poly[k]
            rows.append(row)
        self.power_rows = tuple(tuple(r) for r in rows)


@lru_cache(maxsize=None)
def _context(m: int) -> _Context:
    return _Context(m)


def _normalize(den: int, num: list[int]) -> tuple[int, tuple[int, ...]]:
    if den < 0:
        den = -den
        num = [-x for x in num]
    g = den
    for x in num:
        g = math.gcd(g, x)
        if g == 1:
            break
    if g > 1:
        den //= g
        num = [x // g for x in num]
    if all(x == 0 for x in num):
        den = 1
    return den, tuple(num)


class CycNum:
    """One element of Q(zeta_m), reduced mod Phi_m."""

    __slots__ = ("m", "den", "num", "_hash")

    def __init__(self, m: int, den: int, num: tuple[int, ...]):
        self.m = m
        self.den = den
        self.num = num
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zeta(m: int, k: int = 1) -> "CycNum":
        ctx = _context(m)
        return CycNum(m, 1, ctx.power_rows[k % m])

    @staticmethod
    def rational(m: int, value) -> "CycNum":
        q = Fraction(value)
        ctx = _context(m)
        num = [0] * ctx.phi
        num[0] = q.numerator
        den, num = _normalize(q.denominator, num)
        return CycNum(m, den, num)

    @staticmethod
    def zero(m: int) -> "CycNum":
        return _zero(m)

    @staticmethod
    def one(m: int) -> "CycNum":
        return _one(m)

    @staticmethod
    def from_coeffs(m: int, coeffs) -> "CycNum":
        """Build from rational coefficients of 1, zeta, zeta^2, ... (any length)."""
        ctx = _context(m)
        fracs = [Fraction(c) for c in coeffs]
        den = 1
        for f in fracs:
            den = den * f.denominator // math.gcd(den, f.denominator)
        ints = [f.numerator * (den // f.denominator) for f in fracs]
        num = [0] * ctx.phi
        for t, c in enumerate(ints):
            if c:
                row = ctx.power_rows[t % m]
                for k in range(ctx.phi):
                    num[k] += c * row[k]
        den, tup = _normalize(den, num)
        return CycNum(m, den, tup)

    # -- views -------------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Reduced rational coefficient vector, length euler_phi(m)."""
        return tuple(Fraction(x, self.den) for x in self.num)

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.num)

    @property
    def is_rational(self) -> bool:
        return all(x == 0 for x in self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("not a rational element: %s" % self)
        return Fraction(self.num[0], self.den)

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "CycNum") -> None:
        if self.m != other.m:
            raise ConductorMismatch(
                "conductor mismatch: %d vs %d (lift explicitly)" % (self.m, other.m)
            )

    def __add__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        d1, d2 = self.den, other.den
        g = math.gcd(d1, d2)
        m1, m2 = d2 // g, d1 // g
        num = [a * m1 + b * m2 for a, b in zip(self.num, other.num)]
        den, tup = _normalize(d1 * m1, num)
        return CycNum(self.m, den, tup)

    def __sub__(self, other: "CycNum") -> "CycNum":
        return self + (-other)

    def __neg__(self) -> "CycNum":
        return CycNum(self.m, self.den, tuple(-x for x in self.num))

    def __mul__(self, other: "CycNum") -> "CycNum":
        self._check(other)
        ctx = _context(self.m)
        phi = ctx.phi
        conv = [0] * (2 * phi - 1)
        for i, x in enumerate(self.num):
            if x:
                for j, y in enumerate(other.num):
                    if y:
                        conv[i + j] += x * y
        num = conv[:phi]
        for t in range(phi, 2 * phi - 1):
            c = conv[t]
            if c:
                row = ctx.power_rows[t]
                for k in range(phi):
                    num[k] += c * row[k]
        den, tup = _normalize(self.den * other.den, num)
        return CycNum(self.m, den, tup)

    def inverse(self) -> "CycNum":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.m)
        ctx = _context(self.m)
        # extended euclid in Q[x] against Phi_m (irreducible over Q)
        a = [Fraction(x, self.den) for x in self.num]
        b = [Fraction(c) for c in ctx.poly]
        r0, r1 = b, list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_frac(s0, _poly_mul_frac(q, s1))
        # r0 = gcd (nonzero constant), s0 * a == r0 mod Phi
        const = r0[0]
        assert all(c == 0 for c in r0[1:])
        inv_coeffs = [c / const for c in s0]
        return CycNum.from_coeffs(self.m, inv_coeffs)

    def __truediv__(self, other: "CycNum") -> "CycNum":
        return self * other.inverse()

    def __pow__(self, n: int) -> "CycNum":
        if n < 0:
            return self.inverse() ** (-n)
        result = _one(self.m)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- field automorphisms ----------------------------------------------

    def galois(self, k: int) -> "CycNum":
        """Apply zeta -> zeta^k; requires gcd(k, m) = 1."""
        if math.gcd(k, self.m) != 1:
            raise ValueError("galois exponent %d not coprime to %d" % (k, self.m))
        ctx = _context(self.m)
        num = [0] * ctx.phi
        for t, c in enumerate(self.num):
            if c:
                row = ctx.power_rows[(t * k) % self.m]
                for j in range(ctx.phi):
                    num[j] += c * row[j]
        den, tup = _normalize(self.den, num)
        return CycNum(self.m, den, tup)

    def conjugate(self) -> "CycNum":
        return self.galois(self.m - 1)

    def lift(self, m2: int) -> "CycNum":
        """Embed into Q(zeta_m2) where m divides m2, via zeta_m = zeta_m2^(m2/m)."""
        if m2 % self.m != 0:
            raise ConductorMismatch("cannot lift conductor %d into %d" % (self.m, m2))
        step = m2 // self.m
        ctx2 = _context(m2)
        num = [0] * ctx2.phi
        for t, c in enumerate(self.num):
            if c:
                row = ctx2.power_rows[(t * step) % m2]
                for j in range(ctx2.phi):
                    num[j] += c * row[j]
        den, tup = _normalize(self.den, num)
        return CycNum(m2, den, tup)

    # -- comparisons and embedding ----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.m == other.m and self.den == other.den and self.num == other.num

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.m, self.den, self.num))
            self._hash = h
        return h

    def to_complex(self) -> complex:
        z = 0j
        for t, c in enumerate(self.num):
            if c:
                z += c * cmath.exp(2j * cmath.pi * t / self.m)
        return z / self.den

    def __repr__(self) -> str:
        terms = []
        for t, c in enumerate(self.num):
            if c == 0:
                continue
            if t == 0:
                terms.append(str(c))
            else:
                mono = "z%d" % self.m if t == 1 else "z%d^%d" % (self.m, t)
                if c == 1:
                    terms.append(mono)
                elif c == -1:
                    terms.append("-" + mono)
                else:
                    terms.append("%d*%s" % (c, mono))
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        if self.den == 1:
            return body
        return "(%s)/%d" % (body, self.den)


def _poly_mul_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub_frac(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = a + [Fraction(0)] * (n - len(a))
    b = b + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _poly_divmod_frac(num, den):
    num = list(num)
    while len(den) > 1 and den[-1] == 0:
        den = den[:-1]
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / den[-1]
        if c:
            q[shift] = c
            for j, y in enumerate(den):
                num[shift + j] -= c * y
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def _zero(m: int) -> CycNum:
    return CycNum(m, 1, (0,) * euler_phi(m))


@lru_cache(maxsize=None)
def _one(m: int) -> CycNum:
    num = [0] * euler_phi(m)
    num[0] = 1
    return CycNum(m, 1, tuple(num))
