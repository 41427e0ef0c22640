"""Exact cyclotomic arithmetic, cross-checked against the complex embedding.

The floating-point embedding is an independent oracle: it shares no code
with the polynomial-residue arithmetic, so agreement on random inputs is
strong evidence that the exact layer multiplies, divides, and reduces
correctly.
"""

from __future__ import annotations

import cmath
import math
import random
from fractions import Fraction

import pytest

from fusionkit.cyclo import (
    ConductorMismatch,
    CycNum,
    cyclotomic_polynomial,
    euler_phi,
)

CONDUCTORS = [3, 4, 5, 7, 8, 9, 12, 16, 25, 27, 49]


def random_cyc(rng: random.Random, m: int) -> CycNum:
    phi = euler_phi(m)
    out = CycNum.zero(m)
    for i in range(phi):
        c = rng.randint(-4, 4)
        if c:
            out = out + CycNum.rational(m, c) * CycNum.zeta(m, i)
    return out


def close(a: complex, b: complex, tol: float = 1e-8) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def test_phi_function():
    assert [euler_phi(m) for m in (1, 2, 3, 4, 8, 9, 12, 49)] == [1, 1, 2, 2, 4, 6, 4, 42]


def test_cyclotomic_polynomials_known():
    p = 7
    assert cyclotomic_polynomial(p) == tuple([1] * p)
    assert cyclotomic_polynomial(8) == (1, 0, 0, 0, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    for m in CONDUCTORS:
        poly = cyclotomic_polynomial(m)
        assert len(poly) == euler_phi(m) + 1
        assert poly[-1] == 1


def test_root_satisfies_minimal_polynomial():
    for m in CONDUCTORS:
        z = CycNum.zeta(m)
        acc = CycNum.zero(m)
        for i, c in enumerate(cyclotomic_polynomial(m)):
            acc = acc + CycNum.rational(m, c) * z ** i
        assert acc.is_zero


def test_zeta_has_exact_order():
    for m in CONDUCTORS:
        z = CycNum.zeta(m)
        assert z ** m == CycNum.one(m)
        for d in range(1, m):
            if m % d == 0:
                assert z ** d != CycNum.one(m)


def test_primitive_root_sums():
    # sum over all nontrivial p-th roots of unity is -1
    for p in (3, 5, 7):
        acc = CycNum.zero(p)
        for k in range(1, p):
            acc = acc + CycNum.zeta(p, k)
        assert acc == CycNum.rational(p, -1)
        assert acc.is_rational and acc.as_rational() == Fraction(-1)


def test_arithmetic_matches_complex_embedding():
    rng = random.Random(20260823)
    for m in CONDUCTORS:
        for _ in range(12):
            x = random_cyc(rng, m)
            y = random_cyc(rng, m)
            xc, yc = x.to_complex(), y.to_complex()
            assert close((x + y).to_complex(), xc + yc)
            assert close((x - y).to_complex(), xc - yc)
            assert close((x * y).to_complex(), xc * yc)
            assert close(x.conjugate().to_complex(), xc.conjugate())
            if not y.is_zero:
                assert close((x / y).to_complex(), xc / yc)


def test_inverse_is_exact():
    rng = random.Random(7)
    for m in CONDUCTORS:
        for _ in range(8):
            x = random_cyc(rng, m)
            if x.is_zero:
                continue
            assert x * x.inverse() == CycNum.one(m)


def test_power_matches_repeated_product():
    rng = random.Random(11)
    for m in (5, 8, 9):
        x = random_cyc(rng, m)
        acc = CycNum.one(m)
        for n in range(6):
            assert x ** n == acc
            acc = acc * x


def test_galois_is_field_automorphism():
    rng = random.Random(13)
    for m in (5, 7, 8, 9, 12):
        units = [k for k in range(1, m) if math.gcd(k, m) == 1]
        for k in units[:4]:
            x, y = random_cyc(rng, m), random_cyc(rng, m)
            assert (x + y).galois(k) == x.galois(k) + y.galois(k)
            assert (x * y).galois(k) == x.galois(k) * y.galois(k)
            assert CycNum.zeta(m).galois(k) == CycNum.zeta(m, k)


def test_conjugate_is_galois_minus_one():
    for m in (5, 8, 12):
        z = CycNum.zeta(m)
        assert z.conjugate() == z.galois(m - 1)
        assert close(z.conjugate().to_complex(), z.to_complex().conjugate())


def test_lift_preserves_value():
    rng = random.Random(17)
    for m, m2 in ((3, 9), (4, 8), (5, 25), (3, 12)):
        x = random_cyc(rng, m)
        y = x.lift(m2)
        assert y.m == m2
        assert close(x.to_complex(), y.to_complex())


def test_mixed_conductor_arithmetic_rejected():
    a = CycNum.zeta(5)
    b = CycNum.zeta(7)
    with pytest.raises(ConductorMismatch):
        _ = a + b
    with pytest.raises(ConductorMismatch):
        _ = a * b


def test_rational_round_trip():
    x = CycNum.rational(8, Fraction(3, 4))
    assert x.is_rational
    assert x.as_rational() == Fraction(3, 4)
    assert (x + x).as_rational() == Fraction(3, 2)


def test_half_turns_and_quarter_turns():
    # ζ_4 = i: square is -1, embedding agrees
    i = CycNum.zeta(4)
    assert i * i == CycNum.rational(4, -1)
    assert close(i.to_complex(), 1j)
    # ζ_8^2 = ζ_4 after lifting
    z8 = CycNum.zeta(8)
    assert z8 * z8 == CycNum.zeta(4).lift(8)
    assert close((z8 ** 2).to_complex(), cmath.exp(2j * cmath.pi / 4))
