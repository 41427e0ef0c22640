"""Matrix catalog and BFS closure, checked against hand-built oracles.

The quaternion oracle is written out symbol by symbol from the standard
presentation, with no shared code, and matched to the closure of the
determinant-one clock and shift by explicit isomorphism search.
"""

from __future__ import annotations

import random

import pytest

from fusionkit.cyclo import CycNum
from fusionkit.fingroup import TableGroup, isomorphic, recognize
from fusionkit.matgroup import (
    CapExceeded,
    CycMatrix,
    closure,
    in_truncated_torus_extension,
    legendre_symbol,
    min_level,
    minus_identity,
    scalar_indices,
    std_matrix,
    torus_extension_generators,
    torus_extension_group,
)


def quaternion_oracle() -> TableGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k} built from the symbol rules alone."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(x: str, y: str) -> str:
        sign = 1
        if x.startswith("-"):
            sign, x = -sign, x[1:]
        if y.startswith("-"):
            sign, y = -sign, y[1:]
        if x == "1":
            out = y
        elif y == "1":
            out = x
        elif x == y:
            out, sign = "1", -sign
        else:
            out = base[(x, y)]
        if out.startswith("-"):
            sign, out = -sign, out[1:]
        return out if sign == 1 else "-" + out

    idx = {n: i for i, n in enumerate(names)}
    table = [[idx[mul(a, b)] for b in names] for a in names]
    return TableGroup(table, names)


def test_quaternion_oracle_is_a_group():
    Q = quaternion_oracle()
    n = Q.order
    for a in range(n):
        for b in range(n):
            for c in range(n):
                assert Q.mult(Q.mult(a, b), c) == Q.mult(a, Q.mult(b, c))
    assert sorted(Q.element_order(i) for i in range(n)) == [1, 2, 4, 4, 4, 4, 4, 4]


def test_clock_and_shift_close_to_quaternion_group():
    A = std_matrix(2, "A", det_one=True)
    B = std_matrix(2, "B", det_one=True)
    G = closure([A, B], expected=8)
    assert G.order == 8
    assert isomorphic(G, quaternion_oracle())
    assert recognize(G) == "Q8"


def test_clock_shift_commutator_all_primes():
    # B A = zeta (A B) exactly, at every supported prime
    for p in (2, 3, 5, 7):
        det_one = p == 2
        A = std_matrix(p, "A", det_one=det_one)
        B = std_matrix(p, "B", det_one=det_one)
        m = A.m
        z = CycNum.zeta(m, m // p)
        assert B * A == (A * B).scalar_mul(z)


def test_generator_determinants_are_one():
    for p in (2, 3, 5, 7):
        A = std_matrix(p, "A", det_one=(p == 2))
        B = std_matrix(p, "B", det_one=(p == 2))
        one = CycNum.one(A.m)
        assert A.det() == one
        assert B.det() == one


def test_closure_orders():
    for p, expect in ((3, 27), (5, 125)):
        A = std_matrix(p, "A")
        B = std_matrix(p, "B")
        G = closure([A, B], expected=expect)
        assert G.order == expect
        assert len(scalar_indices(G)) == p


def test_diagonal_matrix_relations():
    for p in (3, 5, 7):
        A = std_matrix(p, "A")
        B = std_matrix(p, "B")
        D = std_matrix(p, "D")
        m = A.m
        z = CycNum.zeta(m, m // p)
        assert D * A == A * D
        assert D * B == ((A * A) * B).scalar_mul(z) * D
        acc = CycMatrix.identity(p, m)
        for _ in range(p):
            acc = acc * D
        assert acc == CycMatrix.identity(p, m)


def test_scaling_matrix_relations():
    rng = random.Random(2026)
    for p in (3, 5, 7):
        A = std_matrix(p, "A")
        B = std_matrix(p, "B")
        ks = [k for k in range(2, p) ]
        for k in rng.sample(ks, min(3, len(ks))):
            S = std_matrix(p, "sigma", k=k)
            kinv = pow(k, -1, p)
            assert S * A == matrix_power(A, k) * S
            assert S * B == matrix_power(B, kinv) * S
            one = CycNum.one(A.m)
            assert S.det() == one


def matrix_power(mat: CycMatrix, n: int) -> CycMatrix:
    acc = CycMatrix.identity(mat.dim, mat.m)
    for _ in range(n):
        acc = acc * mat
    return acc


def test_scaling_signs_follow_legendre():
    # the -1 scalar lands exactly on the non-residues, making det 1
    for p in (3, 5, 7):
        residues = {pow(x, 2, p) for x in range(1, p)}
        for k in range(1, p):
            expect = 1 if k in residues else -1
            assert legendre_symbol(k, p) == expect


def test_tau_relations():
    for p in (3, 5, 7):
        A = std_matrix(p, "A")
        T = std_matrix(p, "tau")
        assert T * T == CycMatrix.identity(p, A.m)
        assert T * A == matrix_power(A, p - 1) * T
        # det tau = (-1)^((p-1)/2): +1 iff p = 1 mod 4
        expect = CycNum.one(A.m) if p % 4 == 1 else CycNum.rational(A.m, -1)
        assert T.det() == expect


def test_p2_catalog():
    F = std_matrix(2, "F")
    H = std_matrix(2, "H")
    A = std_matrix(2, "A", det_one=True)
    one = CycNum.one(F.m)
    assert F.det() == one
    assert H.det() == one
    assert F * F == A
    q16 = closure([std_matrix(2, "A", det_one=True), std_matrix(2, "B", det_one=True), F],
                  expected=16)
    assert q16.order == 16
    o48 = closure([std_matrix(2, "A", det_one=True), std_matrix(2, "B", det_one=True), F, H],
                  expected=48)
    assert o48.order == 48


def test_closure_cap_enforced():
    A = std_matrix(5, "A")
    B = std_matrix(5, "B")
    with pytest.raises(CapExceeded):
        closure([A, B], cap=10)


def test_group_inverse_and_negative_power_policy():
    A = std_matrix(3, "A")
    with pytest.raises(ValueError):
        _ = A ** -1
    G = closure([A], expected=3)
    i = G.index[A]
    inv = G.elements[G.inv(i)]
    assert inv * A == CycMatrix.identity(3, A.m)


def test_minus_identity():
    M = minus_identity(3)
    assert M * M == CycMatrix.identity(3, M.m)
    assert M.trace() == CycNum.rational(M.m, -3)


def test_torus_truncation_orders():
    # det-one torus at level n has order p^(n(p-1)); full torus p^(np)
    assert torus_extension_group(3, 1).order == 9 * 3
    assert torus_extension_group(3, 1, det_one=False).order == 27 * 3
    assert torus_extension_group(2, 2).order == 2 ** 2 * 2
    assert torus_extension_group(2, 2, det_one=False).order == 2 ** 4 * 2
    assert torus_extension_group(2, 3).order == 2 ** 3 * 2
    assert torus_extension_group(5, 1).order == 5 ** 4 * 5


def test_torus_membership_predicate():
    p, level = 3, 1
    gens = torus_extension_generators(p, level)
    for g in gens:
        assert in_truncated_torus_extension(g, p, level)
    A = std_matrix(p, "A")
    assert in_truncated_torus_extension(A, p, level)
    D = std_matrix(p, "D")
    # D is diagonal but not determinant-one, so it fails the det-one predicate
    assert not in_truncated_torus_extension(D, p, level)
    assert in_truncated_torus_extension(D, p, level, det_one=False)


def test_min_level():
    assert min_level(2) == 2
    assert min_level(3) == 1
    assert min_level(5) == 1
