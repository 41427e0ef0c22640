"""Coordinate model of the extraspecial group and its automorphisms.

The pairwise composition law of the linear-substitution sections is the
load-bearing fact: it makes the section a genuine homomorphism from the
2x2 matrix group into the automorphism group, which the semidirect
constructions and the counting certificate both rest on.
"""

from __future__ import annotations

import pytest

from fusionkit.extraspecial import (
    HeisenbergGroup,
    aut_certificate,
    aut_group_via_coordinates,
    commuting_pair_scan,
    half_inverse,
    heisenberg_semidirect,
    inner_perm,
    inner_perms,
    primitive_scaling_matrix,
    section_perm,
    section_perms,
)
from fusionkit.fingroup import (
    center,
    mat2_group,
    perm_closure,
    spot_check_associativity,
)


def test_heisenberg_structure():
    for p in (3, 5, 7):
        G = HeisenbergGroup(p)
        assert G.order == p ** 3
        assert spot_check_associativity(G)
        assert center(G).members == tuple(sorted(G.central_indices()))
        assert all(G.element_order(x) == p for x in range(1, G.order))
        # defining commutator: [a, b] is the central generator
        a, b = G.a_index, G.b_index
        comm = G.mult(G.mult(a, b), G.mult(G.inv(a), G.inv(b)))
        assert comm in G.central_indices() and comm != G.identity


def test_half_inverse():
    for p in (3, 5, 7, 11):
        assert (2 * half_inverse(p)) % p == 1


def test_section_composition_law():
    # f_M o f_N = f_{M N}, checked for every ordered pair in SL2(F3)
    gam = HeisenbergGroup(3)
    H = mat2_group(3, "SL")
    perms = section_perms(gam, H)
    for x in range(H.order):
        for y in range(H.order):
            comp = tuple(perms[x][perms[y][i]] for i in range(gam.order))
            assert comp == perms[H.mult(x, y)]


def test_section_identity_and_bijectivity():
    gam = HeisenbergGroup(5)
    ident = section_perm(gam, (1, 0, 0, 1))
    assert ident == tuple(range(gam.order))
    f = section_perm(gam, (2, 0, 0, 3))
    assert sorted(f) == list(range(gam.order))


def test_section_rejects_singular_matrices():
    gam = HeisenbergGroup(3)
    with pytest.raises(AssertionError):
        section_perm(gam, (1, 2, 2, 4))


def test_sections_are_automorphisms():
    gam = HeisenbergGroup(3)
    for M in ((1, 1, 0, 1), (0, 2, 1, 0), (2, 0, 0, 2)):
        f = section_perm(gam, M)
        for x in range(gam.order):
            for y in range(gam.order):
                assert f[gam.mult(x, y)] == gam.mult(f[x], f[y])


def test_inner_perms_form_a_subgroup_of_size_p_squared():
    for p in (3, 5):
        gam = HeisenbergGroup(p)
        perms = inner_perms(gam)
        assert len(set(perms)) == p * p
        G = perm_closure(perms)
        assert G.order == p * p
        # conjugation by the generator with coordinates (1, 0) is one of them
        a = gam.a_index
        conj = tuple(gam.mult(gam.mult(a, x), gam.inv(a)) for x in range(gam.order))
        assert conj == inner_perm(gam, 1, 0)


def test_commuting_pair_scan_matches_formulas():
    for p in (3, 5):
        gam = HeisenbergGroup(p)
        scan = commuting_pair_scan(gam)
        assert scan == p ** 3 * (p - 1) * (p * p - 1)
        assert scan == (p ** 3 - p) * (p ** 3 - p * p)


def test_aut_certificate_odd_primes():
    for p, expect in ((3, 432), (5, 12000)):
        cert = aut_certificate(p)
        assert cert.ok
        assert cert.scan_count == expect
        assert cert.closed_formula == expect == cert.factored_formula
        assert cert.inner_order == p * p
        assert cert.section_order == p * (p * p - 1) * (p - 1)
        assert cert.intersection_trivial and cert.closure_matches
        assert cert.section_is_gl2_image and cert.product_equals_scan


def test_aut_group_materialized_at_p3():
    gam = HeisenbergGroup(3)
    A = aut_group_via_coordinates(gam, 3)
    assert A.order == 432


def test_semidirect_orders():
    p = 3
    assert heisenberg_semidirect(p, "SL").order == 27 * 24
    assert heisenberg_semidirect(p, "USL").order == 27 * 6
    assert heisenberg_semidirect(p, "GL").order == 27 * 48
    assert heisenberg_semidirect(p, "UGL").order == 27 * 12


def test_semidirect_is_a_group_with_normal_core():
    from fusionkit.fingroup import is_normal, subgroup

    G = heisenberg_semidirect(3, "USL")
    assert spot_check_associativity(G)
    core = [G.encode(n, G.H.identity) for n in range(27)]
    assert is_normal(G, subgroup(G, core))


def test_primitive_scaling_matrix():
    for p in (3, 5, 7):
        M = primitive_scaling_matrix(p)
        xi = M[0]
        assert M == (xi, 0, 0, 1)
        H = mat2_group(p, "GL")
        i = H.index[M]
        assert H.element_order(i) == p - 1
