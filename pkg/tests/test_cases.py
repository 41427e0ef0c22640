"""End-to-end verification suites for the bundled case studies.

Frozen orders used here were first computed independently (BFS closures of
the generator matrices, semidirect products over the coordinate model) and
are re-derivable from the formulas in the module docstrings: chain
normalizer p^4(p-1), full normalizer p^4(p^2-1), and at p = 2 the orders
16 and 48.
"""

from __future__ import annotations

import pytest

from fusionkit.cases import (
    AZ_PRIME_OF_INDEX,
    CaseConfig,
    VerificationReport,
    all_configs,
    emit_decomposition,
    encoded_chain_classes,
    gamma_matrices,
    run_suite,
)
from fusionkit.fingroup import subgroup
from fusionkit.matgroup import closure, std_matrix


def suite_ids(rep: VerificationReport) -> list[str]:
    return [c.check_id for c in rep.checks]


def test_config_validation():
    with pytest.raises(ValueError):
        CaseConfig("sup", 11)
    with pytest.raises(ValueError):
        CaseConfig("az", 2)
    with pytest.raises(ValueError):
        CaseConfig("az", 5, az_index=12)  # index 12 belongs to p = 3
    with pytest.raises(ValueError):
        CaseConfig("sup", 3, az_index=12)
    with pytest.raises(ValueError):
        CaseConfig("sup", 3, level=5)
    with pytest.raises(ValueError):
        CaseConfig("sup", 2, level=1)  # p = 2 needs level >= 2
    with pytest.raises(ValueError):
        CaseConfig("az", 3)  # index is mandatory for az
    assert CaseConfig("az", 3, az_index=12).az_index == 12
    assert CaseConfig("sup", 2).conductor == 8
    assert CaseConfig("sup", 3, level=2).conductor == 9
    assert CaseConfig("up", 3).torus_det_one is False


def test_all_configs_cover_every_family():
    cfgs = all_configs()
    assert len(cfgs) == 12
    assert sum(1 for c in cfgs if c.case == "az") == 4
    assert {c.az_index for c in cfgs if c.case == "az"} == set(AZ_PRIME_OF_INDEX)


@pytest.mark.parametrize("case,p", [("sup", 2), ("sup", 3), ("up", 2), ("up", 3)])
def test_suite_small_primes(case, p):
    rep = run_suite(CaseConfig(case, p))
    assert rep.all_ok, rep.failed_ids()
    assert rep.counts()["fail"] == 0
    assert rep.counts()["skipped"] == 0


@pytest.mark.parametrize("case,p", [("sup", 5), ("up", 5)])
def test_suite_p5(case, p):
    rep = run_suite(CaseConfig(case, p))
    assert rep.all_ok, rep.failed_ids()


def test_suite_p7_default_skips_tower():
    rep = run_suite(CaseConfig("sup", 7))
    assert rep.all_ok, rep.failed_ids()
    skipped = [c.check_id for c in rep.checks if c.status == "skipped"]
    assert "normalizer.suite" in skipped


@pytest.mark.parametrize("index", sorted(AZ_PRIME_OF_INDEX))
def test_suite_az(index):
    rep = run_suite(CaseConfig("az", AZ_PRIME_OF_INDEX[index], az_index=index))
    assert rep.all_ok, rep.failed_ids()


@pytest.mark.parametrize("case,p,level", [("sup", 3, 2), ("up", 2, 3)])
def test_suite_other_levels(case, p, level):
    rep = run_suite(CaseConfig(case, p, level=level))
    assert rep.all_ok, rep.failed_ids()


def test_chain_normalizer_orders_frozen():
    # p^4(p-1): 162 at p = 3 and 2500 at p = 5
    for p, expect in ((3, 162), (5, 2500)):
        A = std_matrix(p, "A")
        B = std_matrix(p, "B")
        D = std_matrix(p, "D")
        from fusionkit.fingroup import smallest_primitive_root

        S = std_matrix(p, "sigma", k=smallest_primitive_root(p))
        G = closure([A, B, D, S], expected=expect)
        assert G.order == expect == p ** 4 * (p - 1)


def test_tau_dichotomy_in_reports():
    # tau itself is in the determinant-one group iff p = 1 mod 4
    for p in (3, 5, 7):
        rep = run_suite(CaseConfig("sup", p)) if p != 7 else None
        if rep is None:
            continue
        chk = next(c for c in rep.checks if c.check_id == "tau.su_dichotomy")
        assert chk.status == "pass"
        assert chk.witness["tau_has_det_one"] == (p % 4 == 1)


def test_q16_nonsplit_profile():
    from fusionkit.fingroup import cyclic_group, sesverify

    A = std_matrix(2, "A", det_one=True)
    B = std_matrix(2, "B", det_one=True)
    F = std_matrix(2, "F")
    q16 = closure([A, B, F], expected=16)
    q8 = closure([A, B], expected=8)
    members = sorted(q16.index[m] for m in q8.elements)
    ses = sesverify(q16, subgroup(q16, members), Q_expected=cyclic_group(2))
    assert ses.is_normal and ses.split is False and ses.exhausted
    # every lift of the nontrivial coset has order 4 or 8: no involution
    assert ses.lift_order_profiles == [{4: 4, 8: 4}]


def test_o48_order():
    A = std_matrix(2, "A", det_one=True)
    B = std_matrix(2, "B", det_one=True)
    F = std_matrix(2, "F")
    H = std_matrix(2, "H")
    assert closure([A, B, F, H], expected=48).order == 48


def test_encoded_classes_frozen():
    assert [r["autL_order"] for r in encoded_chain_classes(CaseConfig("sup", 2))] == [48, 16, 8]
    assert [r["autL_order"] for r in encoded_chain_classes(CaseConfig("sup", 3))] == [648, 162, 54]
    rows5 = encoded_chain_classes(CaseConfig("sup", 5))
    assert [r["id"] for r in rows5] == ["gamma", "gamma_s", "s", "t_s", "t"]
    assert [r["autL_order"] for r in rows5] == [15000, 2500, 12500, 12500, 75000]
    rows7 = encoded_chain_classes(CaseConfig("sup", 7))
    assert [r["autL_order"] for r in rows7] == [
        115248, 14406, 4941258, 4941258, 592950960]


def test_decomposition_w_collapse_p5():
    cfg = CaseConfig("sup", 5)
    rep = VerificationReport(cfg)
    out = emit_decomposition(cfg, rep)
    assert rep.all_ok
    w = out["poset"]
    assert sorted(w.nodes) == ["gamma", "gamma_s", "s", "t", "t_s"]
    iso_edges = [(s, t) for s, t, a in w.edges if a.get("iso")]
    assert iso_edges == [("t_s", "s")]
    col = out["collapsed"]
    assert sorted(col.nodes) == ["gamma", "gamma_s", "t"]
    assert sorted((s, t) for s, t, _ in col.edges) == [
        ("gamma_s", "gamma"),
        ("gamma_s", "t"),
    ]


def test_decomposition_direct_shape_small_p():
    for case, p in (("sup", 2), ("sup", 3), ("up", 2), ("up", 3)):
        cfg = CaseConfig(case, p)
        rep = VerificationReport(cfg)
        out = emit_decomposition(cfg, rep)
        assert rep.all_ok, (case, p, rep.failed_ids())
        assert out["poset"] is None
        col = out["collapsed"]
        assert sorted(col.nodes) == ["gamma", "gamma_s", "t"]


def test_decomposition_corner_index_identity():
    # the corner node order is always (p + 1) times the chain node order
    for case, p in (("sup", 2), ("sup", 3), ("sup", 5), ("up", 3)):
        cfg = CaseConfig(case, p)
        rep = VerificationReport(cfg)
        out = emit_decomposition(cfg, rep)
        col = out["collapsed"]
        gamma = col.nodes["gamma"].attrs["autL_order"]
        chain = col.nodes["gamma_s"].attrs["autL_order"]
        assert gamma == (p + 1) * chain


def test_az_decomposition_symbolic_torus():
    cfg = CaseConfig("az", 5, az_index=31)
    rep = VerificationReport(cfg)
    out = emit_decomposition(cfg, rep)
    col = out["collapsed"]
    assert col.nodes["t"].attrs.get("symbolic") is True
    assert col.nodes["t"].attrs["weyl_center_order"] == 4
    assert "G31" in col.nodes["t"].label


def test_up_diagram_orders_match_concrete_closures():
    # level-2 full-unitary models at p = 2: core 16 with F gives 32, with
    # F and H gives 96; the diagram encodes exactly these
    cfg = CaseConfig("up", 2)
    rep = VerificationReport(cfg)
    out = emit_decomposition(cfg, rep)
    col = out["collapsed"]
    assert col.nodes["gamma"].attrs["autL_order"] == 96
    assert col.nodes["gamma_s"].attrs["autL_order"] == 32
    assert col.nodes["t"].attrs["autL_order"] == 32


def test_report_serialization_round_trip():
    import json

    rep = run_suite(CaseConfig("sup", 3))
    doc = json.loads(rep.to_json())
    assert doc["kind"] == "verification_report"
    assert doc["all_ok"] is True
    assert doc["case"] == "sup" and doc["prime"] == 3
    ids = [c["id"] for c in doc["checks"]]
    assert ids == suite_ids(rep)
    text = rep.to_text()
    assert "PASS" in text and "summary:" in text


def test_gamma_matrices_unitary():
    for case, p in (("sup", 3), ("sup", 2), ("az", 5)):
        cfg = CaseConfig(case, p, az_index=29 if case == "az" else None)
        A, B = gamma_matrices(cfg)
        from fusionkit.matgroup import CycMatrix

        ident = CycMatrix.identity(A.dim, A.m)
        assert A * A.conj_transpose() == ident
        assert B * B.conj_transpose() == ident
