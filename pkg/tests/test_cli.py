"""Command line behavior: exit codes, determinism, and file round trips.

Each invocation runs in a fresh interpreter so the determinism checks
cover the full path from argument parsing to serialized bytes.
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from fusionkit.fingroup import group_to_json, symmetric_group


def run_cli(*args: str, env_extra: dict | None = None):
    env = dict(os.environ)
    for key in list(env):
        if key.startswith("FUSIONKIT_"):
            del env[key]
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "fusionkit.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


def test_verify_text_exit_zero():
    res = run_cli("verify", "--case", "sup", "--prime", "3")
    assert res.returncode == 0, res.stderr
    assert "summary:" in res.stdout and "FAIL" not in res.stdout


def test_verify_json_document():
    res = run_cli("verify", "--case", "az", "--index", "12", "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["kind"] == "verification_report"
    assert doc["all_ok"] is True
    assert doc["prime"] == 3 and doc["az_index"] == 12


def test_verify_infers_prime_from_index():
    res = run_cli("verify", "--case", "az", "--index", "29", "--format", "json")
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["prime"] == 5


def test_missing_selection_is_usage_error():
    res = run_cli("verify")
    assert res.returncode == 2
    assert "no case selected" in res.stderr


def test_bad_flag_choice_is_usage_error():
    res = run_cli("verify", "--case", "nope", "--prime", "3")
    assert res.returncode == 2


def test_format_rejected_per_command():
    res = run_cli("verify", "--case", "sup", "--prime", "3", "--format", "dot")
    assert res.returncode == 2
    assert "not valid here" in res.stderr


def test_decompose_dot_deterministic(tmp_path):
    a, b = tmp_path / "a.dot", tmp_path / "b.dot"
    r1 = run_cli("decompose", "--case", "sup", "--prime", "3", "--format", "dot",
                 "--out", str(a))
    r2 = run_cli("decompose", "--case", "sup", "--prime", "3", "--format", "dot",
                 "--out", str(b))
    assert r1.returncode == 0 and r2.returncode == 0
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("digraph")


def test_decompose_json_shape():
    res = run_cli("decompose", "--case", "up", "--prime", "2", "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["kind"] == "decomposition"
    assert doc["poset"] is None
    ids = [n["id"] for n in doc["collapsed"]["nodes"]]
    assert ids == ["gamma", "gamma_s", "t"]


def test_aut_gamma_both_methods():
    res2 = run_cli("aut-gamma", "--prime", "2", "--format", "json")
    assert res2.returncode == 0, res2.stderr
    doc2 = json.loads(res2.stdout)
    assert doc2["method"] == "backtracking" and doc2["scan_count"] == 24
    res3 = run_cli("aut-gamma", "--prime", "3", "--format", "json")
    doc3 = json.loads(res3.stdout)
    assert doc3["method"] == "coordinate-section" and doc3["scan_count"] == 432


def test_env_fallback_and_flag_precedence():
    res = run_cli("aut-gamma", env_extra={"FUSIONKIT_PRIME": "2", "FUSIONKIT_FORMAT": "json"})
    assert res.returncode == 0, res.stderr
    assert json.loads(res.stdout)["prime"] == 2
    res = run_cli("aut-gamma", "--prime", "3", "--format", "json",
                  env_extra={"FUSIONKIT_PRIME": "2"})
    assert json.loads(res.stdout)["prime"] == 3


def test_dump_group_round_trip(tmp_path):
    path = tmp_path / "core.json"
    res = run_cli("dump-group", "--case", "sup", "--prime", "2", "--out", str(path))
    assert res.returncode == 0, res.stderr
    doc = json.loads(path.read_text())
    assert doc["kind"] == "group_table"
    assert doc["order"] == 8 and doc["prime"] == 2
    assert len(doc["mult"]) == 64 and len(doc["labels"]) == 8

    res = run_cli("fusion", "--input", str(path))
    assert res.returncode == 0, res.stderr
    assert "Q8" in res.stdout


def test_fusion_on_s4_table(tmp_path):
    path = tmp_path / "s4.json"
    path.write_text(group_to_json(symmetric_group(4), prime=2))
    res = run_cli("fusion", "--input", str(path), "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["kind"] == "chain_poset"
    assert len(doc["nodes"]) == 3
    tags = [n["tag"] for n in doc["nodes"]]
    assert tags == ["S4", "D8", "D8"]
    assert ["c2", "c1", {"iso": True}] in doc["edges"]


def test_fusion_prime_flag_overrides_file(tmp_path):
    path = tmp_path / "s4.json"
    path.write_text(group_to_json(symmetric_group(4), prime=2))
    res = run_cli("fusion", "--input", str(path), "--prime", "3", "--format", "json")
    assert res.returncode == 0, res.stderr
    doc = json.loads(res.stdout)
    assert doc["prime"] == 3
    # at p = 3 the Sylow subgroup is C3 and there is a single class
    assert len(doc["nodes"]) == 1


def test_fusion_cap_enforced(tmp_path):
    path = tmp_path / "s4.json"
    path.write_text(group_to_json(symmetric_group(4), prime=2))
    res = run_cli("fusion", "--input", str(path), "--cap", "10")
    assert res.returncode == 2
    assert "exceeds cap" in res.stderr


def test_fusion_rejects_malformed_input(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "something_else"}))
    res = run_cli("fusion", "--input", str(path))
    assert res.returncode == 2


def test_verify_json_byte_identical_reruns(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run_cli("verify", "--case", "sup", "--prime", "2", "--format", "json", "--out", str(a))
    run_cli("verify", "--case", "sup", "--prime", "2", "--format", "json", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
