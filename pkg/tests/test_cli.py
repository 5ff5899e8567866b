import json

import pytest

from ramstruct.catalog import bundled_cayley_path
from ramstruct.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out.strip()
    lines = [json.loads(line) for line in out.splitlines() if line]
    return code, lines[-1] if lines else None, lines


def test_check_command(capsys):
    code, payload, _ = run(
        capsys,
        "check",
        "--group",
        "C2xC4xC4xC4",
        "--t1",
        "[x2; x3; x4; x2^-1; x3^-1; x4^-1*x1; x1]",
        "--t2",
        "[x2*x3*x1; x2*x4; x3*x4; x2*x3*x4; x2*x3*x4*x1]",
    )
    assert code == 0
    assert payload["verdict"] is True
    assert payload["size"] == [7, 5]
    assert "sigma_sizes" in payload


def test_check_failure_reason(capsys):
    code, payload, _ = run(
        capsys,
        "check",
        "--group",
        "C5xC5",
        "--t1",
        "[x1; x2; (x1*x2)^-1]",
        "--t2",
        "[x1; x2; (x1*x2)^-1]",
    )
    assert code == 0
    assert payload["verdict"] is False
    assert payload["reason"] == "not_disjoint"
    assert "witness" in payload


def test_search_command(capsys):
    code, payload, _ = run(capsys, "search", "--group", "C2xC2xC2", "--size", "5,6")
    assert code == 0 and payload["status"] == "found"
    witness = payload["witnesses"][0]
    code, payload, _ = run(
        capsys,
        "check",
        "--group",
        "C2xC2xC2",
        "--t1",
        witness["t1"],
        "--t2",
        witness["t2"],
    )
    assert code == 0 and payload["verdict"] is True

    code, payload, _ = run(capsys, "search", "--group", "C2xC2xC2", "--size", "5,5")
    assert code == 0 and payload["status"] == "none" and payload["exhaustive"]


def test_search_all(capsys):
    code, payload, _ = run(
        capsys, "search", "--group", "heis(3)", "--size", "4,4", "--all", "3"
    )
    assert code == 0 and len(payload["witnesses"]) == 3


def test_sizes_command(capsys):
    code, payload, _ = run(capsys, "sizes", "--group", "C3xC3", "--cap", "5")
    assert code == 0
    assert payload["pairs"] == [[4, 4], [4, 5], [5, 5]]
    assert payload["exhaustive"] is True


def test_predict_command(capsys):
    code, payload, _ = run(
        capsys, "predict", "--group", "C2xC2xC2", "--size", "5,7"
    )
    assert code == 0 and payload["member"] is False
    code, payload, _ = run(capsys, "predict", "--group", "C6xC6xC2", "--grid", "6")
    assert code == 0
    grid = {(r1, r2): member for r1, r2, member in payload["grid"]}
    assert grid[(5, 6)] is True and grid[(5, 5)] is False


def test_construct_command(capsys):
    code, payload, _ = run(
        capsys, "construct", "--group", "C6xC6xC2", "--size", "5,7"
    )
    assert code == 0 and payload["status"] == "ok"
    assert payload["witness"]["size"] == [5, 7]
    # the emitted witness re-validates through check
    code, verdict, _ = run(
        capsys,
        "check",
        "--group",
        "C6xC6xC2",
        "--t1",
        payload["witness"]["t1"],
        "--t2",
        payload["witness"]["t2"],
    )
    assert code == 0 and verdict["verdict"] is True

    code, payload, _ = run(
        capsys, "construct", "--group", "C7", "--size", "3,3"
    )
    assert code == 0 and payload["status"] == "inadmissible"


def test_construct_budget_exit_code(capsys):
    code, payload, _ = run(
        capsys,
        "construct",
        "--group",
        f"cayley:{bundled_cayley_path('d4')}",
        "--size",
        "8,8",
        "--budget-ms",
        "1",
    )
    assert payload["status"] in ("unknown", "inadmissible")
    if payload["status"] == "unknown":
        assert code == 2


def test_invariants_command(capsys):
    code, payload, _ = run(capsys, "invariants", "--group", "C2xC4xC4xC4")
    assert code == 0
    assert payload["p"] == 2 and payload["e"] == 2 and payload["d"] == 4
    assert payload["power_image_sizes"] == [128, 8, 1]


def test_semiabelian_command(capsys):
    code, payload, _ = run(
        capsys, "semiabelian", "--group", f"cayley:{bundled_cayley_path('q8')}"
    )
    assert code == 0
    by_level = {item["i"]: item for item in payload["levels"]}
    assert by_level[0]["holds"] and by_level[0]["trivial"]
    assert not by_level[1]["holds"] and by_level[1]["witness"] == ["i", "j"]


def test_catalog_command(capsys, tmp_path):
    out = tmp_path / "results.jsonl"
    code, summary, lines = run(
        capsys,
        "catalog",
        "--max-order",
        "9",
        "--cap",
        "5",
        "--out",
        str(out),
    )
    assert code == 0
    assert summary == {"kind": "summary", "mismatches": 0, "exhaustive": True}
    catalog_lines = [l for l in lines if l.get("kind") == "catalog"]
    assert any(l["spec"] == "C2xC2xC2" for l in catalog_lines)
    assert all(not l["cached"] for l in catalog_lines)
    assert out.exists()

    # second run is served entirely from the results file, with identical records
    first_records = [dict(l, cached=None) for l in catalog_lines]
    code, summary, lines = run(
        capsys,
        "catalog",
        "--max-order",
        "9",
        "--cap",
        "5",
        "--out",
        str(out),
    )
    catalog_lines = [l for l in lines if l.get("kind") == "catalog"]
    assert all(l["cached"] for l in catalog_lines)
    assert [dict(l, cached=None) for l in catalog_lines] == first_records
    assert summary["mismatches"] == 0


def test_parse_error_exit_code(capsys):
    code, payload, _ = run(capsys, "predict", "--group", "C1xC2")
    assert code == 1 and "error" in payload
    code, payload, _ = run(capsys, "search", "--group", "C2xC2", "--size", "5")
    assert code == 1
    code, payload, _ = run(capsys, "check", "--group", "C2xC2", "--t1", "[x1]", "--t2", "[")
    assert code == 1


def test_seed_flag_accepted(capsys):
    code, payload, _ = run(
        capsys, "sizes", "--group", "C2xC2", "--cap", "4", "--seed", "7"
    )
    assert code == 0 and payload["pairs"] == []
