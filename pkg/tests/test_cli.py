"""Command line behavior: exit codes, deterministic reports, diagnostics."""

import json
import subprocess
import sys

import pytest

from equichi import corpus
from equichi.cli import main

BETA_DATA = {
    "mode": "equivariant",
    "dim": 1,
    "principal_integral": 0,
    "strata": [
        {
            "id": "s1",
            "entries": [
                {"n_b": 1, "rank": 1, "eta": [1, 2], "h": 1, "integral": 2}
            ],
        }
    ],
}
PER_RHO_DATA = {
    "per_rho": {
        "0": {"mode": "equivariant", "dim": 1, "principal_integral": 2, "strata": []},
        "1": {"mode": "equivariant", "dim": 1, "principal_integral": [1, 3], "strata": []},
    }
}


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def write_case_files(tmp_path, cid):
    doc = json.loads(corpus.read_corpus_bytes(cid).decode("utf-8"))
    gpath = tmp_path / "group.json"
    cpath = tmp_path / "complex.json"
    gpath.write_text(json.dumps(doc["group"]))
    cpath.write_text(json.dumps(doc["complex"]))
    return str(gpath), str(cpath)


def test_verify_corpus_aggregates_and_reports_skip(capsys):
    code, out, err = run_cli(["verify", "--corpus"], capsys)
    assert code == 3
    payload = json.loads(out)
    assert payload["summary"] == {"mismatch": 0, "ok": 8, "skipped": 1}
    assert payload["exact_arithmetic"] is True
    assert len(payload["corpus"]) == 9
    for entry in payload["corpus"]:
        assert len(entry["sha256"]) == 64
    by_case = {e["case"]: e for e in payload["corpus"]}
    assert by_case["s2-reflection"]["report"]["skipped"] is not None
    assert by_case["torus-involution"]["report"]["all_match"] is True


def test_verify_corpus_output_is_byte_identical(capsys):
    _, first, _ = run_cli(["verify", "--corpus"], capsys)
    _, second, _ = run_cli(["verify", "--corpus"], capsys)
    assert first == second
    assert first.endswith("\n")


def test_verify_corpus_single_case(capsys):
    code, out, _ = run_cli(["verify", "--corpus", "--case", "torus-involution"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == {"mismatch": 0, "ok": 1, "skipped": 0}
    rows = payload["corpus"][0]["report"]["rows"]
    assert [(r["rho"], r["formula"]) for r in rows] == [(0, -2), (1, 2)]


def test_verify_reflection_case_exits_skipped(capsys):
    code, out, _ = run_cli(["verify", "--corpus", "--case", "s2-reflection"], capsys)
    assert code == 3
    payload = json.loads(out)
    skipped = payload["corpus"][0]["report"]["skipped"]
    assert skipped == (
        "stratified sum rejected: component 0 of stratum 1 has codimension 1 < 2"
    )


def test_verify_explicit_files(tmp_path, capsys):
    gpath, cpath = write_case_files(tmp_path, "s2-pi-rotation")
    code, out, _ = run_cli(["verify", "--group", gpath, "--complex", cpath], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["all_match"] is True
    assert payload["report"]["subdivisions"] == 1


def test_verify_without_inputs_is_invalid(capsys):
    code, out, err = run_cli(["verify"], capsys)
    assert code == 1
    assert "error:" in err


def test_strata_report_structure(tmp_path, capsys):
    gpath, cpath = write_case_files(tmp_path, "s2-pi-rotation")
    code, out, _ = run_cli(["strata", "--group", gpath, "--complex", cpath], capsys)
    assert code == 0
    payload = json.loads(out)
    strat = payload["stratification"]
    assert strat["orbit_space_euler"] == 2
    assert strat["euler"] == 2
    assert len(strat["strata"]) == 2
    singular = strat["strata"][1]
    assert singular["codimension"] == 2
    assert len(singular["components"]) == 2
    assert all(c["closure_euler"] == 1 for c in singular["components"])
    assert [b["total"] for b in payload["breakdowns"]] == [0, 2]
    assert payload["exact_arithmetic"] is True


def test_strata_single_rho(tmp_path, capsys):
    gpath, cpath = write_case_files(tmp_path, "s2-pi-rotation")
    code, out, _ = run_cli(
        ["strata", "--group", gpath, "--complex", cpath, "--rho", "1"], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert [b["rho"] for b in payload["breakdowns"]] == [1]


def test_strata_rho_out_of_range(tmp_path, capsys):
    gpath, cpath = write_case_files(tmp_path, "s2-pi-rotation")
    code, _, err = run_cli(
        ["strata", "--group", gpath, "--complex", cpath, "--rho", "9"], capsys
    )
    assert code == 1
    assert "--rho" in err


def test_strata_codimension_guard(tmp_path, capsys):
    gpath, cpath = write_case_files(tmp_path, "s2-reflection")
    code, out, _ = run_cli(["strata", "--group", gpath, "--complex", cpath], capsys)
    assert code == 3
    payload = json.loads(out)
    assert payload["breakdowns"] == []
    assert "codimension 1" in payload["skipped"]
    # the stratification is still reported for inspection
    assert payload["stratification"]["strata"][1]["codimension"] == 1


def test_fine_decomp_report(tmp_path, capsys):
    doc = json.loads(corpus.read_corpus_bytes("bundle-c3-in-s3").decode("utf-8"))
    gpath = tmp_path / "group.json"
    bpath = tmp_path / "bundle.json"
    gpath.write_text(json.dumps(doc["group"]))
    bpath.write_text(json.dumps(doc["bundle"]))
    code, out, _ = run_cli(
        ["fine-decomp", "--group", str(gpath), "--bundle", str(bpath)], capsys
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["subgroup"] == [0, 2, 4]
    assert payload["normalizer"] == [0, 1, 2, 3, 4, 5]
    comp = payload["components"][0]
    assert comp["id"] == "a0"
    piece = comp["pieces"][0]
    assert piece["orbit"] == [0, 1]
    assert piece["rank"] == 2
    assert piece["type_count"] == 2
    assert piece["canonical"]["ambient_index"] == 2
    assert piece["canonical"]["ambient_degree"] == 2
    assert piece["canonical"]["adapted_to_input"] is True


def test_fine_decomp_rejects_non_equivariant_bundle(tmp_path, capsys):
    doc = json.loads(
        corpus.read_corpus_bytes("bundle-bad-equivariance").decode("utf-8")
    )
    gpath = tmp_path / "group.json"
    bpath = tmp_path / "bundle.json"
    gpath.write_text(json.dumps(doc["group"]))
    bpath.write_text(json.dumps(doc["bundle"]))
    code, _, err = run_cli(
        ["fine-decomp", "--group", str(gpath), "--bundle", str(bpath)], capsys
    )
    assert code == 1
    assert "not equivariant" in err


def test_assemble_single_block(tmp_path, capsys):
    path = tmp_path / "idx.json"
    path.write_text(json.dumps(BETA_DATA))
    code, out, _ = run_cli(["assemble", "--data", str(path)], capsys)
    assert code == 0
    payload = json.loads(out)
    (result,) = payload["results"]
    assert result["total"] == [1, 2]
    assert result["is_integer"] is False
    assert "not an integer" in result["warning"]


def test_assemble_per_rho_blocks(tmp_path, capsys):
    path = tmp_path / "idx.json"
    path.write_text(json.dumps(PER_RHO_DATA))
    code, out, _ = run_cli(["assemble", "--data", str(path)], capsys)
    assert code == 0
    results = json.loads(out)["results"]
    assert [r["rho"] for r in results] == [0, 1]
    assert results[0]["is_integer"] is True
    assert results[1]["total"] == [1, 3]

    code, out, _ = run_cli(["assemble", "--data", str(path), "--rho", "1"], capsys)
    assert code == 0
    results = json.loads(out)["results"]
    assert [r["rho"] for r in results] == [1]

    code, _, err = run_cli(["assemble", "--data", str(path), "--rho", "7"], capsys)
    assert code == 1
    assert "no entry for irreducible index 7" in err


def test_malformed_json_is_invalid_input(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run_cli(["assemble", "--data", str(path)], capsys)
    assert code == 1
    assert "error:" in err


def test_out_flag_writes_file(tmp_path, capsys):
    path = tmp_path / "idx.json"
    path.write_text(json.dumps(BETA_DATA))
    target = tmp_path / "report.json"
    code, out, _ = run_cli(
        ["assemble", "--data", str(path), "--out", str(target)], capsys
    )
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["command"] == "assemble"


def test_table_format_renders_text(tmp_path, capsys):
    path = tmp_path / "idx.json"
    path.write_text(json.dumps(BETA_DATA))
    code, out, _ = run_cli(
        ["assemble", "--data", str(path), "--format", "table"], capsys
    )
    assert code == 0
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)
    assert "results" in out


def test_timing_goes_to_stderr_not_stdout(capsys):
    _, out, err = run_cli(["verify", "--corpus", "--case", "interval-trivial"], capsys)
    assert "elapsed" in err
    assert "elapsed" not in out


def test_module_entry_point_round_trip():
    cmd = [sys.executable, "-m", "equichi.cli", "verify", "--corpus", "--case", "s2-antipodal"]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    payload = json.loads(first.stdout)
    assert payload["summary"]["ok"] == 1
