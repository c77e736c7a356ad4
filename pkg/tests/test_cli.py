from __future__ import annotations

import json
import subprocess
import sys

import pytest

from distspec import Graph, to_digraph6, to_graph6
from distspec.cli import main

from conftest import d4


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_spectra_petersen_dnl_text(capsys):
    code, out, _ = run(capsys, "spectra", "--family", "petersen", "--variant", "DNL", "--format", "text")
    assert code == 0
    assert out.strip() == "DNL: {0, 1^(4), (6/5)^(5)}"


def test_spectra_json_fields(capsys):
    code, out, _ = run(capsys, "spectra", "--graph6", "Ch", "--variant", "D,DL")
    data = json.loads(out)
    assert code == 0 and data["graph"] == "Ch" and data["order"] == 4
    assert list(data["variants"]) == ["D", "DL"]
    assert data["variants"]["D"]["inertia"] == [1, 3, 0]
    assert data["bounds_hold"] is True
    eig = data["variants"]["DL"]["eigenvalues"]
    assert eig[0] == {"exact": "0", "re": 0.0, "im": 0.0, "multiplicity": 1}


def test_spectra_digraph_file(capsys, tmp_path):
    path = tmp_path / "d4.d6"
    path.write_text(to_digraph6(d4()) + "\n")
    code, out, _ = run(capsys, "spectra", "--digraph-file", str(path), "--variant", "DQ", "--format", "text")
    assert code == 0 and out.strip() == "DQ: {2, 3^(2), 8}"


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--n", "7")
    assert code == 0
    assert out.splitlines() == ["n,connected_graphs,D,DQ,DL,DNL", "7,853,22,38,43,0"]


def test_census_json_deterministic_across_jobs(capsys):
    _, a, _ = run(capsys, "census", "--n", "6", "--format", "json")
    _, b, _ = run(capsys, "census", "--n", "6", "--format", "json", "--jobs", "2")
    assert a == b and json.loads(a)["counts"]["DQ"] == 6


def test_identical_runs_are_byte_identical(capsys):
    outs = {run(capsys, "spectra", "--family", "cycle:7")[1] for _ in range(2)}
    assert len(outs) == 1


def test_family_matches(capsys):
    code, out, _ = run(capsys, "family", "--family", "paley:13")
    data = json.loads(out)
    assert code == 0
    assert all(v["matches_direct"] for v in data["variants"].values())
    assert data["classification"]["optimistic"] is True


def test_family_without_closed_form(capsys):
    code, out, _ = run(capsys, "family", "--family", "heawood", "--variant", "D")
    assert code == 0 and json.loads(out)["variants"]["D"]["closed_form"] is None


def test_product(capsys):
    code, out, _ = run(capsys, "product", "--kind", "cartesian", "--left", "cycle:4", "--right", "cycle:4",
                       "--variant", "D", "--format", "text")
    assert code == 0
    assert out.splitlines() == ["form: cartesian", "D: {(-8)^(4), 0^(11), 32}  direct=True"]


def test_product_hypothesis_failure(capsys):
    code, _, err = run(capsys, "product", "--kind", "lexicographic", "--left", "cycle:4", "--right", "path:3")
    assert code == 1 and "error" in err


def test_twins(capsys):
    code, out, _ = run(capsys, "twins", "--family", "complete_bipartite:2,3")
    data = json.loads(out)
    assert code == 0 and all(v["matches_direct"] for v in data["variants"].values())


def test_address(capsys):
    code, out, _ = run(capsys, "address", "--family", "cycle:5")
    data = json.loads(out)
    assert code == 0 and data["N"] == 4 and data["valid"] and data["method"] == "search"
    code, out, _ = run(capsys, "address", "--graph6", "Ch")
    assert json.loads(out)["witness"] == ["000", "100", "110", "111"]


def test_cousins(capsys):
    code, out, _ = run(capsys, "cousins", "--graph6", "F?NNg")
    data = json.loads(out)
    assert code == 0 and data["count"] == 1
    assert data["pairs"][0]["verified"] and data["pairs"][0]["form"] == "within"


def test_coeffs(capsys):
    code, out, _ = run(capsys, "coeffs", "--family", "heawood", "--variant", "D", "--mode", "tree_normalized")
    data = json.loads(out)
    assert code == 0 and data["variants"]["D"]["is_unimodal"] is False


def test_verify_small_order(capsys):
    code, out, _ = run(capsys, "verify", "--n", "5")
    data = json.loads(out)
    assert code == 0 and data["clean"]
    assert data["checks"]["bounds"]["checked"] == 21


@pytest.mark.parametrize("argv", [
    [],
    ["spectra"],
    ["spectra", "--graph6", "C"],
    ["spectra", "--graph6", "Ch", "--family", "petersen"],
    ["spectra", "--graph6", "Ch", "--variant", "XYZ"],
    ["spectra", "--graph6", "Bg", "--file", "/nonexistent"],
    ["spectra", "--file", "/nonexistent/graphs.g6"],
    ["spectra", "--graph6", to_graph6(Graph.from_edges(3, [(0, 1)]))],
    ["address", "--family", "cycle:7"],
    ["address", "--family", "cycle:5", "--r-max", "3"],
    ["verify", "--graph6", "Ch"],
    ["family", "--family", "paley:7"],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "distspec", "census", "--n", "5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1] == "5,21,0,2,0,0"


def test_violation_exit_code(capsys, monkeypatch):
    from distspec import families
    real = families.oracle_spectrum
    monkeypatch.setattr(families, "oracle_spectrum", lambda spec, v: [x + 1 for x in real(spec, v)])
    code, out, _ = run(capsys, "family", "--family", "cycle:4", "--variant", "D")
    assert code == 2 and json.loads(out)["variants"]["D"]["matches_direct"] is False
