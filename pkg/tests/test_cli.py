import csv
import io
import json
import subprocess
import sys

import pytest

from lrcmr import bounds, codes, mr
from lrcmr.cli import main
from lrcmr.io import load_code

from conftest import INSTANCE1

P1 = ["--q", "4", "--b", "2", "--r", "2", "--delta", "2"]
P2 = ["--q", "13", "--b", "1", "--r", "3", "--delta", "2"]


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


@pytest.fixture(scope="module")
def code_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "c1.json"
    code, rep = run_json("construct", "--family", "cyclic-mr", *P1, "--output", str(path))
    assert code == 0 and rep["results"]["k"] == 8
    return path


@pytest.fixture(scope="module")
def qc_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "qc.json"
    assert run("construct", "--family", "quasi-cyclic-mr", *P2, "--output", str(path))[0] == 0
    return path


def test_report_shape(code_file):
    code, rep = run_json("verify", "cyclic", "--code", str(code_file))
    assert code == 0
    assert list(rep) == ["command", "inputs", "results", "checks", "runtime_ms"]
    assert rep["command"] == "verify cyclic" and rep["runtime_ms"] == 0


def test_construct_then_verify(code_file):
    code, rep = run_json("verify", "mr", "--code", str(code_file))
    assert code == 0 and rep["results"]["mr"] and rep["results"]["fastpath_validated"]
    assert run("verify", "locality", "--code", str(code_file))[0] == 0
    code, rep = run_json("verify", "optimal", "--code", str(code_file))
    assert code == 0 and rep["results"]["d"] == rep["results"]["bound"] == 5


def test_cli_matches_library(code_file, qc_file):
    C = load_code(code_file)
    prof = mr.coset_profile(C, INSTANCE1)
    lib = mr.verify_mr(C, prof, 2, "fastpath")
    _, rep = run_json("verify", "mr", "--code", str(code_file), "--mode", "fastpath")
    assert rep["results"]["checked"] == lib.checked and rep["results"]["mr"] == lib.mr
    code, rep = run_json("verify", "cyclic", "--code", str(qc_file))
    assert code == 1 and rep["results"]["cyclic"] is codes.is_cyclic(load_code(qc_file))
    _, rep = run_json("mindist", "--code", str(qc_file))
    assert rep["results"]["d"] == codes.min_distance(load_code(qc_file))


def test_bounds_field():
    code, rep = run_json("bounds", "field", "--n", "16", "--k", "6", "--r", "2", "--delta", "3", "--q", "16")
    assert code == 0 and rep["results"]["verdict"] == "optimal" and rep["results"]["bound_new"] == 16
    code, rep = run_json("bounds", "field", "--n", "16", "--k", "6", "--r", "2", "--delta", "3", "--q", "13")
    assert code == 1 and rep["results"]["verdict"] == "below_bound"


def test_bounds_csv():
    code, text = run("--format", "csv", "bounds", "sweep", "--q-max", "9", "--b-max", "2")
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and rows
    assert list(rows[0]) == list(bounds.CSV_COLUMNS)


def test_human_format(code_file):
    code, text = run("--format", "human", "verify", "cyclic", "--code", str(code_file))
    assert code == 0 and text.startswith("verify cyclic\n") and "PASS  cyclic" in text


def test_errors_exit_2(tmp_path):
    code, rep = run_json("construct", "--family", "cyclic-mr", "--q", "6", "--b", "1", "--r", "2", "--delta", "2")
    assert code == 2 and rep["results"]["error"] == "ParamViolation"
    code, rep = run_json("verify", "cyclic", "--code", str(tmp_path / "missing.json"))
    assert code == 2
    code, rep = run_json("repro", "12")
    assert code == 2 and rep["results"]["error"] == "ValueError"


def test_determinism(code_file):
    outs = {run("verify", "mr", "--code", str(code_file))[1] for _ in range(2)}
    assert len(outs) == 1


def test_equiv_commands(qc_file, tmp_path):
    out = tmp_path / "perm.json"
    code, rep = run_json("equiv", "sufficient", *P2, "--output", str(out))
    assert code == 0 and rep["results"]["tau"] == 1 and out.exists()
    code, rep = run_json("equiv", "build-perm", "--n", "12", "--a", "4", "--t", "1", "1", "1",
                         "--z", "0", "4", "8", "--code", str(qc_file))
    assert rep["results"]["cyclic_after"] is True
    code, rep = run_json("equiv", "necessary", "--q", "3", "--b", "4", "--r", "6", "--delta", "3")
    assert rep["results"]["verdict"] == "hypotheses_unmet"


def test_repair(code_file):
    C = load_code(code_file)
    word = [int(v) for v in C.encode([1, 2, 3, 4, 5, 6, 7, 8])]
    local = [str(v) for v in word]
    local[4] = "?"
    code, rep = run_json("repair", "--code", str(code_file), "--word", ",".join(local))
    assert code == 0 and rep["results"]["local"] == word and "global" not in rep["results"]
    for i in (0, 5, 10):
        local[i] = "?"
    code, rep = run_json("repair", "--code", str(code_file), "--word", ",".join(local))
    assert code == 0 and rep["results"]["global"] == word


def test_jobs_env(monkeypatch, code_file):
    monkeypatch.setenv("LRCMR_JOBS", "1")
    code, rep = run_json("verify", "cyclic", "--code", str(code_file))
    assert code == 0 and "jobs" not in rep["inputs"]


def test_module_entry_point(code_file):
    proc = subprocess.run([sys.executable, "-m", "lrcmr", "verify", "cyclic", "--code", str(code_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["cyclic"]
