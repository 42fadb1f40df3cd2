import json
import subprocess
import sys

import pytest

from mk3kit.cli import run

FAMILY = "6,-468,-4330,1"


def run_cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_count_paper_value(capsys):
    code, out = run_cli(capsys, "count", "--family", FAMILY, "--p", "7", "--n", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["N"] == "43"


def test_count_byte_identical_across_threads(capsys):
    _, first = run_cli(capsys, "count", "--family", FAMILY, "--p", "7", "--n", "2")
    _, second = run_cli(capsys, "count", "--family", FAMILY, "--p", "7", "--n", "2",
                        "--threads", "2")
    assert first == second


def test_count_slow_gate(capsys):
    code, _ = run_cli(capsys, "count", "--family", FAMILY, "--p", "7", "--n", "6")
    assert code == 2


def test_coeffs_flag(capsys):
    code, out = run_cli(capsys, "count", "--coeffs", "469,-36,-4052880,1296,8774438543",
                        "--p", "7", "--n", "1")
    assert code == 0
    assert json.loads(out)["N"] == "43"


def test_form_flags_are_exclusive(capsys):
    code, _ = run_cli(capsys, "count", "--family", FAMILY, "--coeffs", "1,2,3,4,5",
                      "--p", "7")
    assert code == 2


def test_zeta_from_counts(capsys):
    counts = "43,2843,113191,5786411,282458443,13843757831,678222249307"
    code, out = run_cli(capsys, "zeta", "--p", "7", "--counts", counts)
    assert code == 0
    doc = json.loads(out)
    assert doc["charpoly_descending"] == [
        "1", "-1", "0", "4", "-4", "0", "6", "-6", "6", "0", "-4", "4", "0", "-1", "1"
    ]
    assert doc["unit_root_count"] == "0"


def test_zeta_counts_file(tmp_path, capsys):
    payload = {"p": 7, "counts": [43, 2843, 113191, 5786411, 282458443,
                                  13843757831, 678222249307]}
    path = tmp_path / "counts.json"
    path.write_text(json.dumps(payload))
    code, out = run_cli(capsys, "picard-bound", "--counts-file", str(path))
    assert code == 0
    assert json.loads(out)["picard_upper_bound"] == "8"


def test_lattice_builtin(capsys):
    code, out = run_cli(capsys, "lattice", "--which", "S")
    assert code == 0
    assert json.loads(out)["det"] == "-192"
    code, out = run_cli(capsys, "lattice", "--which", "Sprime")
    assert json.loads(out)["det"] == "-12"


def test_lattice_from_file(tmp_path, capsys):
    path = tmp_path / "gram.txt"
    path.write_text("2 0\n0 4\n")
    code, out = run_cli(capsys, "lattice", "--gram-file", str(path))
    assert code == 0
    doc = json.loads(out)
    assert doc["det"] == "8" and doc["snf"] == ["2", "4"]


def test_h1_builtins(capsys):
    code, out = run_cli(capsys, "h1", "--builtin", "picU")
    assert code == 0
    assert json.loads(out)["group"] == ["2", "2", "2", "2", "2"]
    _, out = run_cli(capsys, "h1", "--builtin", "picW-S")
    assert json.loads(out)["group"] == ["2", "2"]


def test_h1_sigma_file(tmp_path, capsys):
    path = tmp_path / "sigma.txt"
    path.write_text("-1 0\n0 -1\n")
    code, out = run_cli(capsys, "h1", "--sigma-file", str(path))
    assert code == 0
    assert json.loads(out)["group"] == ["2", "2"]


def test_h1_requires_exactly_one_source(capsys):
    code, _ = run_cli(capsys, "h1")
    assert code == 2


def test_bm_negative_verdict_exit_codes(capsys):
    code, out = run_cli(capsys, "bm", "--ell", "2")
    assert code == 0
    assert json.loads(out)["verdict"] == "hypotheses_unmet"
    code, _ = run_cli(capsys, "--strict", "bm", "--ell", "2")
    assert code == 1


def test_local_insoluble_strict(capsys):
    code, out = run_cli(capsys, "local", "--k", "2")
    assert code == 0
    assert json.loads(out)["verdict"] == "insoluble"
    code, _ = run_cli(capsys, "--strict", "local", "--k", "2")
    assert code == 1


def test_ec_seed(capsys):
    code, out = run_cli(capsys, "ec", "--ell", "-12", "--multiples", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["seed"] == ["5625/4", "-562725/8"]
    assert doc["infinite_order"] is True
    assert len(doc["multiples"]) == 2


def test_orbit(capsys):
    # the = form keeps argparse from reading the leading minus as a flag
    code, out = run_cli(capsys, "orbit", "--family", FAMILY,
                        "--seed=-600/2501,1666/139,1/0",
                        "--height-bound", "1000000000000", "--steps", "5")
    assert code == 0
    doc = json.loads(out)
    assert int(doc["count"]) >= 1
    assert len(doc["points"]) == int(doc["count"])


def test_integral(capsys):
    code, out = run_cli(capsys, "integral", "--coeffs", "3,2,5,-1,-9")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == str(len(doc["points"]))


def test_survey_csv(capsys):
    code, out = run_cli(capsys, "survey", "--M", "1000", "--M", "10000", "--modulus", "24")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "M,count_local,count_obstructed"
    assert lines[1].startswith("1000,") and len(lines) == 3


def test_smooth_and_nondegen(capsys):
    code, out = run_cli(capsys, "smooth", "--family", FAMILY, "--p", "5")
    assert code == 0 and json.loads(out)["smooth"] is True
    code, out = run_cli(capsys, "--strict", "smooth", "--family", FAMILY, "--p", "7")
    assert code == 1
    code, out = run_cli(capsys, "nondegen", "--coeffs", "1,1,1,1,1")
    assert code == 0 and json.loads(out)["nondegenerate"] is False


def test_out_flag(tmp_path, capsys):
    path = tmp_path / "result.json"
    code = run(["--out", str(path), "count", "--family", FAMILY, "--p", "7", "--n", "1"])
    assert code == 0
    assert json.loads(path.read_text())["N"] == "43"


def test_usage_error_reports_flag(capsys):
    code = run(["count", "--p", "7"])
    err = capsys.readouterr().err
    assert code == 2
    assert "--family" in err or "family" in err


def test_console_entry_point():
    result = subprocess.run(
        ["mk3", "nondegen", "--coeffs", "1,2,3,5,4"],
        capture_output=True, text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["nondegenerate"] is True
