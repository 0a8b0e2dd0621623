import json

import pytest

from ssgamma.cli import EXIT_CONFIG, EXIT_MISMATCH, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def no_floats(obj):
    if isinstance(obj, float):
        return False
    if isinstance(obj, dict):
        return all(no_floats(v) for v in obj.values())
    if isinstance(obj, list):
        return all(no_floats(v) for v in obj)
    return True


def test_gamma_so_matches(capsys):
    code, out = run(
        capsys, "gamma-so", "--p", "3", "--ell", "1", "--zeta", "-1",
        "--tau-j", "1", "--tau-pi", "-1",
    )
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["matches"] is True
    assert doc["computed"] == doc["predicted"]
    assert no_floats(doc)
    assert doc["metadata"]["level_N"] == 2


def test_gamma_so_deterministic_output(capsys):
    args = ("gamma-so", "--p", "3", "--ell", "1", "--zeta", "1")
    _, out1 = run(capsys, *args)
    _, out2 = run(capsys, *args)
    assert out1 == out2


def test_gamma_so_brute_mode(capsys):
    code, out = run(
        capsys, "gamma-so", "--p", "3", "--ell", "1", "--zeta", "1", "--mode", "brute"
    )
    assert code == EXIT_OK
    assert json.loads(out)["metadata"]["mode"] == "brute-force"


def test_config_errors(capsys):
    assert run(capsys, "gamma-so", "--p", "4", "--zeta", "1")[0] == EXIT_CONFIG
    assert run(capsys, "gamma-so", "--p", "3", "--zeta", "2")[0] == EXIT_CONFIG
    assert run(capsys, "gamma-so", "--p", "3", "--zeta", "1", "--tau-j", "5")[0] == EXIT_CONFIG
    assert run(capsys, "gamma-so", "--p", "3", "--zeta", "1", "--level", "1")[0] == EXIT_CONFIG
    assert run(capsys, "param", "--p", "3", "--ell", "3")[0] == EXIT_CONFIG


def test_scan_support(capsys):
    code, out = run(capsys, "scan-support", "--p", "3", "--ell", "1", "--side", "phi")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["predicate_match"] is True
    assert doc["predicate_mismatches"] == []
    assert doc["nonvanishing"]


def test_scan_support_negative_control(capsys):
    code, out = run(
        capsys, "scan-support", "--p", "3", "--ell", "1", "--side", "phi-star",
        "--corrupt-predicate",
    )
    assert code == EXIT_MISMATCH
    assert json.loads(out)["predicate_match"] is False


def test_table_csv(capsys):
    code, out = run(capsys, "table", "--p", "3", "--ell", "1")
    assert code == EXIT_OK
    lines = out.strip().split("\n")
    assert lines[0] == "p,ell,zeta,tau_j,tau_pi,gamma_so,gamma_gl_closed,match,error"
    # 1 prime x 1 ell x 2 zeta x (p-1) tau_j x 2 tau_pi rows
    assert len(lines) == 1 + 2 * 2 * 2
    assert all(",true," in row for row in lines[1:])
    # deterministic row order: zeta block -1 before 1
    assert lines[1].startswith("3,1,-1,0,-1")


def test_param_output(capsys):
    code, out = run(capsys, "param", "--p", "5", "--ell", "2", "--zeta", "-1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["depth"] == "1/4"
    assert doc["depth_check"]["unique_single_block"] is True
    assert doc["kappa_on_units"]["2"] == -1
    assert no_floats(doc)


def test_output_file_and_env_dir(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SSGAMMA_OUTPUT_DIR", str(tmp_path))
    code, out = run(
        capsys, "gamma-so", "--p", "3", "--ell", "1", "--zeta", "1",
        "--output", "g.json",
    )
    assert code == EXIT_OK
    assert out == ""
    data = (tmp_path / "g.json").read_bytes()
    assert b"\r" not in data
    assert json.loads(data)["matches"] is True
