"""End-to-end command line behavior through subprocess.

Covers the documented output schema, exit codes (0 ok, 2 usage, 3 domain,
4 verification failure), byte-level determinism, and the sweep table.
"""

import json
import os
import subprocess
import sys

import pytest

from hypersum.partial_sums import HypParams, gn_direct


def run_cli(*args, env_extra=None, timeout=120):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "hypersum", *args],
        capture_output=True,
        text=True,
        env=env,
        timeout=timeout,
    )


def test_gen_exponential_matches_documented_example():
    out = run_cli("gen", "--p", "0", "--q", "0", "--n", "2")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["command"] == "gen"
    assert doc["version"] == "0.1.0"
    assert doc["results"]["g"] == [1, 1, 0.5]
    assert doc["results"]["delta"] == [1, 2]
    assert doc["results"]["R_coeffs"] == [[-1], [1]]
    assert doc["params"] == {"a": [], "b": [], "p": 0, "q": 0}


def test_gen_monic_confluent():
    out = run_cli(
        "gen", "--p", "1", "--q", "1", "--a", "1", "--b", "2", "--n", "1",
        "--monic",
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["results"]["G"] == [2, 1]


def test_gen_csv_round_trips_values():
    out = run_cli("gen", "--p", "0", "--q", "0", "--n", "3", "--format", "csv")
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "object,index,k,re,im"
    g_rows = [l for l in lines if l.startswith("g,")]
    assert len(g_rows) == 4


def test_malformed_complex_literal_names_the_flag():
    out = run_cli("eval", "--p", "0", "--q", "0", "--n", "2", "--z", "1+2j")
    assert out.returncode == 2
    assert "--z" in out.stderr


def test_malformed_param_list_is_usage_error():
    out = run_cli("gen", "--p", "1", "--q", "0", "--a", "abc", "--n", "2")
    assert out.returncode == 2
    assert "--a" in out.stderr


def test_param_count_mismatch_is_usage_error():
    out = run_cli("gen", "--p", "2", "--q", "0", "--a", "1", "--n", "2")
    assert out.returncode == 2


def test_eval_value_matches_library():
    out = run_cli("eval", "--p", "0", "--q", "0", "--n", "5", "--z", "0.3+0.2i")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    want = gn_direct(HypParams(a=(), b=()), 5)(complex(0.3, 0.2))
    got = doc["results"]["g"][0]
    assert got[0] == pytest.approx(want.real, rel=1e-15)
    assert got[1] == pytest.approx(want.imag, rel=1e-15)


def test_complex_grammar_rejects_whitespace():
    out = run_cli("eval", "--p", "0", "--q", "0", "--n", "2", "--z", "1 + 2i")
    assert out.returncode == 2


def test_roots_command_reports_localization():
    out = run_cli("roots", "--p", "0", "--q", "0", "--n", "2")
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    res = doc["results"]
    assert res["roots"] == [[-1, -1], [-1, 1]]
    assert res["min_modulus"] == pytest.approx(2 ** 0.5, rel=1e-12)
    assert res["ek_annulus"] == [1, 2]
    assert res["positive_real_root_found"] is False


def test_roots_rejects_invalid_family():
    out = run_cli("roots", "--p", "1", "--q", "0", "--a", "2", "--n", "3")
    assert out.returncode == 3
    assert "domain error" in out.stderr


def test_verify_single_check_passes():
    out = run_cli(
        "verify", "--check", "roots", "--p", "0", "--q", "1", "--b", "1.5",
        "--n-max", "12",
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    rows = doc["results"]
    assert list(rows) == ["roots"]
    assert rows["roots"]["status"] == "PASS"
    assert rows["roots"]["max_residual"] <= rows["roots"]["tolerance"]


def test_verify_inapplicable_single_check_exits_3():
    out = run_cli("verify", "--p", "1", "--q", "0", "--a", "2", "--check",
                  "circle-rep")
    assert out.returncode == 3
    assert "circle" in out.stderr


def test_verify_all_skips_inapplicable_and_passes():
    out = run_cli(
        "verify", "--p", "1", "--q", "0", "--a", "1", "--check", "all",
        "--n-max", "8", "--draws", "20",
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    statuses = {name: row["status"] for name, row in doc["results"].items()}
    assert statuses["circle-rep"] == "SKIP"
    assert statuses["roots"] == "SKIP"
    assert statuses["recurrence"] == "PASS"


def test_verify_failure_exits_4():
    out = run_cli(
        "verify", "--p", "0", "--q", "0", "--check", "recurrence",
        "--n-max", "6", "--tol", "1e-30",
    )
    assert out.returncode == 4
    doc = json.loads(out.stdout)
    assert doc["results"]["recurrence"]["status"] == "FAIL"


def test_verify_all_is_byte_deterministic():
    args = ("verify", "--p", "0", "--q", "0", "--check", "all", "--seed", "7",
            "--n-max", "8", "--draws", "20")
    a = run_cli(*args)
    b = run_cli(*args)
    assert a.returncode == 0
    assert a.stdout == b.stdout


def test_verify_csv_format():
    out = run_cli(
        "verify", "--p", "0", "--q", "0", "--check", "recurrence",
        "--format", "csv",
    )
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "check,status,max_residual,tolerance,detail"
    assert lines[1].startswith("recurrence,PASS,")


def test_sweep_rows_and_ordering():
    out = run_cli(
        "sweep", "--p", "0", "--q", "1", "--b", "2", "--quantity",
        "root-modulus", "--grid-param", "b1", "--grid-values", "1.5,2.5",
        "--n-list", "3,2",
    )
    assert out.returncode == 0
    lines = out.stdout.splitlines()
    assert lines[0] == "quantity,grid_param,grid_index,grid_value,n,value"
    assert len(lines) == 5
    # Rows sorted by (grid_index, n) regardless of the order given.
    cells = [line.split(",") for line in lines[1:]]
    assert [(c[2], c[4]) for c in cells] == [
        ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3")
    ]
    for c in cells:
        assert float(c[5]) >= 1.0


def test_sweep_empty_grid_is_header_only():
    out = run_cli(
        "sweep", "--p", "0", "--q", "0", "--quantity", "convergence",
        "--grid-param", "b1", "--grid-values", "", "--n-list", "2",
    )
    assert out.returncode == 0
    assert out.stdout == "quantity,grid_param,grid_index,grid_value,n,value\n"


def test_sweep_unknown_grid_slot_is_domain_error():
    out = run_cli(
        "sweep", "--p", "0", "--q", "0", "--quantity", "convergence",
        "--grid-param", "b2", "--grid-values", "1.0", "--n-list", "2",
    )
    assert out.returncode == 3


def test_sweep_thread_count_does_not_change_output():
    args = (
        "sweep", "--p", "0", "--q", "1", "--b", "2", "--quantity",
        "gram-offdiag", "--grid-param", "b1", "--grid-values", "1.5,2.0,3.0",
        "--n-list", "2,4",
    )
    a = run_cli(*args, env_extra={"HYPERSUM_THREADS": "1"})
    b = run_cli(*args, env_extra={"HYPERSUM_THREADS": "4"})
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "doc.json"
    out = run_cli(
        "gen", "--p", "0", "--q", "0", "--n", "2", "--out", str(target)
    )
    assert out.returncode == 0
    assert out.stdout == ""
    doc = json.loads(target.read_text())
    assert doc["results"]["g"] == [1, 1, 0.5]


def test_unknown_command_is_usage_error():
    out = run_cli("frobnicate")
    assert out.returncode == 2


def test_pencil_command_worked_example():
    out = run_cli(
        "pencil", "--n", "2",
        "--j3-diag", "0,0", "--j3-offdiag", "1,1",
        "--j5-diag", "0,0", "--j5-off1", "0,0", "--j5-off2", "1,1",
    )
    assert out.returncode == 0
    doc = json.loads(out.stdout)
    assert doc["results"]["p"][2] == [0, 0, 1]
    assert doc["results"]["residual_max"] <= 1e-10
