import contextlib
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from autoseq.cli import main

GOLDEN = Path(__file__).parent / "golden"

GOLDEN_CASES = {
    "seq_rs.txt": ["seq", "--k", "2", "--L", "2", "--pattern", "11", "--from", "0", "--count", "8"],
    "automaton_tm.dot": ["automaton", "--k", "2", "--L", "2", "--digitsum", "--minimize", "--dot"],
    "witness_lemma22.txt": ["witness", "--lemma22", "3,2", "--k", "2"],
    "eval_tm_partial.txt": ["eval", "--k", "2", "--L", "2", "--digitsum", "--beta", "2", "--partial", "8"],
    "scan_rs.txt": ["scan", "--k", "2", "--L", "2", "--pattern", "11", "--Nmax", "2", "--lmax", "2", "--budget", "100"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_byte_equality(name):
    code, out, _ = invoke(GOLDEN_CASES[name])
    assert code == 0
    assert out == (GOLDEN / name).read_text()


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_repeat_invocations_are_identical(name):
    first = invoke(GOLDEN_CASES[name])
    second = invoke(GOLDEN_CASES[name])
    assert first == second


def test_seq_with_verify_and_machine_agreement():
    code, out, _ = invoke(
        ["seq", "--k", "2", "--L", "2", "--digitsum", "--from", "0", "--count", "8", "--verify"]
    )
    assert code == 0
    assert out == "0 1 1 0 1 0 0 1\n"


def test_seq_constant_spec():
    code, out, _ = invoke(
        ["seq", "--k", "2", "--L", "2", "--digitsum", "--coeffs", "0,1,1",
         "--from", "5", "--count", "3"]
    )
    assert code == 0
    assert out == "0 0 0\n"


def test_seq_from_spec_file(tmp_path):
    spec = {"k": 2, "L": 2, "core": {"kind": "pattern", "pattern": "11"}, "transforms": []}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out, _ = invoke(["seq", "--spec", str(path), "--from", "0", "--count", "8"])
    assert code == 0
    assert out == "0 0 0 1 0 0 1 0\n"


def test_spec_file_and_inline_flags_conflict(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"k": 2, "L": 2, "core": {"kind": "digitsum"}}))
    code, _, err = invoke(["seq", "--spec", str(path), "--k", "2", "--count", "4"])
    assert code == 2
    assert "mutually exclusive" in err


def test_bad_spec_file_exits_2(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = invoke(["seq", "--spec", str(path), "--count", "4"])
    assert code == 2
    path.write_text(json.dumps({"k": 2, "L": 2, "core": {"kind": "pattern"}}))
    code, _, err = invoke(["seq", "--spec", str(path), "--count", "4"])
    assert code == 2


def test_automaton_reports_states_on_stderr():
    code, out, err = invoke(["automaton", "--k", "2", "--L", "2", "--pattern", "11", "--minimize"])
    assert code == 0
    assert "states=4" in err
    assert out.startswith("digraph dfao {")
    assert out.endswith("}\n")


def test_automaton_unminimized_has_more_states():
    _, out_min, err_min = invoke(["automaton", "--k", "2", "--L", "2", "--pattern", "11", "--minimize"])
    _, out_raw, err_raw = invoke(["automaton", "--k", "2", "--L", "2", "--pattern", "11"])
    assert "states=4" in err_min
    assert "states=5" in err_raw
    assert out_min != out_raw


def test_automaton_state_cap_exit_4():
    code, _, err = invoke(
        ["automaton", "--k", "2", "--L", "2", "--pattern", "11",
         "--arithsub", "1,2", "--state-cap", "2"]
    )
    assert code == 4
    assert "state cap" in err


def test_witness_prop41():
    code, out, _ = invoke(["witness", "--prop41", "3,1", "--k", "2", "--L", "2"])
    assert code == 0
    assert out == "t=7\n"


def test_witness_refute_report_format():
    code, out, err = invoke(
        ["witness", "--refute", "0,1", "--k", "2", "--L", "2", "--pattern", "11"]
    )
    assert code == 0
    assert out == "N=0 l=1 witness=3 vN=0 vW=1\n"
    assert "path=brute" in err


def test_witness_refute_constructive_trace_on_stderr():
    code, out, err = invoke(
        ["witness", "--refute", "0,3", "--k", "2", "--L", "2", "--pattern", "11",
         "--strategy", "construct"]
    )
    assert code == 0
    assert out.startswith("N=0 l=3 witness=")
    assert "path=construct-case1" in err
    assert "Uxl value=" in err


def test_witness_cap_exit_5():
    code, _, err = invoke(["witness", "--prop41", "3,1", "--k", "2", "--L", "2", "--cap", "3"])
    assert code == 5
    assert "cap" in err


def test_witness_needs_exactly_one_mode():
    code, _, _ = invoke(["witness", "--k", "2"])
    assert code == 2
    code, _, _ = invoke(["witness", "--lemma22", "3,2", "--prop41", "3,1", "--k", "2", "--L", "2"])
    assert code == 2


def test_witness_lemma22_infinite_gap():
    code, out, _ = invoke(["witness", "--lemma22", "1,5", "--k", "2"])
    assert code == 0
    assert out == "x=1 xl=1 w1=0 gap=inf\n"


def test_eval_decimal_digits():
    code, out, _ = invoke(["eval", "--k", "2", "--L", "2", "--digitsum", "--beta", "2", "--digits", "10"])
    assert code == 0
    assert out == "0.4124540336\n"


def test_eval_constant_zero_digits():
    code, out, _ = invoke(
        ["eval", "--k", "2", "--L", "2", "--digitsum", "--coeffs", "0,1,1",
         "--beta", "2", "--digits", "5"]
    )
    assert code == 0
    assert out == "0.00000\n"


def test_eval_beta_below_modulus_exit_6():
    code, _, err = invoke(["eval", "--k", "2", "--L", "3", "--digitsum", "--beta", "2", "--digits", "5"])
    assert code == 6
    assert "beta" in err


def test_scan_exit_codes():
    code, out, _ = invoke(
        ["scan", "--k", "2", "--L", "2", "--pattern", "11", "--Nmax", "5", "--lmax", "5",
         "--budget", "1000"]
    )
    assert code == 0
    assert len(out.splitlines()) == 6 * 5
    assert all("witness=" in line for line in out.splitlines())
    code, out, _ = invoke(
        ["scan", "--k", "2", "--L", "2", "--digitsum", "--Nmax", "3", "--lmax", "3", "--budget", "1000"]
    )
    assert code == 0
    assert len(out.splitlines()) == 4 * 3
    code, out, _ = invoke(
        ["scan", "--k", "2", "--L", "2", "--digitsum", "--coeffs", "0,1,1",
         "--Nmax", "2", "--lmax", "2", "--budget", "50"]
    )
    assert code == 7
    assert all("UNRESOLVED" in line for line in out.splitlines())


def test_out_flag_writes_file(tmp_path):
    target = tmp_path / "out.txt"
    code, out, _ = invoke(
        ["seq", "--k", "2", "--L", "2", "--pattern", "11", "--count", "8", "--out", str(target)]
    )
    assert code == 0
    assert out == ""
    assert target.read_text() == "0 0 0 1 0 0 1 0\n"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "autoseq", "seq", "--k", "2", "--L", "2",
         "--pattern", "11", "--count", "8"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "0 0 0 1 0 0 1 0\n"
