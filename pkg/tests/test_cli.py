import io
import json
import subprocess
import sys

import pytest

from dickson_legendre.cli import RunReport, emit_report, run_command
from dickson_legendre.errors import FormatUnsupported


def run(argv):
    out, err = io.BytesIO(), io.StringIO()
    code, report = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, _ = run(argv)
    return code, json.loads(out)


def test_gen_third_kind():
    code, doc = run_json(["gen", "--kind", "3", "--n", "3"])
    assert code == 0
    assert doc["payload"]["coeffs"] == [[], ["0", "-1"], [], ["1"]]
    assert doc["payload"]["text"] == "x^3 - a*x"


def test_gen_recurrence_and_b():
    _, closed = run_json(["gen", "--kind", "2", "--n", "6"])
    _, rec = run_json(["gen", "--kind", "2", "--n", "6", "--method", "recurrence"])
    _, typed = run_json(["gen", "--b", "1", "--n", "6"])
    assert closed["payload"]["coeffs"] == rec["payload"]["coeffs"] == typed["payload"]["coeffs"]


def test_verify_lemma_passes():
    code, out, _ = run(["verify", "lemma", "--n-max", "16", "--format", "text"])
    assert code == 0
    assert out == b"PASS lemma n=1..16\n"


def test_text_timing_line():
    code, out, _ = run(["verify", "lemma", "--n-max", "4", "--format", "text", "--timing"])
    assert out.startswith(b"PASS lemma n=1..4 (") and out.endswith(b"ms)\n")


def test_particular():
    code, doc = run_json(["particular", "--n", "3", "--a", "1"])
    assert code == 0
    assert doc["payload"]["b"] == ["0", "-1", "0", "1"]


def test_particular_rational_a():
    code, doc = run_json(["particular", "--n", "4", "--a", "3/5"])
    assert code == 0
    assert doc["payload"]["residual_zero"] is True


def test_decompose_and_fit_stoll():
    code, doc = run_json(["decompose", "--n", "5", "--a", "2"])
    assert code == 0 and doc["payload"]["remainder"] == []
    code, doc = run_json(["fit-stoll", "--n", "2", "--k", "0"])
    assert code == 0 and doc["payload"]["dimension"] >= 2
    assert all(doc["payload"]["verified"])


def test_special_csv_header():
    code, out, _ = run(["special", "p", "--n", "2", "--format", "csv"])
    assert code == 0
    lines = out.decode().splitlines()
    assert lines[0] == "x,re,im,residual"
    assert len(lines) == 6


def test_special_scalar_commands():
    _, doc = run_json(["special", "gamma", "--x", "5"])
    assert doc["payload"]["value"] == pytest.approx(24)
    _, doc = run_json(["special", "2f1", "--a", "1", "--b", "1", "--c", "1", "--z-re", "0.5"])
    assert doc["payload"]["value"]["re"] == pytest.approx(2)
    assert set(doc["payload"]["value"]) == {"re", "im"}


def test_special_residual_and_fc():
    code, _, _ = run(["special", "residual", "--n", "3", "--which", "Q"])
    assert code == 0
    code, _, _ = run(["special", "fc", "--n", "2", "--A-im", "1", "--B-re", "1"])
    assert code == 0


def test_special_residual_tolerance_failure():
    code, _, _ = run(["special", "residual", "--n", "3", "--tol", "1e-30"])
    assert code == 1


def test_fit_constants():
    code, doc = run_json(["fit-constants", "--n", "3"])
    assert code == 0
    assert abs(complex(doc["payload"]["A"]["re"], doc["payload"]["A"]["im"])) < 1e-6


def test_ff_commands():
    _, doc = run_json(["ff", "eval", "--n", "3", "--k", "2", "--a", "1", "--x", "2", "--p", "7"])
    assert doc["payload"]["value"] == 6
    _, doc = run_json(["ff", "perm", "--n", "5", "--k", "0", "--a", "1", "--p", "7"])
    assert doc["payload"]["permutation"] is True
    code, _, err = run(["ff", "perm", "--n", "5", "--a", "1", "--p", "7", "--bound", "5"])
    assert code == 2 and "BoundExceeded" in err


def test_verify_functional_and_ff():
    code, _, _ = run(["verify", "functional", "--n-max", "8", "--trials", "10", "--seed", "5"])
    assert code == 0
    code, _, _ = run(["verify", "ff", "--p-max", "7", "--n-max", "6"])
    assert code == 0


def test_determinism():
    argv = ["verify", "functional", "--n-max", "6", "--trials", "5", "--seed", "99"]
    assert run(argv)[1] == run(argv)[1]
    argv = ["special", "q", "--n", "3", "--format", "csv"]
    assert run(argv)[1] == run(argv)[1]


def test_thread_env_keeps_order(monkeypatch):
    serial = run(["verify", "lemma", "--n-max", "12"])[1]
    monkeypatch.setenv("DICKSON_THREADS", "4")
    assert run(["verify", "lemma", "--n-max", "12"])[1] == serial


def test_domain_error_exit_code():
    code, out, err = run(["special", "p", "--n", "1", "--z", "3.5"])
    assert code == 2
    assert err.startswith("error: DomainError")
    code, _, _ = run(["particular", "--n", "3", "--a", "0"])
    assert code == 2


def test_usage_error_exit_code():
    code, _, _ = run(["gen"])
    assert code == 2
    code, _, _ = run(["nonsense"])
    assert code == 2


def test_csv_unsupported_for_non_tabular():
    code, _, err = run(["decompose", "--n", "3", "--a", "1", "--format", "csv"])
    assert code == 2 and "tabular" in err
    with pytest.raises(FormatUnsupported):
        emit_report(RunReport(["x"], "pass", "x", {"value": 1}), "csv")


def test_failed_check_exit_code():
    report = RunReport(["verify"], "fail", "lemma n=1..1", {})
    assert report.exit_code == 1
    assert emit_report(report, "text") == b"FAIL lemma n=1..1\n"


def test_out_file(tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(["gen", "--n", "2", "--out", str(path)])
    assert code == 0 and out == b""
    assert json.loads(path.read_text())["payload"]["coeffs"] == [["0", "-2"], [], ["1"]]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dickson_legendre", "gen", "--kind", "3", "--n", "3", "--format", "text"],
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout == b"PASS gen kind=3 n=3: x^3 - a*x\n"
