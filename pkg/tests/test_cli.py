import subprocess
import sys

import pytest

from failfuzz.campaign import corpus_name, read_corpus
from failfuzz.cli import main

PY = sys.executable


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_list_subjects(capsys):
    code, out, _ = run(["list-subjects"], capsys)
    assert code == 0
    assert "hello" in out and "tinyc" in out


def test_fuzz_hello(tmp_path, capsys):
    out_dir = tmp_path / "dir"
    code, out, _ = run(["fuzz", "--subject", "hello", "--seed", "1",
                        "--budget-validations", "100000", "--out", str(out_dir)], capsys)
    assert code == 0
    assert list(read_corpus(out_dir).values()) == [b"HELLO"]
    assert "unique_valid: 1" in out


def test_fuzz_unknown_subject(capsys):
    code, _, err = run(["fuzz", "--subject", "nosuch", "--seed", "1",
                        "--budget-validations", "10"], capsys)
    assert code != 0
    assert "nosuch" in err
    assert len(err.strip().splitlines()) == 1


def test_fuzz_prints_fresh_seed(capsys):
    code, _, err = run(["fuzz", "--subject", "json", "--alphabet", "printable",
                        "--budget-validations", "200"], capsys)
    assert code == 0
    assert err.startswith("seed: ")


@pytest.mark.parametrize("argv", [
    ["fuzz", "--subject", "hello", "--seed", "1"],
    ["fuzz", "--subject", "hello", "--command", "x", "--budget-validations", "1"],
    ["fuzz", "--subject", "hello", "--oapprox", "3", "--budget-validations", "1"],
    ["fuzz", "--subject", "hello", "--alphabet", "nope", "--budget-validations", "1"],
    ["fuzz", "--subject", "hello", "--budget-validations", "-5"],
    ["fuzz", "--subject", "hello", "--max-len", "0", "--budget-validations", "1"],
    [],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code != 0


def test_fuzz_report_and_trace(tmp_path, capsys):
    rep = tmp_path / "rep"
    trace = tmp_path / "trace.log"
    code, _, _ = run(["fuzz", "--subject", "jpeg", "--seed", "3", "--budget-validations",
                      "50000", "--out", str(tmp_path / "c"), "--report-dir", str(rep),
                      "--trace", str(trace)], capsys)
    assert code == 0
    assert {p.name for p in rep.iterdir()} == {"report.txt", "report.json", "growth.png",
                                               "lengths.png"}
    lines = trace.read_text().splitlines()
    assert lines[0].startswith("S ")
    assert any(line.startswith("B ") for line in lines)


def test_fuzz_file_alphabet(tmp_path, capsys):
    alpha = tmp_path / "alpha"
    alpha.write_bytes(b"HELOX")
    code, out, _ = run(["fuzz", "--subject", "hello", "--seed", "0", "--alphabet",
                        f"file:{alpha}", "--budget-validations", "500"], capsys)
    assert code == 0 and "unique_valid: 1" in out


def test_fuzz_random_baseline(capsys):
    code, out, _ = run(["fuzz", "--subject", "csv", "--seed", "0", "--mode", "random-baseline",
                        "--alphabet", "printable", "--budget-validations", "300"], capsys)
    assert code == 0 and "mode: random-baseline" in out


def test_compare(tmp_path, capsys):
    code, out, _ = run(["compare", "--subject", "json", "--alphabet", "printable", "--seed", "0",
                        "--budget-validations", "3000", "--report-dir", str(tmp_path)], capsys)
    assert code == 0
    assert "ratio: " in out
    assert (tmp_path / "growth.png").exists()
    assert (tmp_path / "failure-feedback" / "report.txt").exists()
    assert (tmp_path / "random-baseline" / "report.json").exists()


def test_conformance(capsys):
    code, out, _ = run(["conformance", "--subject", "json", "--samples", "200"], capsys)
    assert code == 0 and "violations: 0" in out


def test_conformance_command_needs_golden(capsys):
    with pytest.raises(SystemExit):
        main(["conformance", "--command", "true"])


def test_conformance_command_with_golden(tmp_path, capsys):
    golden = tmp_path / "g"
    golden.write_bytes(b"HELLO")
    code, out, _ = run(["conformance", "--command", f"{PY} -m failfuzz.subjects hello",
                        "--timeout-ms", "10000", "--golden", str(golden), "--samples", "5"],
                       capsys)
    assert code == 0 and "violations: 0" in out


def test_replay(tmp_path, capsys):
    (tmp_path / corpus_name(b"HELLO")).write_bytes(b"HELLO")
    assert run(["replay", "--subject", "hello", str(tmp_path)], capsys)[0] == 0
    (tmp_path / corpus_name(b"HELL")).write_bytes(b"HELL")
    code, out, _ = run(["replay", "--subject", "hello", str(tmp_path)], capsys)
    assert code == 1 and "failed: 1" in out


def test_replay_missing_dir(tmp_path, capsys):
    code, _, err = run(["replay", "--subject", "hello", str(tmp_path / "none")], capsys)
    assert code == 1 and err.startswith("failfuzz: error:")


def test_fuzz_external_command(tmp_path, capsys):
    cmd = f"{PY} -m failfuzz.subjects hello"
    code, out, _ = run(["fuzz", "--command", cmd, "--alphabet", "printable", "--seed", "2",
                        "--budget-validations", "40", "--timeout-ms", "10000",
                        "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "total_validations: 40" in out


def test_console_entry_point():
    proc = subprocess.run([PY, "-m", "failfuzz.cli", "list-subjects"], capture_output=True,
                          text=True, timeout=60)
    assert proc.returncode == 0 and "jpeg-indexed" in proc.stdout
