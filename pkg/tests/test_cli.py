import io
import json
import subprocess
import sys

from forcingext.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, [json.loads(line) for line in out.getvalue().splitlines()], err.getvalue()


def test_step_report_shape():
    code, rows, _ = run("step", "--seed", "42", "--samples", "2", "--prefix", "256", "--bound", "4096")
    assert code == 0
    assert rows[0]["header"] and rows[0]["rng"] == "splitmix64/rejection-v1"
    assert rows[-1] == {"summary": True, "total": 10, "verified": rows[-1]["verified"],
                        "failed": 0, "inconclusive": rows[-1]["inconclusive"]}
    assert len(rows) == 12


def test_step_is_reproducible(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        code, rows, _ = run("step", "--samples", "3", "--prefix", "128", "--bound", "2048", "--out", str(path))
        assert code == 0 and rows == []
    assert a.read_bytes() == b.read_bytes()


def test_step_without_samples():
    code, rows, _ = run("step", "--samples", "0")
    assert code == 0 and rows[-1]["total"] == 0


def test_step_rejects_dyadic_point():
    code, _, err = run("step", "--point", "1/2")
    assert code == 2 and "dyadic" in err


def test_oracle_command():
    code, rows, _ = run("oracle", "[1/4,1/2)")
    assert code == 0
    assert rows[0] == {"oracle": "ideal", "kind": "Cover", "witnesses": [1]}
    assert rows[1] == {"oracle": "free", "kind": "Avoid", "i": 1}
    _, rows, _ = run("oracle", "{}")
    assert rows[0]["witnesses"] == [] and rows[1] == {"oracle": "free", "kind": "Avoid", "i": 0}
    _, rows, _ = run("oracle", "[0,1/8)u[1/2,5/8)")
    assert rows[0]["kind"] == "Absorb" and rows[1] == {"oracle": "free", "kind": "Between", "i": 2, "j": 3}


def test_oracle_parse_error_reports_offset():
    code, rows, err = run("oracle", "[0,1/3)")
    assert code == 2 and rows == [] and "byte 3" in err


def test_verify_and_show_chain(tmp_path):
    session = tmp_path / "s.txt"
    code, rows, _ = run("verify", "ultra", "--a", "[1/2,3/4)", "--session", str(session))
    assert code == 0 and rows[0]["witnesses"]["n0"] == 4
    code, rows, _ = run("verify", "free", "--e", "[0,1/2)", "--f", "{}", "--session", str(session))
    # the chain already met D_a, so the clause may differ from a fresh chain's
    assert code == 0 and rows[0]["status"] == "verified"
    code, first, _ = run("show-chain", str(session))
    code2, second, _ = run("show-chain", str(session))
    assert code == code2 == 0 and first == second
    assert first[0]["condition"] == {"p0": "{}", "p1": "{}"}
    assert first[-1]["summary"] and first[-1]["entries"] == len(first) - 1


def test_verify_needs_its_arguments():
    code, _, err = run("verify", "ideal", "--e", "{}")
    assert code == 2 and "--f" in err
    code, _, err = run("verify", "ultra", "--a", "[1/4,1/2)")
    assert code == 2 and "ultrafilter" in err


def test_show_chain_examples(tmp_path):
    empty = tmp_path / "empty.txt"
    empty.write_text("")
    _, rows, _ = run("show-chain", str(empty))
    assert len(rows) == 2 and rows[0]["condition"] == {"p0": "{}", "p1": "{}"}
    one = tmp_path / "one.txt"
    one.write_text("Ei=0\n")
    _, rows, _ = run("show-chain", str(one))
    assert rows[1]["condition"] == {"p0": "[0/1,1/4)", "p1": "{}"}


def test_show_chain_rejects_malformed_sessions(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("Ei=0\nDa=[0,1/3)\n")
    code, _, err = run("show-chain", str(bad))
    assert code == 2 and "line 2" in err
    code, _, err = run("show-chain", str(tmp_path / "missing.txt"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "forcingext", "oracle", "{}"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["summary"] is True
