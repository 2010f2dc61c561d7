from __future__ import annotations

import json
import subprocess
import sys

import pytest

from braidroot.braid import inverse, parse_word
from braidroot.cli import EXIT_ERROR, EXIT_OK, EXIT_UNKNOWN, main
from braidroot.curves import make_curves
from braidroot.garside import equals
from braidroot.harness import conjugacy_via_powers
from braidroot.periodic import classify_periodic
from braidroot.regular import to_regular_form
from braidroot.tubular import embed, format_decomposition, make_decomposition


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eq(capsys):
    assert run(capsys, "eq", "-n", "3", "1 2 1", "2 1 2") == (EXIT_OK, "true\n", "")
    assert run(capsys, "eq", "--strands", "3", "1 2", "2 1")[1] == "false\n"


def test_periodic_json(capsys):
    code, out, _ = run(capsys, "periodic", "-n", "3", "1 2", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert (data["base"], data["t"]) == ("delta", 1)
    assert data == classify_periodic(parse_word("1 2", 3)).to_json()


def test_periodic_rejects_non_periodic(capsys):
    code, _, err = run(capsys, "periodic", "-n", "3", "1")
    assert code == EXIT_ERROR and "not periodic" in err


def test_roots_conj_certificate(capsys):
    code, out, _ = run(capsys, "roots-conj", "-n", "3", "-k", "3", "1 2", "2 1", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    expect = conjugacy_via_powers(parse_word("1 2", 3), parse_word("2 1", 3), 3).to_json()
    assert data == expect
    cert = data["certificate"]
    assert cert["verified"] is True
    x = parse_word(cert["witness"], 3)
    assert equals(inverse(x) * parse_word("1 2", 3) * x, parse_word("2 1", 3))


def test_word_commands(capsys):
    assert run(capsys, "mul", "-n", "3", "1 2", "-2", "1")[1] == "s1^2\n"
    assert run(capsys, "inv", "-n", "3", "1 -2")[1] == "s2 s1^-1\n"
    assert run(capsys, "pow", "-n", "3", "1 2", "-k", "2")[1] == "s1 s2 s1 s2\n"
    assert run(capsys, "expsum", "-n", "4", "1 2 3 -1")[1] == "2\n"
    assert run(capsys, "mul", "-n", "3", "1", "-1")[1] == "e\n"


def test_normalize(capsys):
    assert run(capsys, "normalize", "-n", "3", "1 2 1")[1] == "D^1\n"
    data = json.loads(run(capsys, "normalize", "-n", "3", "-1", "--format", "json")[1])
    assert data["inf"] == -1 and len(data["factors"]) == 1


def test_perm(capsys):
    _, out, _ = run(capsys, "perm", "-n", "4", "1 2 3")
    assert out == "4 1 2 3\n(1 4 3 2)\n"
    data = json.loads(run(capsys, "perm", "-n", "4", "1 2 3", "--format", "json")[1])
    assert data == {"images": [4, 1, 2, 3], "cycles": [[1, 4, 3, 2]]}


def test_standardize(capsys):
    code, out, _ = run(capsys, "standardize", "-n", "4", "2 1 2 3 -2", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["verified"] is True


def test_curves_and_decompositions(capsys, tmp_path):
    assert run(capsys, "curves-preserves", "--curves", "n=3; [1-2]", "1")[1] == "true\n"
    assert run(capsys, "curves-preserves", "--curves", "n=3; [1-2]", "2")[1] == "false\n"

    C = make_curves(5, [[1, 2], [4, 5]])
    d = make_decomposition(5, C, parse_word("1 2 1", 3), [parse_word("1", 2), parse_word("1 1 1", 2)])
    text = format_decomposition(d)
    path = tmp_path / "d.txt"
    path.write_text(text)

    code, out, _ = run(capsys, "embed", f"@{path}")
    assert code == EXIT_OK and equals(parse_word(out, 5), embed(d))

    code, out, _ = run(capsys, "decompose", "--curves", str(C), out.strip())
    assert code == EXIT_OK and out == text + "\n"

    code, out, _ = run(capsys, "regular-form", f"@{path}", "--format", "json")
    assert code == EXIT_OK and json.loads(out) == to_regular_form(d).to_json()

    code, out, _ = run(capsys, "reg-conj", f"@{path}", f"@{path}")
    assert code == EXIT_OK and out.startswith("conjugate\n")


def test_decompose_reports_offending_letter(capsys):
    code, _, err = run(capsys, "decompose", "--curves", "n=3; [1-2]", "2")
    assert code == EXIT_ERROR and "letter 1 crosses a tube boundary" in err


def test_brute_root(capsys):
    code, out, _ = run(capsys, "brute-root", "-n", "3", "-k", "2", "1 -2 1 -2", "--max-letters", "4")
    assert code == EXIT_OK and out == "s1 s2^-1\n"
    assert run(capsys, "brute-root", "-n", "3", "-k", "2", "1")[1] == "(none)\n"


def test_verify_writes_report(capsys, tmp_path):
    out_path = tmp_path / "report.jsonl"
    code, out, _ = run(capsys, "verify", "--families", "F2,F4", "--trials", "6", "--seed", "ff", "--out", str(out_path))
    assert code == EXIT_OK and out == ""
    lines = [json.loads(x) for x in out_path.read_text().splitlines()]
    assert len(lines) == 7
    assert lines[-1]["seed"] == "ff" and lines[-1]["unexpected"] == 0


def test_budget_exhaustion_exits_with_unknown(capsys):
    w = "-3 2 1 2 3 4 5 -2 3"  # a conjugate of delta on six strands
    code, out, err = run(capsys, "standardize", "-n", "6", w, "--budget", "1")
    assert (code, out) == (EXIT_UNKNOWN, "")
    assert err.startswith("unknown: ")
    code, out, _ = run(capsys, "standardize", "-n", "6", w)
    assert code == EXIT_OK and out.startswith("conjugate\n")


@pytest.mark.parametrize(
    "argv",
    [
        ["eq", "-n", "3", "1 x", "1"],
        ["eq", "-n", "3", "1"],
        ["bogus"],
        ["pow", "-n", "3", "1"],
        ["embed", "@/nonexistent/file"],
        ["curves-preserves", "--curves", "n=3; [1-3]", "1"],
        ["roots-conj", "-n", "3", "-k", "0", "1", "1"],
        ["roots-conj", "-n", "3", "-k", "2", "1", "1", "--hint-a", "n=3; C=[1-2];"],
    ],
)
def test_errors_exit_with_one(capsys, argv):
    assert main(argv) == EXIT_ERROR


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "braidroot.cli", "eq", "-n", "3", "1 2 1", "2 1 2"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "true\n"
