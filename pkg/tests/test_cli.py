import json
import subprocess
import sys

import pytest

from nanophrase import parse_phrase, canonicalize
from nanophrase.cli import main

DOCS = {
    "abab": "alphabet alpha1\nphrase A:1 B:1 A B\n",
    "aa": "alphabet alpha1\nphrase A:1 A\n",
    "empty": "alphabet alpha1\nphrase\n",
    "bad": "alphabet alpha1\nphrase A:1 B:1 A\n",
    "alpha2": "alphabet alpha2\nphrase A:c B:d A B\n",
    "alpha0": "alphabet alpha0\nphrase A:a B:a A B\n",
    "mixed": "alphabet 1 -1 g\ntau 1:-1\nS knotlike\nphrase A:1 G:g A G\n",
    "noncomm": "alphabet p q r\ntau p:q\nnu q:r\nphrase A:p A\n",
    "abacbc": "alphabet alpha1\nphrase A:1 B:-1 A C:1 B C\n",
}


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in DOCS.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate(files, capsys):
    code, out, _ = run(capsys, "validate", files["abab"])
    assert code == 0 and out == "OK: 2 letters, 1 component\n"
    code, out, _ = run(capsys, "validate", files["bad"])
    assert code == 1 and "B:1" in out


def test_unreadable_file_is_usage_error(capsys, tmp_path):
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.txt"))
    assert code == 2 and err


def test_unknown_flag_is_usage_error(files):
    with pytest.raises(SystemExit) as exc:
        main(["jones", files["abab"], "--bogus"])
    assert exc.value.code == 2


def test_jones_direct(files, capsys):
    code, out, _ = run(capsys, "jones", files["abab"])
    assert code == 0 and out.splitlines()[0] == "-t^-10 + t^-6 + t^-4"
    assert "# writhe: 2" in out
    code, out, _ = run(capsys, "jones", files["empty"])
    assert code == 0 and out.splitlines()[0] == "1"


def test_jones_routes(files, capsys):
    code, out, _ = run(capsys, "jones", files["alpha2"], "--route", "UL=c")
    assert code == 0 and out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "jones", files["alpha0"], "--route", "UL=a")
    assert out.splitlines()[0] == "-t^-10 + t^-6 + t^-4"
    code, out, _ = run(capsys, "jones", files["alpha2"])
    assert code == 1


def test_bracket(files, capsys):
    code, out, _ = run(capsys, "bracket", files["abab"], "--generic")
    assert code == 0 and out.splitlines()[0] == "u^2*d + 2*t*u + t^2"
    code, out, _ = run(capsys, "bracket", files["aa"])
    assert out.splitlines()[0] == "-t^3"


def test_oracle_check(files, capsys):
    code, out, _ = run(capsys, "oracle-check", files["abacbc"], "--lifts", "4")
    assert code == 0


def test_functor(files, capsys):
    code, out, _ = run(capsys, "functor", files["abab"], "--target", "1")
    assert code == 0
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    assert canonicalize(parse_phrase(body)) == canonicalize(parse_phrase(DOCS["abab"]))
    code, out, _ = run(capsys, "functor", files["mixed"], "--target", "G")
    body = "\n".join(line for line in out.splitlines() if not line.startswith("#"))
    G = parse_phrase(body)
    assert G.alphabet.name == "alphaG" and len(G.components[0]) == 2
    code, _, err = run(capsys, "functor", files["noncomm"], "--target", "1")
    assert code == 1 and "do not commute at" in err


def test_project(files, capsys):
    code, out, _ = run(capsys, "project", files["alpha0"], "--L", "a")
    assert code == 0 and "alpha1" in out
    code, out, _ = run(capsys, "project", files["alpha0"], "--L", "b")
    assert code == 1


def test_equiv(files, capsys):
    code, out, _ = run(capsys, "equiv", files["aa"], files["empty"])
    assert code == 0 and out.startswith("Equivalent")
    assert "H1 @ 0" in out
    code, out, _ = run(capsys, "equiv", files["abab"], files["empty"])
    assert code == 1 and out.startswith("Unknown")
    code, _, _ = run(capsys, "equiv", files["abab"], files["alpha0"])
    assert code == 2


def test_fuzz(files, capsys):
    code, out1, _ = run(capsys, "fuzz", files["abacbc"], "--seed", "3")
    assert code == 0
    code, out2, _ = run(capsys, "fuzz", files["abacbc"], "--seed", "3")
    assert out1 == out2
    code, _, _ = run(capsys, "fuzz", files["alpha2"], "--check", "ul=c")
    assert code == 0
    code, _, _ = run(capsys, "fuzz", files["mixed"], "--check", "f1")
    assert code == 0


def test_report(files, capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, out, _ = run(capsys, "--report", str(rep), "jones", files["abab"])
    data = json.loads(rep.read_text())
    assert data["exit_code"] == 0 and data["polynomial"] == "-t^-10 + t^-6 + t^-4"


@pytest.mark.parametrize("argv", [
    ["jones", "abab"],
    ["fuzz", "abacbc", "--seed", "7", "--moves", "12"],
    ["equiv", "aa", "empty"],
])
def test_byte_identical_across_processes(files, argv):
    argv = [files.get(a, a) for a in argv]
    cmd = [sys.executable, "-m", "nanophrase.cli", *argv]
    a = subprocess.run(cmd, capture_output=True, check=False)
    b = subprocess.run(cmd, capture_output=True, check=False)
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout and a.stdout
