import io
import subprocess
import sys

import pytest

from dendric.cli import RunConfig, bundled_systems, load_system, main
from dendric import InputError
from dendric.tame import parse_certificate, verify_certificate
from dendric.words import word


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def p_values(text):
    return [int(line.split("\t")[1]) for line in text.splitlines()[1:]]


def test_bundled():
    assert bundled_systems() == ["fibonacci.sub", "thuemorse.sub", "tribonacci.sub"]
    assert load_system("tribonacci.sub") == load_system("tribonacci")
    with pytest.raises(InputError):
        load_system("nope")


def test_language():
    code, text = run("language", "--system", "tribonacci", "--max-len", "4", "--format", "tsv")
    assert code == 0 and p_values(text) == [1, 3, 5, 7, 9]
    _, text = run("language", "--system", "fibonacci", "--max-len", "3", "--format", "tsv")
    assert p_values(text) == [1, 2, 3, 4]
    _, text = run("language", "--system", "fibonacci", "--max-len", "0")
    assert text.startswith("p(0)=1")


def test_returns_example():
    code, text = run("returns", "--system", "tribonacci", "--word", "aba")
    lines = text.splitlines()
    assert code == 0
    assert lines[:3] == ["abac", "aba", "ab"]
    assert lines[3:6] == ["r1 = abac", "r2 = aba", "r3 = ab"]
    assert lines[-1] == "basis: true"


def test_derive():
    code, text = run("derive", "--system", "fibonacci", "--word", "a", "--bound", "3")
    assert code == 0
    assert "r1 = ab" in text and "  1: r1 r2" in text


def test_check_dendric():
    assert run("check-dendric", "--system", "tribonacci", "--bound", "6")[0] == 0
    assert run("check-dendric", "--system", "fibonacci", "--bound", "6")[0] == 0
    code, text = run("check-dendric", "--system", "thuemorse", "--bound", "2")
    assert code == 1 and "witness: eps" in text and 'graph "eps" {' in text


def test_check_dendric_tsv():
    code, text = run("check-dendric", "--system", "thuemorse", "--bound", "1", "--format", "tsv")
    assert code == 1
    assert text.splitlines()[:2] == ["word\tconnected\ttree\tmultiplicity", "eps\ttrue\tfalse\t1"]


def test_check_returns(tmp_path):
    code, text = run("check-returns", "--system", "tribonacci", "--bound", "5", "--format", "tsv",
                     "--cert-dir", str(tmp_path))
    assert code == 0
    rows = [line.split("\t") for line in text.splitlines()[1:-1]]
    assert rows and all(r[1] == "3" and r[2] == "true" and r[3] == "true" for r in rows)
    cert = parse_certificate((tmp_path / "aba.cert").read_text(), load_system("tribonacci").domain)
    assert verify_certificate(cert, [word("ab"), word("aba"), word("abac")], cert.alphabet)

    code, text = run("check-returns", "--system", "fibonacci", "--bound", "5", "--format", "tsv")
    rows = [line.split("\t") for line in text.splitlines()[1:-1]]
    assert code == 0 and all(r[1] == "2" and r[2] == "true" for r in rows)


def test_check_returns_thue_morse():
    code, text = run("check-returns", "--system", "thuemorse", "--bound", "3")
    assert code == 1
    assert text.splitlines()[-1] == "witness: a has 3 return words (abb, ab, a), not a basis"


def test_tight_budget_warns_but_passes():
    code, text = run("check-returns", "--system", "tribonacci", "--bound", "2", "--budget", "1")
    assert code == 0 and "warning: no tame certificate" in text


def test_theorem():
    code, text = run("theorem", "--system", "tribonacci", "--bound", "5")
    assert code == 0 and "verdict: agree (dendric" in text
    code, text = run("theorem", "--system", "thuemorse", "--bound", "3")
    assert code == 0 and "verdict: agree (not dendric" in text
    code, text = run("theorem", "--system", "thuemorse", "--bound", "0")
    assert code == 0 and "verdict: inconclusive" in text


def test_theorem_is_deterministic():
    args = ("theorem", "--system", "fibonacci", "--bound", "4", "--seed", "7")
    assert run(*args) == run(*args)


EXTENSION_A = """graph "a" {
  "L_a" [label="a"];
  "L_b" [label="b"];
  "L_c" [label="c"];
  "R_a" [label="a"];
  "R_b" [label="b"];
  "R_c" [label="c"];
  "L_a" -- "R_b";
  "L_b" -- "R_a";
  "L_b" -- "R_b";
  "L_b" -- "R_c";
  "L_c" -- "R_b";
}
"""


def test_graph_extension_golden():
    code, text = run("graph", "extension", "--system", "tribonacci", "--word", "a")
    assert code == 0 and text == EXTENSION_A


def test_graph_rauzy_and_stallings():
    _, text = run("graph", "rauzy", "--system", "fibonacci", "--order", "1")
    assert text.count(" -> ") == 3 and text.count(";") - text.count(" -> ") == 2
    code, text = run("graph", "stallings", "--system", "tribonacci", "--generators", "ab,aba,abac")
    assert code == 0 and text.count(" -> ") == 3
    assert "doublecircle" in text and "1 " not in text.replace("1;", "")
    code, text = run("graph", "derived", "--system", "tribonacci", "--word", "a")
    assert code == 0 and text.count(" -- ") == 5


def test_tame():
    code, text = run("tame", "--system", "tribonacci", "--generators", "ab,aba,abac")
    assert code == 0 and text.strip()
    assert run("tame", "--system", "fibonacci", "--generators", "ab,ba")[0] == 1
    code, text = run("tame", "--system", "tribonacci", "--word", "aba")
    assert code == 0


def test_auto_growth_and_explicit_range_error(capsys):
    # |w| = 5 returns need a longer approximation than the starting 24
    code, _ = run("check-returns", "--system", "tribonacci", "--bound", "5")
    assert code == 0
    code, _ = run("check-returns", "--system", "tribonacci", "--bound", "5", "--max-len", "24")
    assert code == 2
    assert "not certified" in capsys.readouterr().err


def test_usage_errors(tmp_path, capsys):
    assert run("returns", "--word", "a")[0] == 2
    assert run("returns", "--system", "tribonacci", "--word", "bb")[0] == 2
    assert run("check-dendric", "--system", "tribonacci", "--bound", "4", "--max-len", "5")[0] == 2
    bad = tmp_path / "bad.sub"
    bad.write_text("a -> ab\nb -> x\n")
    assert run("language", "--system", str(bad))[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_config_validation():
    with pytest.raises(InputError):
        RunConfig(budget=0).validate()
    with pytest.raises(InputError):
        RunConfig(max_len=3, bound=2).validate(uses_bound=True)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "dendric.cli", "language", "--system",
                           "fibonacci", "--max-len", "2", "--format", "tsv"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[0] == "n\tp\ts\tb"
