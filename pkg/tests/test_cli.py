import dataclasses
import io
import json

import pytest

from lcd_agc import cli

GF16 = ["--field", "2^4:x^4+x+1", "--curve", "elliptic-as:b=0,c=8"]


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_construct_emits_json(tmp_path, capsys):
    path = tmp_path / "pair.json"
    code, _, _ = run(["construct", "--recipe", "thm6", *GF16, "--param", "alpha0=2",
                      "--param", "r=0", "--method", "auto", "--out", str(path)], capsys)
    assert code == 0
    doc = json.loads(path.read_text())
    assert doc["recipe"] == "thm6"
    assert (doc["code"]["params"]["n"], doc["code"]["params"]["k"]) == (22, 4)
    assert doc["code"]["params"]["d_exact"] == 18
    assert all(h["passed"] for h in doc["hypotheses"])

    code, out, _ = run(["mindist", str(path), "--part", "dual", "--method", "column_search"], capsys)
    assert code == 0
    res = json.loads(out)
    assert (res["n"], res["k"], res["d_lower"], res["exact"]) == (22, 18, 4, True)


def test_hypothesis_failure_exits_2(capsys):
    code, out, err = run(["construct", "--recipe", "thm4", *GF16, "--param", "alpha0=2",
                          "--param", "r=5"], capsys)
    assert code == 2
    assert "P∉E[r]" in err
    assert out == ""


def test_usage_errors_exit_1(capsys):
    assert run(["construct", "--recipe", "thm4", "--field", "2^x", "--param", "r=1"], capsys)[0] == 1
    assert run(["construct", "--recipe", "nope", *GF16], capsys)[0] == 1
    assert run(["construct", "--recipe", "thm4", *GF16, "--param", "r"], capsys)[0] == 1
    assert run(["reproduce", "no-such-example"], capsys)[0] == 1


def test_rr_command(capsys):
    code, out, _ = run(["rr", *GF16, "--divisor", "4*O"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["dimension"] == 4


def test_reproduce_is_deterministic():
    runs = []
    for _ in range(2):
        buf = io.StringIO()
        assert cli.reproduce(["gf4-734", "gf16-thm6"], out=buf)
        runs.append(buf.getvalue())
    assert runs[0] == runs[1]
    assert "PASS gf4-734" in runs[0] and "PASS gf16-thm6" in runs[0]
    assert "not machine-checked" in runs[0]


def test_tampered_expectation_fails_with_diff():
    ex = next(e for e in cli.EXAMPLES if e.key == "gf16-thm6")
    bad = dataclasses.replace(ex, code=dataclasses.replace(ex.code, d=19))
    buf = io.StringIO()
    assert not cli.reproduce(["gf16-thm6"], out=buf, examples=(bad,))
    text = buf.getvalue()
    assert "FAIL gf16-thm6" in text
    assert "expected exactly 19" in text


@pytest.mark.slow
def test_reproduce_all_cli(capsys):
    code, out, _ = run(["reproduce", "all"], capsys)
    assert code == 0
    assert out.count("PASS") == len(cli.EXAMPLES)
