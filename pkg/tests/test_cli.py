import json
import subprocess
import sys

import pytest

from qvertex.cli import all_pass, main, parse_q, parse_window, serialize
from qvertex.errors import ConfigError


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_expand_examples(capsys):
    code, out, _ = run(["expand", "1/(x1-x2)", "--order", "x2,x1", "--prec", "3", "--format", "text"], capsys)
    assert code == 0
    assert out.startswith("-x2^-1 - x1*x2^-2 - x1^2*x2^-3")
    code, out, _ = run(["expand", "x1+x2", "--order", "x1,x2", "--format", "text"], capsys)
    assert out.startswith("x1 + x2")
    code, out, _ = run(["expand", "(q*x2-x1)/(x2-q*x1)", "--order", "x2,x1", "--prec", "6"], capsys)
    data = json.loads(out)
    const = [t["c"] for t in data["terms"] if not t["e"]]
    assert const == ["q"]


def test_expand_parse_error(capsys):
    code, _, err = run(["expand", "1/(x1-", "--order", "x1"], capsys)
    assert code == 3 and "ParseError" in err


def test_q_one_is_a_config_error(capsys):
    code, _, err = run(["betagamma", "--q", "1"], capsys)
    assert code == 2 and "q != 1" in err
    with pytest.raises(ConfigError):
        parse_q("0")


def test_windows():
    assert parse_window("4") == (-4, 4)
    assert parse_window("-1,3") == (-1, 3)
    with pytest.raises(ConfigError):
        parse_window("3,1")


def test_serialize():
    assert serialize([]) == "[]"
    assert serialize([], "text") == "[]"
    e = {"suite": "s", "check": "c", "window": [1, 2], "result": "pass"}
    assert json.loads(serialize([e])) == [e]
    assert serialize([e]) == serialize(json.loads(serialize([e])))
    bad = dict(e, result="fail", witness=[3, -4])
    assert not all_pass([e, bad])
    assert "witness=[3, -4]" in serialize([bad], "text")


def test_verify_affine_and_exit_code(capsys):
    code, out, _ = run(["verify", "--suite", "affine-gij"], capsys)
    assert code == 0
    assert all(e["result"] == "pass" for e in json.loads(out))


def test_failing_suite_exits_nonzero(capsys):
    code, out, _ = run(["betagamma", "--suite", "aq-module", "--grade", "1", "--format", "text"], capsys)
    assert code == 1
    assert "FAIL" in out


def test_fock_dump(capsys):
    code, out, _ = run(["fock", "--dump-basis", "--grade", "1"], capsys)
    assert code == 0
    assert [g["dimension"] for g in json.loads(out)["grades"]] == [1, 2, 1]


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "q.ini"
    cfg.write_text("[qvertex]\nformat = text\ngrade = 1\n")
    code, out, _ = run(["--config", str(cfg), "fock", "--dump-basis"], capsys)
    assert code == 0 and out.startswith("grade 0 (dim 1)")
    cfg.write_text("[other]\n")
    code, _, err = run(["--config", str(cfg), "fock", "--dump-basis"], capsys)
    assert code == 2


def test_threads_env(monkeypatch, capsys):
    monkeypatch.setenv("QVERTEX_THREADS", "2")
    code, out, _ = run(["verify", "--suite", "appendix", "--count", "2", "--prec", "5"], capsys)
    assert code == 0
    monkeypatch.setenv("QVERTEX_THREADS", "many")
    code, _, _ = run(["verify", "--suite", "appendix", "--count", "1"], capsys)
    assert code == 2


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "qvertex.cli", "expand", "x1", "--order", "x1", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("x1")
