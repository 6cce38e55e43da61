import io
import json

import pytest

from qmock.cli import main
from qmock.series import QSeries


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_expand_examples():
    assert run("expand", "f3", "--order", "3") == (0, "1 + q - 2*q^2 + 3*q^3 + O(q^4)\n")
    assert run("expand", "q^(1/8)", "--order", "1") == (0, "q^(1/8) + O(q^(9/8))\n")


def test_parse_error_has_caret(capsys):
    code, _ = run("expand", "j(q;")
    err = capsys.readouterr().err
    assert code == 2
    assert err.splitlines()[-1] == "      ^"


def test_evaluation_errors_exit_3():
    assert run("expand", "m(-q^2, -q^3, 1)", "--order", "5")[0] == 3
    assert run("expand", "1/(q - q)", "--order", "5")[0] == 3


def test_ring_flag():
    assert run("expand", "w", "--order", "2")[0] == 2
    # the result is rational, so no larger field is needed
    assert run("expand", "w*w + w + 1", "--order", "2", "--ring", "eisenstein") == (0, "O(q^3)\n")


def test_json_round_trip():
    code, text = run("expand", "eta(1)*(1+i*q)", "--order", "4", "--ring", "gauss", "--json", "--denom", "48")
    assert code == 0
    data = json.loads(text)
    assert data["denom"] == 48 and data["ring"] == "Qi"
    s = QSeries.from_json(data)
    assert json.loads(run("expand", "eta(1)*(1+i*q)", "--order", "4", "--ring", "gauss", "--json")[1]) == s.to_json()


def test_string_command():
    code, text = run("string", "--p", "1", "--pprime", "3", "--m", "1", "--ell", "1", "--normalized", "--order", "5")
    assert code == 0
    assert text == "1 + q + 2*q^2 + 3*q^3 + 5*q^4 + 7*q^5 + O(q^6)\n"
    code, text = run("string", "--p", "5", "--pprime", "12", "--m", "0", "--ell", "0", "--normalized",
                     "--order", "20", "--json")
    data = json.loads(text)
    assert code == 0 and data["s_norm"] == "-1/48"
    assert all("/" not in c for _, c in data["series"]["terms"])
    assert run("string", "--p", "2", "--pprime", "4", "--m", "0", "--ell", "0")[0] == 2
    assert run("string", "--p", "1", "--pprime", "3", "--m", "1", "--ell", "0")[0] == 2


def test_verify_command(tmp_path):
    code, text = run("verify", "--lhs", "1+q", "--rhs", "1+2*q")
    assert code == 1 and "q^(1)" in text
    report = tmp_path / "r.json"
    code, _ = run("verify", "--name", "thm-2of5-m2", "--order", "120", "--report", str(report))
    assert code == 0
    assert [r["status"] for r in json.loads(report.read_text())] == ["pass"] * 6
    assert run("verify", "--name", "no-such-identity")[0] == 2
    assert run("verify", "--lhs", "1+q")[0] == 2


def test_suite_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("suite", "--filter", "thm-1of*", "--order", "60", "--report", str(a))[0] == 0
    assert run("suite", "--filter", "thm-1of*", "--order", "60", "--jobs", "4", "--report", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert run("suite", "--filter", "eta-KP-40diff", "--order", "20")[0] == 1


def test_config_file(tmp_path):
    cfg = tmp_path / "qmock.cfg"
    cfg.write_text("# defaults\norder = 2\nformat = json\n")
    code, text = run("expand", "f3", "--config", str(cfg))
    assert code == 0 and json.loads(text)["trunc"] == 2
    # flags win over the file
    code, text = run("expand", "f3", "--config", str(cfg), "--order", "1")
    assert json.loads(text)["trunc"] == 1
    cfg.write_text("colour = red\n")
    assert run("expand", "f3", "--config", str(cfg))[0] == 2
    cfg.write_text("order = 0\n")
    assert run("expand", "f3", "--config", str(cfg))[0] == 2


def test_usage_errors():
    assert run()[0] == 2
    assert run("expand", "f3", "--ring", "octonion")[0] == 2
    assert run("suite", "--jobs", "0")[0] == 2
