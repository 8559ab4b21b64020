import json
import subprocess
import sys

import pytest

from conftest import SESSIONS, session_text
from tangentials.cli import SessionError, format_session, main, parse_session

ALL_SESSIONS = sorted(p.name for p in SESSIONS.glob("*.session"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def path(name):
    return SESSIONS / name


@pytest.mark.parametrize("name", ALL_SESSIONS)
def test_session_roundtrip(name):
    sess = parse_session(session_text(name))
    text = format_session(sess)
    again = parse_session(text)
    assert again == sess
    assert format_session(again) == text


def test_session_errors_have_position():
    with pytest.raises(SessionError) as e:
        parse_session("ring Q[x,y];\npoly f = x + q;\n")
    assert e.value.line == 2 and e.value.col > 0
    with pytest.raises(SessionError):
        parse_session("poly f = x;\n")
    with pytest.raises(SessionError):
        parse_session("ring Q[x,y];\npoly f = x;\npoly f = y;\n")
    with pytest.raises(SessionError):
        parse_session("ring Q[x,y];\npoly f = x;\nquotient (x^2);\n")


def test_session_quotient_and_weights():
    sess = parse_session(session_text("factorial.session"))
    assert sess.ring.is_quotient and sess.ring.factorial
    assert sess.ring.weights == (15, 10, 6)


def test_logder_text(capsys):
    code, out, _ = run(capsys, path("free_divisors.session"), "logder", "nc")
    assert code == 0
    assert "mu = 3" in out


def test_saito_check_and_strict(capsys):
    p = path("free_divisors.session")
    code, out, _ = run(capsys, p, "saito-check", "nc", "eps", "c1", "c2")
    assert code == 0 and "true" in out
    code, out, _ = run(capsys, p, "saito-check", "nc", "eps", "eps", "eps", "--strict")
    assert code == 1 and "false" in out
    code, _, _ = run(capsys, p, "saito-check", "nc", "eps", "eps", "eps")
    assert code == 0


def test_is_free_divisor_verdicts(capsys):
    code, out, _ = run(capsys, path("saito_quartic.session"), "is-free-divisor", "f", "--strict")
    assert code == 0 and "free" in out
    code, out, _ = run(capsys, path("cubic.session"), "is-free-divisor", "f", "--strict")
    assert code == 1 and "not-free" in out


def test_resolution_char3(capsys):
    code, out, _ = run(capsys, path("char3.session"), "resolution-jacobian", "f")
    assert code == 0
    assert "0 -> S^1 -> S^4 -> S^4 -> I -> 0" in out
    assert "0 -> S^2 -> S^3 -> I -> 0" in out


def test_idealizer_into(capsys):
    code, out, _ = run(capsys, path("free_ideals.session"), "idealizer", "a2", "into", "a2")
    assert code == 0
    code, _, err = run(capsys, path("free_ideals.session"), "idealizer", "a2", "onto", "a2")
    assert code == 2 and "usage" in err


def test_verify_decomposition(capsys):
    p = path("embedded.session")
    code, out, _ = run(capsys, p, "verify-decomposition", "a", "q1", "q2", "--strict")
    assert code == 1 and "equal: False" in out
    code, out, _ = run(capsys, p, "verify-decomposition", "b", "r1", "q1", "--strict")
    assert code == 0 and "equal: True" in out


def test_same_module(capsys):
    p = path("free_divisors.session")
    code, out, _ = run(capsys, p, "same-module", "e1,e2,e3", "eps,c1,c2")
    assert code == 0 and "true" in out
    code, out, _ = run(capsys, p, "same-module", "Der", "e1,e2,e3", "--strict")
    assert code == 1


def test_compare_powers_cli(capsys):
    code, out, _ = run(capsys, path("free_ideals.session"), "compare-powers", "p", "3", "--strict")
    assert code == 0
    code, _, err = run(capsys, path("char3.session"), "compare-powers", "grad", "3")
    assert code == 2 and "error" in err


def test_json_is_deterministic(capsys):
    p = path("twisted_cubic.session")
    _, out1, _ = run(capsys, p, "idealizer", "p", "--json")
    _, out2, _ = run(capsys, p, "idealizer", "p", "--json")
    assert out1 == out2
    data = json.loads(out1)
    assert data["command"] == "idealizer"
    assert data["result"]["mu"] == len(data["result"]["generators"])


def test_errors_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, tmp_path / "missing.session", "logder", "f")
    assert code == 2 and err.startswith("error:")
    bad = tmp_path / "bad.session"
    bad.write_text("ring Q[x];\npoly f = x +;\n")
    code, _, err = run(capsys, bad, "logder", "f")
    assert code == 2 and "2:" in err
    code, _, err = run(capsys, path("cubic.session"), "logder", "nope")
    assert code == 2
    code, _, err = run(capsys, path("twisted_cubic.session"), "idealizer", "p", "--max-basis", "1")
    assert code == 2


def test_print_session(capsys):
    code, out, _ = run(capsys, path("cubic.session"), "print-session")
    assert code == 0
    assert parse_session(out) == parse_session(session_text("cubic.session"))


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "tangentials", str(path("cubic.session")),
                        "jacobian", "f"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("J(f) = (")
