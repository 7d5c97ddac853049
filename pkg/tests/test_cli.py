import json
import random
import subprocess
import sys

import pytest

from mutations import mutate
from surfadele.cli import run


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


@pytest.fixture(scope="module")
def cert_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "cert.json"
    assert run(["forge", "--field", "f2", "-n", "3", "-o", str(path)]) == 0
    return path


def test_forge_and_verify(capsys, cert_path):
    doc = json.loads(cert_path.read_text())
    assert doc["terms"] == ["u", "u^4*v", "u^11*v^2 + u^10*v^3"]
    code, out = call(capsys, "verify", cert_path)
    assert code == 0 and out["passed"] and out["failures"] == []


def test_forge_to_stdout(capsys):
    code, out = call(capsys, "forge", "--field", "f3", "-n", "2")
    assert code == 0 and out["field"] == "f3" and out["checks"]["passed"]


def test_verify_not_poly(capsys, cert_path):
    code, out = call(capsys, "verify", cert_path, "--not-poly", 1)
    assert code == 0 and out["not_polynomial"]["holds"]
    assert out["not_polynomial"]["evidence"][0]["modulus"] == "u^6"
    code, _ = call(capsys, "verify", cert_path, "--not-poly", 5)
    assert code == 4


def test_tampered(capsys, cert_path, tmp_path):
    doc = json.loads(cert_path.read_text())
    doc["terms"][1] = "u^6*v"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out = call(capsys, "verify", bad)
    assert code == 2
    assert {"check": "nonvanishing", "n": 2, "pass": False} in out["failures"]


def test_mutations_exit_2(capsys, cert_path, tmp_path):
    doc = json.loads(cert_path.read_text())
    rng = random.Random(11)
    for k in range(25):
        mutated, label = mutate(doc, rng)
        path = tmp_path / f"m{k}.json"
        path.write_text(json.dumps(mutated))
        code, _ = call(capsys, "verify", path)
        assert code == 2, label


def test_schema_errors(capsys, tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    assert call(capsys, "verify", path)[0] == 3
    path.write_text(json.dumps({"field": "f2"}))
    assert call(capsys, "verify", path)[0] == 3


def test_usage_errors(capsys, tmp_path):
    assert call(capsys, "frobnicate")[0] == 1
    assert call(capsys, "primes", "--field", "f2")[0] == 1
    assert call(capsys, "primes", "--field", "f2", "--count", 2, "--bogus")[0] == 1
    assert call(capsys, "verify", tmp_path / "missing.json")[0] == 1
    assert call(capsys, "primes", "--field", "q", "--count", 2)[0] == 1
    assert call(capsys, "primes", "--field", "f6", "--count", 2)[0] == 1


def test_primes_and_tower(capsys, tmp_path):
    code, out = call(capsys, "primes", "--field", "f2", "--count", 3)
    assert code == 0 and [p["generators"] for p in out] == [["u"], ["v"], ["u + v"]]
    code, out = call(capsys, "tower", "--field", "f2", "-n", 3)
    assert out["witnesses"] == ["u", "u^2*v", "u^5*v^2 + u^4*v^3"]
    assert {"n": 3, "m": 1, "e": 4} in out["schedule"]
    user = tmp_path / "p.json"
    user.write_text(json.dumps([{"generators": ["u"]}, {"generators": ["v"]}]))
    code, out = call(capsys, "tower", "--field", "q", "-n", 2, "--primes", user)
    assert code == 0 and out["ideals"][1] == ["u^2*v"]
    code, out = call(capsys, "forge", "--field", "q", "-n", 2, "--primes", user)
    assert code == 0 and out["terms"] == ["u", "u^4*v"] and out["ordering"] == "user-supplied"
    code, out = call(capsys, "primes", "--field", "q", "--count", 4, "--rational-family")
    assert code == 0 and len(out) == 4


def test_projlim_verbs(capsys, cert_path, tmp_path):
    code, out = call(capsys, "residues", "--cert", cert_path)
    assert code == 0 and out["residues"][:2] == ["0", "u"]
    res = tmp_path / "r.json"
    res.write_text(json.dumps(out))
    code, series = call(capsys, "series-from-residues", "--residues", res)
    assert code == 0 and series["terms"][:2] == ["0", "u"]
    lifts = tmp_path / "l.json"
    lifts.write_text(json.dumps(["u", "u^4*v + u", "u^11*v^2 + u^10*v^3 + u^4*v + u"]))
    code, series = call(capsys, "series-from-residues", "--residues", res, "--lifts", lifts)
    assert code == 0 and series["terms"] == ["u", "u^4*v", "u^11*v^2 + u^10*v^3"]
    lifts.write_text(json.dumps(["v", "u", "u"]))
    assert call(capsys, "series-from-residues", "--residues", res, "--lifts", lifts)[0] == 2
    out["residues"][1] = "v"
    res.write_text(json.dumps(out))
    code, body = call(capsys, "series-from-residues", "--residues", res)
    assert code == 2 and body == {"compatible": False, "first_failure": 1}
    code, out = call(capsys, "roundtrip", "--cert", cert_path)
    assert code == 0 and out["holds"] and out["terms_recovered"]


def test_completion_verbs(capsys, cert_path):
    code, out = call(capsys, "restrict", "--cert", cert_path, "--curve", "v", "--precision", 1)
    assert code == 0 and out["numerator"] == "u" and out["polynomial"]
    assert call(capsys, "restrict", "--cert", cert_path, "--curve", "u + 1")[0] == 4
    code, out = call(capsys, "value", "--cert", cert_path, "--point", "(0,0)", "--precision", 3)
    assert code == 0 and out["value"] == "u" and out["stable_from"] == 2
    code, out = call(capsys, "value", "--cert", cert_path, "--point", "(0, 1)", "--precision", 2)
    assert out["value"] == "u"
    assert call(capsys, "value", "--cert", cert_path, "--point", "(0,0)", "--precision", 9)[0] == 4
    assert call(capsys, "value", "--cert", cert_path, "--point", "zero", "--precision", 1)[0] == 1


def test_lines_verb(capsys, tmp_path):
    series = tmp_path / "s.json"
    series.write_text(json.dumps({"field": "f2", "precision": 6, "terms": "u^5 + u^4*v + u^4 + u^3*v + u^3 + u^2*v + u^2 + u*v"}))
    lams = tmp_path / "l.json"
    lams.write_text(json.dumps([{"lambda": 0, "bound": 2}, {"lambda": 1, "bound": 2}]))
    code, out = call(capsys, "lines", "--input", series, "--lambdas", lams)
    assert code == 0 and out["verdict"] == "inconclusive"
    assert all(set(r["coefficients"]) == {"0"} for r in out["restrictions"])


def test_gap_check(capsys):
    code, out = call(capsys, "gap-check", "--field", "f2", "-l", 3)
    assert code == 0 and out["verified"] and out["checked"] == 1023
    code, out = call(capsys, "gap-check", "--field", "f2", "-l", 7)
    assert code == 4 and out["a"] == 8 and not out["verified"]


def test_console_entry_stdout_is_json(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "surfadele", "primes", "--field", "f3", "--count", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)[1]["generators"] == ["v"]
    proc = subprocess.run([sys.executable, "-m", "surfadele", "nope"], capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == "" and "usage" in proc.stderr
