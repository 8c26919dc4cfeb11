import json
import random
import subprocess
import sys

import pytest

from bilateral import fixtures
from bilateral.cli import main
from bilateral.dsl import parse_spec
from bilateral.library import STANDARD, dump_builtins
from bilateral.syntax import specs_equal


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_standard(capsys):
    code, out, _ = run(capsys, "check", "--builtin", *STANDARD)
    assert code == 0
    assert out.count("Harmonious") == len(STANDARD)


@pytest.mark.parametrize("name", ["tonk", "conk", "honk"])
def test_check_deviant(capsys, name):
    code, out, _ = run(capsys, "check", "--builtin", name)
    assert code == 1
    assert "FAIL" in out


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", "--builtin", "conk", "--json")
    doc = json.loads(out)
    assert code == doc["status"] == 1
    (rep,) = doc["reports"]
    assert rep["connective"] == "conk" and rep["verdict"] == "ConversionViolation"
    assert all({"family", "expected", "found"} <= set(c) for c in rep["checks"])


def test_global_flags_before_command(capsys):
    code, out, _ = run(capsys, "--json", "--quiet", "check", "--builtin", "and")
    assert code == 0 and json.loads(out)["reports"][0]["verdict"] == "Harmonious"


def test_quiet(capsys):
    _, out, _ = run(capsys, "check", "--builtin", "conk", "--quiet")
    assert out.strip() == "conk: ConversionViolation"


def test_check_file(tmp_path, capsys):
    f = tmp_path / "lib.bil"
    f.write_text(dump_builtins(["and", "tonk"]), encoding="utf-8")
    code, out, _ = run(capsys, "check", str(f), "--quiet")
    assert code == 1
    assert out.splitlines() == ["and: Harmonious", "tonk: IllFormed"]


def test_check_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.bil"
    f.write_text('(connective "a" (arity 1) (args A)\n  (rule "r"', encoding="utf-8")
    code, _, err = run(capsys, "check", str(f))
    assert code == 2 and "bad.bil:" in err


@pytest.mark.parametrize("argv", [
    ["check", "/nonexistent/file"],
    ["check"],
    ["check", "--builtin", "nope"],
    ["complete", "--builtin", "and"],
    ["complete", "--builtin", "and", "--from", "sideways"],
    ["verify"],
    ["verify", "--bundled", "nope"],
    ["library", "--name", "nope"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_complete_imp(capsys, tmp_path):
    out_file = tmp_path / "imp.bil"
    code, out, _ = run(capsys, "complete", "--builtin", "imp", "--from", "rejective-elim",
                       "--out", str(out_file))
    assert code == 0 and out == ""
    (done,) = parse_spec(out_file.read_text(encoding="utf-8"))
    (orig,) = parse_spec(dump_builtins(["imp"]))
    assert specs_equal(done, orig)


def test_complete_json(capsys):
    code, out, _ = run(capsys, "complete", "--builtin", "or", "--from", "assertive-intro", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["type"] == 2
    assert doc["families"]["rejective-intro"] == ["(- A), (- B) |- (- (or A B))"]


def test_complete_from_file_needs_connective(tmp_path, capsys):
    f = tmp_path / "two.bil"
    f.write_text(dump_builtins(["and", "or"]), encoding="utf-8")
    assert run(capsys, "complete", str(f), "--from", "assertive-intro")[0] == 2
    code, out, _ = run(capsys, "complete", str(f), "--connective", "or",
                       "--from", "assertive-intro")
    assert code == 0 and '"-orI"' in out


def test_complete_tonk_fails(capsys):
    code, _, err = run(capsys, "complete", "--builtin", "tonk", "--from", "assertive-intro")
    assert code == 1 and "IllFormed" in err


def test_complete_type_override_wrong(capsys):
    code, _, _ = run(capsys, "complete", "--builtin", "and", "--from", "assertive-intro",
                     "--type", "2")
    assert code == 1


def test_verify_bundled(capsys):
    code, out, _ = run(capsys, "verify", "--bundled", *fixtures.NAMES)
    assert code == 0
    assert out.count("Valid") == len(fixtures.NAMES)


def test_verify_invalid_json(tmp_path, capsys):
    f = tmp_path / "bad.deriv"
    f.write_text('(rule "and" "+andI" (:subst (A p) (B q)) (assume (+ p)))', encoding="utf-8")
    code, out, _ = run(capsys, "verify", str(f), "--json")
    doc = json.loads(out)
    assert code == 1
    (res,) = doc["results"]
    assert res["status"] == "Invalid" and res["kind"] == "PremiseMismatch"
    assert res["path"] == "root"


def test_verify_restricted_library(capsys):
    assert run(capsys, "verify", "--bundled", "conk-collapse", "--lib", "and")[0] == 1


def test_library(capsys):
    code, out, _ = run(capsys, "library")
    assert code == 0
    assert len(parse_spec(out)) == 9
    code, out, _ = run(capsys, "library", "--name", "and", "--json")
    (c,) = json.loads(out)["connectives"]
    assert c["name"] == "and" and c["families"]["assertive-intro"][0]["name"] == "+andI"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "bilateral", "check", "--builtin", "honk", "--quiet"],
                       capture_output=True, text=True)
    assert r.returncode == 1
    assert r.stdout.strip() == "honk: ConversionViolation"


def _mutate(rng, text):
    chars = list(text)
    for _ in range(rng.randint(1, 4)):
        i = rng.randrange(len(chars))
        op = rng.random()
        if op < 0.4:
            del chars[i]
        elif op < 0.8:
            chars.insert(i, rng.choice("()\"; +-ABpq01:_\n"))
        else:
            chars[i] = rng.choice("() ")
    return "".join(chars)


def test_exit_status_under_fault_injection(tmp_path, capsys):
    rng = random.Random(7)
    spec_text = dump_builtins(["and", "imp"])
    seen = set()
    for i in range(150):
        f = tmp_path / f"m{i}.bil"
        f.write_text(_mutate(rng, spec_text), encoding="utf-8")
        code, _, err = run(capsys, "check", str(f))
        assert code in (0, 1, 2)
        assert "internal error" not in err
        seen.add(code)
        d = tmp_path / f"m{i}.deriv"
        d.write_text(_mutate(rng, fixtures.text(rng.choice(fixtures.NAMES))), encoding="utf-8")
        code, _, err = run(capsys, "verify", str(d))
        assert code in (0, 1, 2)
        assert "internal error" not in err
    assert 2 in seen
