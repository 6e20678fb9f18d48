import io
import json
import subprocess
import sys

import pytest

from germsing.cli import main

from conftest import fixture_path


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="g.germ"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_analyze_json_fields():
    code, out, _ = run("analyze", str(fixture_path("c5")))
    assert code == 0
    d = json.loads(out)
    assert d["schema_version"] == 1
    assert d["invariants"]["mu_W"] == 13
    assert d["generic_line"]["certificate"]
    assert d["coordinate_change"] == {"linear_combination": [1, 0, 0]}
    assert all(c["status"] in ("pass", "not_applicable") for c in d["identity_checks"].values())


def test_analyze_with_e_d_and_text():
    code, out, _ = run("analyze", str(fixture_path("crosscap")), "--e-d", "--text")
    assert code == 0
    assert "e_D=1" in out and "LEMMA_C" in out


def test_rationals_are_strings(tmp_path):
    path = write(tmp_path, "germ\nvars x y\nf1 = x\nf2 = y^2\nf3 = 1/2 x*y\n")
    code, out, _ = run("analyze", path)
    assert code == 0
    assert json.loads(out)["germ"]["f3"] == "1/2*x*y"


def test_parse_error_exit_code(tmp_path):
    path = write(tmp_path, "germ\nvars x y\nf1 = x\nf2 = y**2\nf3 = y\n")
    code, _, err = run("analyze", path)
    assert code == 2
    assert "line 4, column 8" in err


def test_unsupported_exit_code(tmp_path):
    path = write(tmp_path, "germ\nvars x y\nf1 = x^2\nf2 = x*y\nf3 = y^3 + x^3\n")
    assert run("analyze", path)[0] == 3


def test_precondition_exit_codes(tmp_path):
    assert run("analyze", str(fixture_path("not_fd")))[0] == 4
    path = write(tmp_path, "germ\nvars x y\nf1 = x\nf2 = y^2\nf3 = 0\n")
    assert run("analyze", path)[0] == 4


def test_wrong_file_kind_is_a_parse_error():
    assert run("unfold", str(fixture_path("c5")))[0] == 2


def test_check_fd():
    code, out, _ = run("check-fd", str(fixture_path("not_fd")), "--text")
    assert code == 0 and "NOT finitely determined" in out and "y^2" in out
    code, out, _ = run("check-fd", str(fixture_path("c5")))
    assert json.loads(out)["mu_D"] == 6


def test_unfold():
    code, out, _ = run("unfold", str(fixture_path("c5_deform")), "--samples", "3", "--seed", "1")
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "NOT_EQUISINGULAR"
    assert d["failing_invariant"] == "mu_D"


def test_corpus_filter():
    code, out, _ = run("corpus", "--filter", "crosscap")
    assert code == 0
    assert "LEMMA_A" in out and "FAIL" not in out
    assert run("corpus", "--filter", "nothing-matches")[0] == 4


@pytest.mark.parametrize("seed", [0, 5])
def test_module_entry_point(seed):
    proc = subprocess.run([sys.executable, "-m", "germsing", "analyze", str(fixture_path("crosscap")),
                           "--seed", str(seed)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["seed"] == seed
