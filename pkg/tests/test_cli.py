"""Tests for the command line interface."""
import io
import json

import pytest

from skewpbw.cli import build_parser, collect_options, main
from skewpbw.const import (
    DEFAULT_PROBE_BOUND,
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_PASS,
    EXIT_USAGE,
)
from skewpbw.dsl import parse
from skewpbw.report import REPORT_SCHEMA


def _json(capsys) -> dict:
    data = json.loads(capsys.readouterr().out)
    return REPORT_SCHEMA(data)


def test_sas_check_passes(fixture_path, capsys):
    code = main(["--json", "--file", str(fixture_path("dispin")), "sas-check", "--probe-bound", "4"])
    assert code == EXIT_PASS
    data = _json(capsys)
    assert data["values"]["verdict"] == "SAS_Verified"
    assert data["values"]["probe_bound"] == 4
    assert data["status"] == "pass"


def test_sas_check_not_sas(fixture_path, capsys):
    code = main(["--json", "-f", str(fixture_path("sp3_type8")), "sas-check", "--probe-bound", "3"])
    assert code == EXIT_FAIL
    data = _json(capsys)
    assert data["values"]["verdict"] == "NotSAS"
    assert "epsilon" in data["values"]["witness"]


def test_sas_check_trivial_without_complex(capsys):
    assert main(["--json", "--catalog", "weyl", "sas-check"]) == EXIT_PASS
    assert _json(capsys)["values"]["verdict"] == "SAS_Trivial"


def test_sas_check_without_resolution_is_inconclusive(capsys):
    assert main(["--catalog", "quantum_affine", "sas-check"]) == EXIT_INCONCLUSIVE
    assert "Inconclusive" in capsys.readouterr().out


def test_unknown_complex_is_usage_error(capsys):
    assert main(["--catalog", "dispin", "sas-check", "--complex", "koszul"]) == EXIT_USAGE
    assert "no complex named 'koszul'" in capsys.readouterr().err


def test_idem_check(fixture_path, capsys):
    assert main(["--file", str(fixture_path("ex34")), "idem-check"]) == EXIT_PASS
    assert "F*F=F" in capsys.readouterr().out
    assert main(["--file", str(fixture_path("not_idempotent")), "idem-check"]) == EXIT_FAIL


def test_qs_diagonalize_rejects_non_idempotent(fixture_path, capsys):
    assert main(["--json", "--file", str(fixture_path("not_idempotent")), "qs-diagonalize"]) == EXIT_FAIL
    check = _json(capsys)["checks"][0]
    assert check["name"] == "F*F=F"
    assert check["evidence"] == "matrix is not idempotent"


def test_resolution_verify(fixture_path):
    assert main(["--file", str(fixture_path("dispin")), "resolution-verify"]) == EXIT_PASS
    assert main(["--file", str(fixture_path("dispin_broken")), "resolution-verify"]) == EXIT_FAIL


def test_malformed_file(fixture_path, capsys):
    assert main(["--file", str(fixture_path("malformed")), "validate"]) == EXIT_USAGE
    assert "line 3, column 15" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["--catalog", "nope", "validate"],
        ["--catalog", "commutative", "gk", "--M", "3"],
        ["--catalog", "dispin", "--file", "dispin.spbw", "validate"],
        ["validate"],
        ["--catalog", "dispin"],
        ["--catalog", "dispin", "frobnicate"],
        ["--catalog", "dispin", "--jobs", "0", "sas-check"],
        ["--catalog", "dispin", "normalize", "x1 +"],
        ["--file", "does-not-exist.spbw", "validate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE
    assert "skewpbw: " in capsys.readouterr().err


def test_catalog_list(capsys):
    assert main(["--json", "catalog", "list"]) == EXIT_PASS
    presets = _json(capsys)["values"]["presets"]
    assert "dispin" in presets
    assert "ex34_ore" in presets


def test_catalog_show_parses(capsys):
    assert main(["catalog", "show", "usl2"]) == EXIT_PASS
    document = parse(capsys.readouterr().out)
    assert set(document.rings) == {"usl2"}
    assert "resolution" in document.complexes


def test_normalize(capsys):
    assert main(["--catalog", "qweyl", "normalize", "y*x"]) == EXIT_PASS
    assert "normal_form = q*x*y + 1" in capsys.readouterr().out


def test_mul(capsys):
    assert main(["--json", "--catalog", "weyl", "mul", "y", "x^2"]) == EXIT_PASS
    assert _json(capsys)["values"]["product"] == "x^2*y + 2*x"


def test_hilbert_json(capsys):
    assert main(["--json", "--catalog", "commutative", "hilbert", "--N", "3"]) == EXIT_PASS
    assert _json(capsys)["values"]["series"] == [1, 3, 6, 10]


def test_gk(capsys):
    assert main(["--json", "--catalog", "usl2", "gk", "--M", "40"]) == EXIT_PASS
    values = _json(capsys)["values"]
    assert values["M"] == 40
    assert abs(values["estimate"] - 3) < 0.3


def test_member(capsys):
    argv = ["--json", "--catalog", "dispin", "member", "x2", "--ideal", "x1", "x3"]
    assert main(argv) == EXIT_PASS
    assert len(_json(capsys)["values"]["certificate"]) == 2
    argv = ["--catalog", "dispin", "member", "1", "--ideal", "x1", "x2", "x3", "--side", "right"]
    assert main(argv) == EXIT_FAIL


def test_gb(capsys):
    argv = ["--json", "--catalog", "commutative", "gb", "--ideal", "x1^2", "x1*x2 - 1"]
    assert main(argv) == EXIT_PASS
    assert _json(capsys)["values"]["basis"] == ["1"]


def test_center(capsys):
    assert main(["--json", "--catalog", "qweyl", "center", "--degree", "2"]) == EXIT_PASS
    values = _json(capsys)["values"]
    assert values["basis"] == ["1"]
    assert "hint" in values


def test_validate(fixture_path, capsys):
    assert main(["--json", "--file", str(fixture_path("qweyl")), "validate", "--samples", "5"]) == EXIT_PASS
    values = _json(capsys)["values"]
    assert values["quasi_commutative"] is False
    assert values["bijective"] is True
    assert values["augmentation"] == "collapses"


def test_print_round_trip(fixture_path, fixture_text, capsys):
    assert main(["--file", str(fixture_path("dispin")), "print"]) == EXIT_PASS
    assert parse(capsys.readouterr().out) == parse(fixture_text("dispin"))


def test_stdin_document_with_options(fixture_text, monkeypatch, capsys):
    text = "option probe_bound = 4;\n" + fixture_text("usl2")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["--json", "--file", "-", "sas-check"]) == EXIT_PASS
    assert _json(capsys)["values"]["probe_bound"] == 4

    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["--json", "--file", "-", "sas-check", "--probe-bound", "3"]) == EXIT_PASS
    assert _json(capsys)["values"]["probe_bound"] == 3


def test_json_option_line(fixture_text, monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("option json = true;\n" + fixture_text("usl2")))
    assert main(["--file", "-", "hilbert", "--N", "2"]) == EXIT_PASS
    assert _json(capsys)["values"]["series"] == [1, 3, 6]


def test_bad_option_line(fixture_text, monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO("option jobs = 0;\n" + fixture_text("usl2")))
    assert main(["--file", "-", "hilbert"]) == EXIT_USAGE


def test_several_rings_need_a_choice(fixture_text, monkeypatch, capsys):
    text = fixture_text("weyl") + fixture_text("qweyl")
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["--file", "-", "hilbert"]) == EXIT_USAGE
    assert "choose a ring with --ring" in capsys.readouterr().err
    monkeypatch.setattr("sys.stdin", io.StringIO(text))
    assert main(["--json", "--file", "-", "--ring", "qweyl", "hilbert", "--N", "2"]) == EXIT_PASS
    assert _json(capsys)["values"]["series"] == [1, 2, 3]


def test_option_defaults():
    args = build_parser().parse_args(["--catalog", "dispin", "sas-check"])
    options = collect_options(args)
    assert options["probe_bound"] == DEFAULT_PROBE_BOUND
    assert options["degree_bound"] is None
    assert options["json"] is False
