"""Command-line surface: parsing, exit codes and JSON output."""

import json

import jsonschema
import pytest

from opal.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse(capsys):
    code, out, _ = run(capsys, "parse", "P(x)*P(y) - P(x*P(y))")
    assert code == 0
    assert "P(x)" in out
    code, _, err = run(capsys, "parse", "P(x")
    assert code == 1
    assert "syntax error" in err


def test_order_compare(capsys):
    code, out, _ = run(capsys, "order", "compare", "D(x)", "P(x)")
    assert code == 0
    assert out.strip() == "GT"
    code, out, _ = run(capsys, "order", "compare", "--order", "upd",
                       "1", "x")
    assert out.strip() == "LT"


def test_nf(capsys):
    code, out, _ = run(capsys, "nf", "--system", "DRB", "D(P(x))")
    assert code == 0
    assert out.strip() == "x"
    code, out, _ = run(capsys, "nf", "--system", "DRB",
                       "P(x)*P(y)")
    assert code == 0
    assert "P(" in out
    # budget exhaustion maps to exit code 3
    code, _, err = run(capsys, "nf", "--system", "DRB", "--step-budget", "1",
                       "P(x)*P(y)*P(x)*P(y)")
    assert code == 3
    assert "budget" in err


def test_nf_unknown_system(capsys):
    code, _, err = run(capsys, "nf", "--system", "nope", "x")
    assert code == 1
    assert "error" in err


def test_gs_check_cli(capsys):
    code, out, _ = run(capsys, "gs-check", "--system", "rb", "--bound", "1")
    assert code == 0
    assert "pass" in out
    code, out, _ = run(capsys, "gs-check", "--system", "rb", "--bound", "1",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["compositions"] > 0


def test_complete_cli(capsys, tmp_path):
    cat = tmp_path / "toy.rules"
    cat.write_text("D(P($1)) - $1 | D(P($1))\n", encoding="utf-8")
    code, out, _ = run(capsys, "complete", "--system", str(cat),
                       "--bound", "1", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["completed"] is True


def test_basis_cli(capsys):
    code, out, _ = run(capsys, "basis", "--system", "DRB", "--bound", "2",
                       "--counts-only", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["counts"]["1"] == 2


def test_algebra_cli(capsys, tmp_path):
    good = tmp_path / "comm.pres"
    good.write_text("generators: x < y; unital: false;\ny*x - x*y\n",
                    encoding="utf-8")
    code, out, _ = run(capsys, "algebra", "check", "--presentation",
                       str(good))
    assert code == 0
    assert "pass" in out
    bad = tmp_path / "bad.pres"
    bad.write_text("generators: x < y; unital: false;\nx*y - x\ny*x - y\n",
                   encoding="utf-8")
    code, out, _ = run(capsys, "algebra", "check", "--presentation",
                       str(bad))
    assert code == 2
    assert "FAIL" in out
    code, out, _ = run(capsys, "algebra", "check", "--presentation",
                       str(good), "--system", "DRB", "--bound", "1")
    assert code == 0


def test_no_command(capsys):
    assert main([]) == 1


def test_report_schema(capsys):
    import importlib.resources as res

    from opal import verify

    schema = json.loads(
        res.files("opal").joinpath("schemas/report.schema.json").read_text())
    report = verify.assemble_report(
        seed=0, order_bound=1, gs_bound=1, shape_bound=1, span_bound=1,
        irr_bound=2, confluence_single=2, confluence_pair=1)
    jsonschema.validate(json.loads(json.dumps(report, default=str)), schema)
