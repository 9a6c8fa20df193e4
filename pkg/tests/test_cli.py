import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from jsonschema import Draft202012Validator
from referencing import Registry, Resource

from valuation_lab import parse_poly
from valuation_lab.cli import main

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "docs" / "schemas"
CORPUS = json.loads((Path(__file__).parent / "data" / "cli_corpus.json").read_text())


def _registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = _registry()


def validator(name):
    return Draft202012Validator(json.loads((SCHEMAS / f"{name}.json").read_text()), registry=REGISTRY)


def run(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_schemas_are_valid():
    for path in SCHEMAS.glob("*.json"):
        Draft202012Validator.check_schema(json.loads(path.read_text()))


@pytest.mark.parametrize("case", CORPUS, ids=lambda c: c["name"])
def test_corpus_exit_codes_and_schemas(case, capsys):
    code, text = run(case["argv"])
    assert code == case["exit"]
    lines = text.splitlines()
    if not case.get("lines"):
        assert len(lines) == 1
    v = validator(case["schema"])
    for line in lines:
        v.validate(json.loads(line))


def test_worked_cli_examples():
    doc = json.loads(run(["extensions", "--p", "3", "--poly", "x^2-2*x-6"])[1])
    assert doc["certified"] and [(e["e"], e["f"]) for e in doc["extensions"]] == [(1, 1), (1, 1)]
    assert json.loads(run(["div", "--gens", "1,0;0,1", "--x", "0,1", "--k", "2"])[1]) == {"divides": False}
    doc = json.loads(run(["simulate", "padic-adversary", "--q", "2", "--m", "0", "--gamma", "0,1/2"])[1])
    assert doc["contradiction"] and doc["witness"] == {"a": "1", "b": "0"}


def test_padic_close_streams_one_stage_per_line():
    _, text = run(["padic-close", "--schedule", "t:2,t:3"])
    stages = [json.loads(line) for line in text.splitlines()]
    assert [s["index"] for s in stages] == [0, 1, 2]
    assert stages[-1]["group"]["basis"] == [{"a": "0", "b": "1/6"}, {"a": "1", "b": "0"}]


def test_domain_error_code_and_stderr(capsys):
    code, text = run(["factor", "--poly", "x^^2"])
    assert code == 1
    assert json.loads(text)["error"]["code"] == "PARSE_ERROR"
    assert "offset 2" in capsys.readouterr().err


def test_usage_errors_exit_2(capsys):
    for argv in (["frobnicate"], ["newton", "--poly", "x"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv, io.StringIO())
        assert exc.value.code == 2


def test_console_script_and_module_entry():
    env = dict(os.environ)
    r = subprocess.run(
        [sys.executable, "-m", "valuation_lab", "newton", "--poly", "x^3 - 2", "--p", "2"],
        capture_output=True, text=True, env=env,
    )
    assert r.returncode == 0
    assert json.loads(r.stdout)["root_values"] == [{"count": 3, "value": "1/3"}]
    r = subprocess.run([sys.executable, "-m", "valuation_lab", "bogus"], capture_output=True, text=True)
    assert r.returncode == 2 and r.stdout == ""


def test_seed_flag_and_environment(monkeypatch):
    argv = ["factor", "--poly", "x^6 - 1"]
    base = run(argv)[1]
    assert run(["--seed", "17"] + argv)[1] == base
    monkeypatch.setenv("VALUATION_LAB_SEED", "99")
    assert run(argv)[1] == base


def test_refinement_limit_flag():
    code, text = run(["--refinement-limit", "0", "extensions", "--p", "2", "--poly", "x^2 + 7"])
    assert code in (0, 1)
    if code == 1:
        assert json.loads(text)["error"]["code"] in ("REFINEMENT_LIMIT", "DUPLICATE_VALUATIONS")


@pytest.mark.parametrize(
    "src, coeffs",
    [("x^2 - 2*x - 6", [-6, -2, 1]), ("(x-1)^2 - 7", [-6, -2, 1]), ("x/2 + 1/3", ["1/3", "1/2"]), ("-(x - 1)^3", [1, -3, 3, -1])],
)
def test_parse_examples(src, coeffs):
    from fractions import Fraction

    assert list(parse_poly(src).coeffs) == [Fraction(c) for c in coeffs]


def test_parse_errors_carry_offsets():
    from valuation_lab import LabError

    for src, offset in [("x^^2", 2), ("x + ", 4), ("(x", 2), ("y", 0), ("x/(x+1)", 1)]:
        with pytest.raises(LabError) as err:
            parse_poly(src)
        assert err.value.code == "PARSE_ERROR"
        assert err.value.offset == offset, src


def test_round_trip_on_corpus():
    for case in CORPUS:
        argv = case["argv"]
        if "--poly" in argv and case["exit"] == 0 and "--tower" not in argv:
            f = parse_poly(argv[argv.index("--poly") + 1])
            assert parse_poly(f.to_str()) == f


from hypothesis import given
from hypothesis import strategies as st

from valuation_lab.exact import Poly


@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=9), max_size=7))
def test_printer_parser_round_trip(cs):
    f = Poly(cs)
    assert parse_poly(f.to_str()) == f
