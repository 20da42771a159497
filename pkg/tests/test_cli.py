import json
import subprocess
import sys
from importlib import resources

import pytest

from qdesing import cli
from qdesing.corpus import shipped_jobs


def run(capsys, tmp_path, argv, doc=None):
    if doc is not None:
        path = tmp_path / "input.json"
        path.write_text(json.dumps(doc))
        argv = argv + ["--input", str(path)]
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


CUSP = {"field": "QQ", "vars": ["x", "y"], "gens": ["y^2 - x^3"], "d": 2}


def test_diagram(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["diagram", "--kmax", "4"],
                    {"vars": ["x", "y"], "gens": ["x^2", "x*y"]})
    assert code == 0
    assert out["vertices"] == [[1, 1], [2, 0]] and out["H"] == [1, 3, 4, 5, 6]


def test_hs_over_parameters(capsys, tmp_path):
    doc = {"field": {"params": ["t"]}, "vars": ["v", "y"], "gens": ["y^2 - t*v^3"], "point": [0, 0]}
    code, out = run(capsys, tmp_path, ["hs", "--kmax", "3"], doc)
    assert code == 0 and out["values"] == [1, 3, 5, 7]


def test_resolve_cusp(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["resolve"], CUSP)
    assert code == 0 and out["blowups"] == 1 and out["terminal"] is True


def test_blowup_and_coeff(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["blowup"], dict(CUSP, center=["x", "y"]))
    assert code == 0 and out["charts"] == 2
    code, out = run(capsys, tmp_path, ["coeff"], dict(CUSP, normal="y"))
    assert code == 0 and out["gens"] == ["x^3"]


def test_descend(capsys, tmp_path):
    doc = {"field": {"params": ["s"], "prime": ["s^2 - 2"]}, "vars": ["x", "y"], "gens": ["y - s*x"]}
    code, out = run(capsys, tmp_path, ["descend"], doc)
    assert code == 0 and out["prime"] == ["x1^2 - 2"] and out["roundTrip"] is True


def test_checks(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["check", "generic-fibre"],
                    {"symbols": ["x1"], "vars": ["v", "y"], "gens": ["y^2 - x1*v^3"]})
    assert code == 0 and out["verdict"] == "pass"
    code, out = run(capsys, tmp_path, ["check", "product-line"], dict(CUSP, k=2))
    assert code == 0
    code, out = run(capsys, tmp_path, ["check", "order-invariance"],
                    {"field": {"params": ["t"]}, "vars": ["v", "y"], "gens": ["y^2 - t*v^3"]})
    assert code == 0


def test_exit_codes(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["diagram"], {"vars": ["x"], "gens": ["x^(-1)"]})
    assert code == cli.EXIT_INPUT and out["error"] == "input"
    code, out = run(capsys, tmp_path, ["resolve", "--step-cap", "1"], dict(CUSP, gens=["x^2 + y^5"]))
    assert code == cli.EXIT_CAPACITY
    code, out = run(capsys, tmp_path, ["check", "equivalence"],
                    {"first": {"vars": ["x", "y"], "gens": ["x"], "d": 1},
                     "second": {"vars": ["x", "y"], "gens": ["y"], "d": 1}})
    assert code == cli.EXIT_PROPERTY and out["verdict"] == "not-equivalent"
    code, out = run(capsys, tmp_path, ["resolve"], dict(CUSP, d=1))
    assert code == cli.EXIT_INPUT


def test_output_is_deterministic(capsys, tmp_path):
    first = run(capsys, tmp_path, ["resolve", "--json"], dict(CUSP, gens=["x^2 + y^5"]))
    second = run(capsys, tmp_path, ["resolve", "--json"], dict(CUSP, gens=["x^2 + y^5"]))
    assert first == second


def test_shipped_corpus_file_matches_job_list():
    text = resources.files("qdesing").joinpath("data/shipped_corpus.json").read_text()
    assert json.loads(text) == json.loads(json.dumps({"jobs": shipped_jobs()}))


def test_corpus_runner(capsys, tmp_path):
    code, out = run(capsys, tmp_path, ["corpus"])
    assert code == 0 and out["failed"] == 0 and out["total"] == len(shipped_jobs())
    code, out = run(capsys, tmp_path, ["corpus"], {"jobs": []})
    assert code == 0 and out["total"] == 0
    bad = {"jobs": [{"command": "resolve", "input": CUSP, "expect": {"blowups": 7}}]}
    code, out = run(capsys, tmp_path, ["corpus"], bad)
    assert code == cli.EXIT_PROPERTY and out["jobs"][0]["status"] == "mismatch"


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "qdesing.cli", "resolve", "--json"], input=json.dumps(CUSP),
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["blowups"] == 1


def test_serialization_is_exact():
    from fractions import Fraction

    from qdesing.kernel import INF
    from qdesing.serialize import dumps, order_to_json, rational_to_json

    assert rational_to_json(Fraction(3, 4)) == "3/4" and rational_to_json(5) == "5"
    assert order_to_json(INF) == "inf"
    assert dumps({"b": Fraction(1, 2), "a": [INF]}, pretty=False) == '{"a":["inf"],"b":"1/2"}\n'
    with pytest.raises(TypeError):
        dumps({"x": 0.5})
