import json
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

from sylvester import cli

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def load_schema(name):
    with open(SCHEMA_DIR / name) as fh:
        return json.load(fh)


def validate(doc, schema_name):
    registry = Registry().with_resource(
        "defs.json", Resource.from_contents(load_schema("defs.json"))
    )
    validator = jsonschema.Draft7Validator(
        load_schema(schema_name), registry=registry
    )
    validator.validate(doc)


def run(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out.strip()
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, (json.loads(out) if out else None)


COMB = '{"x":["1/3","2/3"],"l":["1/1","1/1"]}'


def test_comb(capsys):
    code, doc = run_json(capsys, ["comb", "--comb", COMB])
    assert code == 0
    assert doc["value"] == "1/2"
    validate(doc, "comb.json")


def test_comb_from_file(tmp_path, capsys):
    path = tmp_path / "comb.json"
    path.write_text(COMB)
    code, doc = run_json(capsys, ["comb", "--comb", str(path)])
    assert code == 0 and doc["value"] == "1/2"


def test_kpoly_symbolic_and_numeric(capsys):
    code, doc = run_json(capsys, ["kpoly", "--x", "1/3,2/3"])
    assert code == 0
    assert doc["variables"] == ["l1", "l2"]
    validate(doc, "kpoly.json")
    code, doc = run_json(
        capsys, ["kpoly", "--x", "1/3,2/3", "--lengths", "1/1,1/1"]
    )
    assert code == 0 and doc["value"] == "1/2"
    validate(doc, "kpoly.json")


def test_cond(capsys):
    family = json.dumps({
        "N": 2,
        "xbar": ["0/1", "1/3", "2/3", "1/1"],
        "L0": "0/1", "L1": "0/1",
        "lambda": ["0/1", "1/2", "1/2", "0/1"],
        "beta": ["0/1", "0/1", "0/1", "0/1"],
    })
    code, doc = run_json(capsys, ["cond", "--family", family])
    assert code == 0 and doc["value"] == "3/4"
    validate(doc, "cond.json")


def test_cond_precondition_failure(capsys):
    family = json.dumps({
        "N": 2,
        "xbar": ["0/1", "1/3", "2/3", "1/1"],
        "L0": "0/1", "L1": "0/1",
        "lambda": ["0/1", "1/2", "1/2", "0/1"],
        "beta": ["0/1", "1/2", "-1/2", "0/1"],
    })
    code, _ = run_json(capsys, ["cond", "--family", family])
    assert code == cli.EXIT_PRECONDITION


def test_estimate(capsys):
    code, doc = run_json(
        capsys,
        ["estimate", "--body", "triangle", "--n", "4",
         "--samples", "5000", "--seed", "3"],
    )
    assert code == 0
    validate(doc, "estimate.json")
    assert doc["samples"] == 5000
    assert doc["run_config"]["seed"] == 3


def test_estimate_rb(capsys):
    code, doc = run_json(
        capsys,
        ["estimate", "--rb", "--body", "square", "--n", "3", "--samples", "20"],
    )
    assert code == 0
    assert doc["estimate"] == 1.0
    assert doc["hits"] is None
    validate(doc, "estimate.json")


def test_byte_identical_output(capsys):
    argv = ["estimate", "--body", "disk", "--n", "5",
            "--samples", "3000", "--seed", "11", "--workers", "2"]
    _, first = run(capsys, argv)
    _, second = run(capsys, argv)
    assert first == second


def test_transform(capsys):
    code, doc = run_json(capsys, ["transform", "--op", "sym", "--body", "triangle"])
    assert code == 0
    validate(doc, "transform.json")
    assert ["0/1", "-1/2"] in doc["body"]["vertices"]
    code, doc = run_json(capsys, ["transform", "--op", "sha", "--body", "triangle"])
    assert code == 0
    assert all(v[1] != "-1/2" for v in doc["body"]["vertices"])


def test_closed_forms(capsys):
    code, doc = run_json(capsys, ["closed-forms"])
    assert code == 0
    validate(doc, "closed_forms.json")
    assert any(r["exact"] == "11/36" for r in doc["constants"])
    code, out = run(capsys, ["closed-forms", "--output", "csv"])
    assert code == 0
    assert out.startswith("# run_config:")
    assert "11/36" in out


def test_verify_n4(capsys):
    code, doc = run_json(capsys, ["verify", "--case", "n4"])
    assert code == 0
    validate(doc, "verify.json")
    assert doc["summary"] == "pass"


def test_verify_pretty(capsys):
    code, out = run(capsys, ["verify", "--case", "n4", "--output", "pretty"])
    assert code == 0
    assert "[pass] identity:" in out
    assert "summary: pass" in out


def test_usage_errors(capsys):
    assert cli.main(["comb"]) == cli.EXIT_USAGE
    capsys.readouterr()
    assert cli.main(["nonsense"]) == cli.EXIT_USAGE
    capsys.readouterr()
    assert cli.main(["comb", "--comb", "not json"]) == cli.EXIT_USAGE
    capsys.readouterr()


def test_workers_env_default(monkeypatch):
    monkeypatch.setenv("SYLVESTER_WORKERS", "3")
    parser = cli.build_parser()
    args = parser.parse_args(["estimate"])
    assert args.workers == 3
    monkeypatch.setenv("SYLVESTER_WORKERS", "junk")
    args = cli.build_parser().parse_args(["estimate"])
    assert args.workers == 1


def test_theorem1_small(capsys):
    code, doc = run_json(
        capsys, ["theorem1", "--samples", "4000", "--seed", "2"]
    )
    assert code == 0
    validate(doc, "theorem1.json")
    assert len(doc["rows"]) == 4
