import json
import subprocess
import sys
from pathlib import Path

from jsonschema import Draft7Validator
from referencing import Registry, Resource
from referencing.jsonschema import DRAFT7

import burnside.cli
from burnside.cli import main

SCHEMA_DIR = Path(burnside.cli.__file__).resolve().parent / "schemas"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def validate(payload, schema_name):
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    registry = Registry()
    for path in SCHEMA_DIR.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        res = Resource.from_contents(doc, default_specification=DRAFT7)
        registry = registry.with_resource(uri=path.name, resource=res)
    Draft7Validator(schema, registry=registry).validate(payload)


def test_tom_json(capsys):
    code, out, err = run_cli(capsys, "tom", "C2", "--json")
    assert code == 0 and err == ""
    payload = json.loads(out)
    assert payload["matrix"] == [[2, 0], [1, 1]]
    assert payload["labels"] == ["1#1", "2#1"]
    validate(payload, "tom.schema.json")


def test_group_info_json(capsys):
    code, out, _ = run_cli(capsys, "group", "info", "S3", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["order"] == 6 and payload["abelian"] is False
    assert [c["size"] for c in payload["element_classes"]] == [1, 3, 2]
    validate(payload, "group_info.schema.json")


def test_subgroups_json(capsys):
    code, out, _ = run_cli(capsys, "subgroups", "D8", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["subgroup_count"] == 10
    assert len(payload["classes"]) == 8
    validate(payload, "subgroups.schema.json")


def test_idempotents_json(capsys):
    code, out, _ = run_cli(capsys, "idempotents", "C2", "--ring", "Q", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["idempotents"]["1#1"] == {"1#1": "1/2"}
    assert payload["idempotents"]["2#1"] == {"1#1": "-1/2", "2#1": "1"}
    validate(payload, "idempotents.schema.json")


def test_gamma_invert_json(capsys):
    code, out, _ = run_cli(capsys, "gamma", "S3", "--ring", "Q", "--invert",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["invertible"] is True
    assert payload["product_check"]["coeffs"] == {"6#1": "1"}
    assert payload["marks"]["1#1"] == "6"
    validate(payload, "gamma.schema.json")


def test_gamma_not_invertible_json(capsys):
    code, out, _ = run_cli(capsys, "gamma", "C2", "--ring", "Z", "--invert",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["invertible"] is False
    assert payload["obstruction"]["stage"] == "non_unit_mark"
    validate(payload, "gamma.schema.json")


def test_mackey_check_json(capsys):
    code, out, _ = run_cli(capsys, "mackey-check", "prod(C2,C2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["all_verified"] is True
    validate(payload, "mackey_check.schema.json")


def test_separable_ring_json(capsys):
    code, out, _ = run_cli(capsys, "separable", "ring", "C2", "--ring", "Z",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["separable"] is False
    assert payload["obstruction"]["certificate"]["kind"] == "invariant_factor"
    validate(payload, "separable.schema.json")

    code, out, _ = run_cli(capsys, "separable", "ring", "C2", "--ring", "Z/3",
                           "--json")
    payload = json.loads(out)
    assert payload["separable"] is True
    assert "witness" in payload
    validate(payload, "separable.schema.json")


def test_separable_functor_json(capsys):
    code, out, _ = run_cli(capsys, "separable", "functor", "S3", "--ring", "Q",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["separable"] is True
    assert payload["claim"] == "functor-separable"
    validate(payload, "separable.schema.json")


def test_commutant_json(capsys):
    code, out, _ = run_cli(capsys, "commutant", "C2", "--ring", "Q", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 2
    assert payload["matches_diagonal_span"] is True
    validate(payload, "commutant.schema.json")


def test_derivations_json(capsys):
    code, out, _ = run_cli(capsys, "derivations", "C2", "--ring", "Z/2",
                           "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["zero"] is False
    validate(payload, "derivations.schema.json")

    code, out, _ = run_cli(capsys, "derivations", "S3", "--ring", "Z", "--json")
    payload = json.loads(out)
    assert payload["zero"] is True and payload["basis"] == []
    validate(payload, "derivations.schema.json")


def test_error_codes(capsys):
    code, out, err = run_cli(capsys, "tom", "nope", "--json")
    assert code == 2
    assert err.startswith("E_PARSE:") and out == ""

    code, _, err = run_cli(capsys, "tom", "prod(S5,S3)")
    assert code == 2 and err.startswith("E_ORDER_BOUND:")

    code, _, err = run_cli(capsys, "idempotents", "C2", "--ring", "Z")
    assert code == 2 and err.startswith("E_RING:")

    code, _, err = run_cli(capsys, "separable", "ring", "C2", "--ring", "GF(9)")
    assert code == 2 and err.startswith("E_PARSE:")

    code, _, err = run_cli(capsys, "commutant", "D8", "--ring", "Q")
    assert code == 2 and err.startswith("E_RESOURCE:")


def test_max_order_flag_and_env(capsys, monkeypatch):
    code, _, err = run_cli(capsys, "tom", "S3", "--max-order", "4")
    assert code == 2 and err.startswith("E_ORDER_BOUND:")
    monkeypatch.setenv("BURNSIDE_MAX_ORDER", "4")
    code, _, err = run_cli(capsys, "tom", "S3")
    assert code == 2 and err.startswith("E_ORDER_BOUND:")
    # explicit flag wins over the environment
    code, _, _ = run_cli(capsys, "tom", "S3", "--max-order", "10")
    assert code == 0


def test_global_flags_accepted_before_subcommand(capsys):
    code, out, _ = run_cli(capsys, "--json", "tom", "C2")
    assert code == 0
    assert json.loads(out)["command"] == "tom"


def test_human_output_mentions_values(capsys):
    code, out, _ = run_cli(capsys, "separable", "ring", "C3", "--ring", "Z/5")
    assert code == 0
    assert "separable" in out


def test_byte_identical_json_across_processes():
    cmd = [sys.executable, "-m", "burnside", "subgroups", "S3", "--json"]
    a = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    b = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    cmd = [sys.executable, "-m", "burnside", "commutant", "C3", "--ring", "Q",
           "--json"]
    a = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    b = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    assert a.stdout == b.stdout and a.returncode == 0
    # human-readable output is deterministic too
    cmd = [sys.executable, "-m", "burnside", "idempotents", "D8", "--ring", "Q"]
    a = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    b = subprocess.run(cmd, capture_output=True, cwd="/root/pkg")
    assert a.stdout == b.stdout and a.returncode == 0
