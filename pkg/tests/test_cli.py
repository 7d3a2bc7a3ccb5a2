import json

import jsonschema
import pytest

from factorlab import verify
from factorlab.cli import main
from factorlab.report import judge
from factorlab.schemas import SCHEMAS, schema_for


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    records = [json.loads(line) for line in out.out.splitlines() if line.startswith("{")]
    return code, records, out.err


def validate(records):
    assert records
    for rec in records:
        jsonschema.validate(rec, schema_for(rec["kind"]))


COMMANDS = [
    ["parse", "sat(2) @ zmod(6)"],
    ["describe", "zmod(6)"],
    ["describe", "quotient(regular, [3]) @ zmod(6)"],
    ["describe", "sat(2) @ zmod(6)"],
    ["classify", "zmod(6)", "regular", "sat(2)"],
    ["classify", "axb(gf(2), gf(4), deg=3)", "regular", "satX"],
    ["factor", "zmod(6)", "regular", "sat(2)", "4", "--mode", "all"],
    ["factor", "zmod(8)", "regular", "all", "4"],
    ["factor", "zmod(6)", "regular", "sat(2)", "4", "--mode", "compact"],
    ["factor", "axb(gf(2), gf(4), deg=3)", "regular", "all", "[0, 0, 1]"],
    ["factor", "axb(Z, Q, height=64)", "regular", "satX", "[0, 1]"],
    ["assoc", "zmod(6)", "regular", "sat(2)", "2", "4"],
    ["localize", "zmod(6)", "sat(2)", "--module", "zmod_over(3)", "--prime", "all"],
    ["split-check", "zmod(6)", "regular", "sat(2)"],
    ["split-check", "axb(gf(2), gf(4), deg=3)", "regular", "satX"],
    ["verify", "--catalog", "3", "--theorems", "lattice,SX"],
    ["hunt", "--spec", "BFM && !presimplifiable", "--max-ring", "4", "--max-module", "4"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_validates(capsys, argv):
    code, records, _ = run(capsys, *argv, "--json")
    assert code == 0
    validate(records)


def test_every_kind_has_schema():
    for kind, schema in SCHEMAS.items():
        jsonschema.Draft202012Validator.check_schema(schema_for(kind))
        assert schema["properties"]["kind"]["const"] == kind


def test_classify_cycle_witness(capsys):
    code, (rec,), _ = run(capsys, "classify", "zmod(6)", "regular", "sat(2)", "--json")
    assert code == 0
    assert rec["flags"]["BFM"] is False
    assert set(rec["witnesses"]["BFM"]["cycle"]) == {2, 4}


def test_classify_gf4_ufm(capsys):
    _, (rec,), _ = run(capsys, "classify", "gf(4)", "regular", "units", "--json")
    assert rec["flags"]["UFM"]


def test_human_output(capsys):
    assert main(["classify", "zmod(6)", "regular", "sat(2)"]) == 0
    assert "BFM" in capsys.readouterr().out


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "r.json"
    assert main(["describe", "zmod(4)", "--out", str(dest)]) == 0
    validate([json.loads(x) for x in dest.read_text().splitlines()])


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["classify", "zmod(6)"],
    ["parse", "zmod(6"],
    ["parse", "sat(2) @ regular"],
    ["verify", "--theorems", "nope"],
    ["verify", "--max-ring", "0"],
])
def test_usage_exit_one(capsys, argv):
    assert main(argv) == 1


def test_syntax_error_record(capsys):
    code, (rec,), err = run(capsys, "parse", "zmod(6", "--json")
    assert code == 1 and rec["kind"] == "error" and rec["span"][0] == 6
    validate([rec])
    assert "error" in err


@pytest.mark.parametrize("argv", [
    ["classify", "axb(Z, Q)", "regular", "satX"],
    ["describe", "zmod(1)"],
    ["localize", "zmod(6)", "all"],
])
def test_evaluation_exit_two(capsys, argv):
    code, records, _ = run(capsys, *argv, "--json")
    assert code == 2
    assert records[-1]["kind"] == "error" and records[-1]["exit_code"] == 2
    validate(records[-1:])


def test_corrupt_checkpoint(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FACTORLAB_CACHE_DIR", str(tmp_path))
    args = ["verify", "--catalog", "3", "--theorems", "lattice", "--checkpoint", "ck.json"]
    assert main(args) == 0
    assert (tmp_path / "ck.json").exists()
    (tmp_path / "ck.json").write_text("{not json")
    assert main(args) == 2
    assert "checkpoint" in capsys.readouterr().err


def test_violation_exit_three(monkeypatch, capsys):
    def broken(inst):
        return [judge("remark_lattice", "planted", inst.id, {}, {"planted": False})]

    monkeypatch.setitem(verify.THEOREMS, "lattice", (broken, False))
    code, records, err = run(capsys, "verify", "--catalog", "3", "--theorems", "lattice", "--json")
    assert code == 3
    assert records[-1]["violations"] > 0
    validate(records)


def test_hunt_negative_control_zero(capsys):
    code, records, _ = run(capsys, "hunt", "--spec", "UFM && !FFM", "--max-ring", "5",
                           "--max-module", "5", "--json")
    assert code == 0
    assert records[-1]["found"] == 0 and records[-1]["exhaustive"]


def test_hunt_bad_predicate(capsys):
    assert main(["hunt", "--spec", "BFM &&"]) == 1
