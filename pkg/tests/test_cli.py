"""Command line: exit codes, messages and artifact round trips."""

import io
import json
import os
import subprocess
import sys

import pytest

from cosupport import dercat as dc
from cosupport.cli import ScenarioError, main, parse_scenario

SCEN = os.path.join(os.path.dirname(__file__), os.pardir, "scenarios")


def scen(name):
    return os.path.join(SCEN, name)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def last_json(text):
    return json.loads(text.strip().splitlines()[-1])


def test_minimal_scenario_parses():
    sc = parse_scenario({"ring": "z4", "modules": {"M": {"quotient": [2]}}, "compute": [{"set": "cosupp"}]})
    assert sc.object().lo == 0
    assert list(sc.modules["M"].orders) == [2]


def test_dangling_reference(capsys):
    with pytest.raises(ScenarioError, match="unknown module reference 'B'"):
        parse_scenario(scen("bad_dangling.json"))
    code, _ = run("compute", "--input", scen("bad_dangling.json"))
    assert code == 2
    assert "'B'" in capsys.readouterr().err


def test_d_squared_names_degree(capsys):
    code, _ = run("compute", "--input", scen("bad_d2.json"))
    assert code == 2
    assert "degree 2" in capsys.readouterr().err


def test_schema_errors(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{"modules": {}}')
    assert run("compute", "--input", str(p))[0] == 2
    p.write_text("{not json")
    assert run("compute", "--input", str(p))[0] == 2
    assert run("compute", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run("frobnicate")[0] == 2


def test_six_kinds_two_term():
    code, out = run("compute", "--input", scen("z4_two_term.json"))
    assert code == 0
    rows = last_json(out)["results"]
    assert [r["set"] for r in rows] == ["Supp", "supp", "coSupp", "cosupp", "co_supp", "Co_supp"]
    assert all(r["labels"] == ["(2)"] for r in rows)
    assert all("definitional" in r["result"]["provenance"]["(2)"] for r in rows)
    table = out.split("{\"results\"")[0]
    assert table.count("{(2)}") == 6


def test_single_set_with_prime():
    code, out = run("compute", "--input", scen("z12_regular.json"), "--set", "cosupp", "--prime", "(3)",
                    "--format", "json")
    assert code == 0
    row = last_json(out)["results"][0]
    assert row["labels"] == ["(2)", "(3)"] and row["member"] is True


def test_depth_width_cli():
    code, out = run("compute", "--input", scen("z4_residue.json"), "--set", "depth", "--prime", "0",
                    "--format", "json")
    assert code == 0 and last_json(out)["results"][0]["result"] == {"value": 0}
    code, _ = run("compute", "--input", scen("z4_residue.json"), "--set", "depth")
    assert code == 2


def test_artifact_round_trip():
    code, out = run("compute", "--input", scen("z6_sum.json"), "--set", "Supp", "--apply", "D_R",
                    "--format", "json")
    assert code == 0
    art = last_json(out)["results"][0]["artifact"]
    sc = parse_scenario(json.loads(json.dumps(art)))
    C = sc.object()
    orig = parse_scenario(scen("z6_sum.json")).object()
    assert dc.homology_orders(C) == {-n: o for n, o in dc.homology_orders(orig).items()}


def test_ring_info():
    code, out = run("ring", "info", scen("ring_product.json"), "--json")
    assert code == 0
    info = last_json(out)
    assert info["order"] == 16 and len(info["spectrum"]) == 2


def test_dvr_commands():
    code, out = run("dvr", "demo", "strictness")
    assert code == 0
    assert "cosupp R = {m} ⊊ Spec R = supp R" in out
    assert "supp E = {m} ⊊ Spec R = cosupp E" in out
    code, out = run("dvr", "demo", "cor34")
    assert code == 0 and last_json(out)["verdict"] == "flagged"
    code, out = run("dvr", "eval", "R + E", "--set", "cosupp")
    assert code == 0 and last_json(out)["result"]["labels"] == ["(0)", "m"]
    code, out = run("dvr", "eval", "R + T(2)", "--set", "dual")
    assert code == 0 and last_json(out)["dual"] == "T(2) + E"
    assert run("dvr", "eval", "K", "--set", "dual")[0] == 2
    assert run("dvr", "eval", "R +", "--set", "supp")[0] == 2


def test_verify_run(tmp_path):
    out_file = tmp_path / "c.jsonl"
    code, out = run("verify", "run", "--suite", "P-ThmA,P-Cor34-literal-dvr", "--seeds", "0..3",
                    "--out", str(out_file))
    assert code == 0
    assert "flagged" in out
    assert len(out_file.read_text().splitlines()) == 8
    assert run("verify", "run", "--suite", "P-Nope", "--seeds", "0..1")[0] == 2
    assert run("verify", "run", "--suite", "P-Injected-VAnn", "--seeds", "0..20")[0] == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "cosupport.cli", "dvr", "demo", "maxmin"],
                       capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout.strip().splitlines()[-1])["verdict"] == "pass"
