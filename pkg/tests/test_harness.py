import json

import pytest

from asnp.harness.cli import main
from asnp.harness.records import ExperimentRecord, ResultCache, cache_key, canonical


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, [json.loads(line) for line in out.splitlines() if line.startswith("{")]


def test_gnp_command(capsys):
    code, rows = run(capsys, "gnp", "--d", "3", "--p", "5", "--no-cache")
    assert code == 0
    assert rows[0]["result"]["M"] == [2, 0]
    assert rows[0]["result"]["polygon"]["slopes"] == [["1/2", 2]]


def test_sweep_exit_code(capsys):
    code, rows = run(capsys, "gnp", "--d", "5", "--p-range", "2:200", "--sweep")
    assert code == 0 and rows[0]["result"]["mismatches"] == []


def test_usage_and_hypothesis_errors(capsys):
    assert main(["gnp", "--d", "3"]) == 1
    code, rows = run(capsys, "verify", "one-param", "--d", "3", "--p", "7", "--f", "1")
    assert code == 1 and rows[0]["error"] == "HypothesisError"


def test_feasibility_diagnostic(capsys):
    code, rows = run(capsys, "lfun", "--p", "101", "--b", "3", "--f", "1,1,1,1")
    assert code == 1
    assert rows[0]["error"] == "FeasibilityError" and rows[0]["cost_estimate"] > 10 ** 18


def test_determinism_and_cache_replay(capsys, tmp_path):
    args = ["dwork", "key2", "--d", "3", "--p", "29"]
    code, fresh = run(capsys, *args, "--no-cache")
    code2, first = run(capsys, *args)
    code3, replay = run(capsys, *args)
    assert code == code2 == code3 == 0
    strip = lambda r: {k: v for k, v in r.items() if k != "timestamp"}
    assert strip(fresh[0]) == strip(first[0]) == strip(replay[0])
    cache = ResultCache()
    assert cache.get("dwork-check", {"check": "key2", "d": 3, "p": 29}) is not None


def test_out_file_and_polygon_files(capsys, tmp_path):
    out, csv, svg = tmp_path / "o.jsonl", tmp_path / "g.csv", tmp_path / "g.svg"
    code = main(["gnp", "--d", "4", "--p", "13", "--out", str(out), "--csv", str(csv),
                 "--svg", str(svg)])
    assert code == 0
    assert json.loads(out.read_text())["kind"] == "gnp"
    assert csv.read_text().startswith("x,y_num,y_den")
    assert svg.read_text().startswith("<svg")


def test_zeta_both_agree(capsys):
    code, rows = run(capsys, "zeta", "--p", "2", "--ell", "1", "--b", "1", "--f", "1,0,1",
                     "--method", "both")
    assert code == 0 and rows[0]["result"]["agree"]


def test_cache_key_stability():
    assert cache_key("gnp", {"d": 3, "p": 5}) == cache_key("gnp", {"p": 5, "d": 3})
    rec = ExperimentRecord("gnp", {"d": 3}, {"x": 1})
    assert json.loads(rec.to_json())["ok"] is True
    assert canonical({"b": 1, "a": 2}) == '{"a":2,"b":1}'


def test_cache_appends(tmp_path):
    cache = ResultCache(tmp_path)
    cache.put(ExperimentRecord("k", {"a": 1}, {"v": 1}))
    cache.put(ExperimentRecord("k", {"a": 2}, {"v": 2}))
    assert len((tmp_path / "records.jsonl").read_text().splitlines()) == 2
    assert ResultCache(tmp_path).get("k", {"a": 2})["result"] == {"v": 2}
