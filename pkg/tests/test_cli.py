import json

import jsonschema
import pytest

from tbcode.fileio import REPORT_SCHEMA, read_code, read_graph, write_code, write_graph
from tbcode.graphs import Graph


@pytest.fixture
def graphs(tmp_path):
    out = {}
    for name, G in {"C4": Graph.cycle(4), "C5": Graph.cycle(5), "K2": Graph.complete(2), "K3": Graph.complete(3),
                    "K5": Graph.complete(5), "P3": Graph.path(3)}.items():
        out[name] = tmp_path / f"{name}.txt"
        write_graph(G, out[name])
    return out


@pytest.mark.parametrize("k, complement, header", [(3, False, "28 84"), (2, False, "6 3"), (3, True, "28 294")])
def test_gen(run_cli, tmp_path, k, complement, header):
    out = tmp_path / "g.txt"
    status, rep = run_cli("gen", "--k", k, *(["--complement"] if complement else []), "--out", out)
    assert status == 0 and out.read_text().splitlines()[0] == header
    labels = json.loads((tmp_path / "g.txt.labels.json").read_text())
    assert labels["k"] == k and len(labels["labels"]) == int(header.split()[0])
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_gen_is_deterministic(run_cli, tmp_path):
    run_cli("gen", "--k", 4, "--out", tmp_path / "a.txt")
    run_cli("gen", "--k", 4, "--out", tmp_path / "b.txt")
    assert (tmp_path / "a.txt").read_bytes() == (tmp_path / "b.txt").read_bytes()


@pytest.mark.parametrize("k", [0, 8])
def test_gen_rejects_k(run_cli, tmp_path, k):
    assert run_cli("gen", "--k", k, "--out", tmp_path / "g.txt")[0] == 2


def test_minrank(run_cli, graphs):
    status, rep = run_cli("minrank", "--graph", graphs["C5"], "--method", "all")
    assert status == 0 and rep["results"]["minrank"] == 3 and rep["results"]["agree"]
    status, rep = run_cli("minrank", "--graph", graphs["K5"], "--method", "all")
    assert status == 0 and rep["results"]["minrank"] == 1
    status, rep = run_cli("minrank", "--graph", graphs["C4"], "--method", "pattern")
    assert rep["results"]["minrank"] == 2 and len(rep["witnesses"]["matrix"]) == 4
    status, rep = run_cli("minrank", "--graph", graphs["P3"], "--method", "all")
    assert rep["results"]["values"] == {"pattern": 2, "encoder": 2, "hom": 2}


def test_minrank_cap_exit(run_cli, graphs):
    assert run_cli("minrank", "--graph", graphs["C5"], "--method", "hom")[0] == 2
    assert run_cli("minrank", "--graph", graphs["K5"], "--method", "pattern", "--pattern-cap", 4)[0] == 2


def test_tb(run_cli, graphs, tmp_path):
    assert run_cli("tb", "--graph", graphs["C4"], "--mode", "exact")[1]["results"]["tb"] == 4
    assert run_cli("tb", "--graph", graphs["K3"], "--mode", "exact")[1]["results"]["tb"] == 2
    status, rep = run_cli("tb", "--graph", graphs["C4"], "--mode", "upper", "--dominating", "min", "--code-out", tmp_path / "c.json")
    assert status == 0 and rep["results"]["verified"] and rep["results"]["length"] <= 2 * 3
    assert read_code(tmp_path / "c.json").length == rep["results"]["length"]


def test_tb_upper_on_complement_g3(run_cli, tmp_path):
    g = tmp_path / "cg3.txt"
    run_cli("gen", "--k", 3, "--complement", "--out", g)
    status, rep = run_cli("tb", "--graph", g, "--mode", "upper", "--code-out", tmp_path / "code.json")
    res = rep["results"]
    assert status == 0 and res["verified"] and res["length"] <= 12 and res["centralized_length"] == 3
    status, rep = run_cli("verify", "--code", tmp_path / "code.json", "--graph", g, "--model", "taskbased")
    assert status == 0 and rep["results"]["ok"]


def test_verify(run_cli, graphs, tmp_path):
    from tbcode.codes import Decoder, TaskBasedCode, make_sender

    code = TaskBasedCode(2, (make_sender(0, [1], ["1"]), make_sender(1, [0], ["1"])), (Decoder((1,), ()), Decoder((0,), ())), (1, 0))
    write_code(code, tmp_path / "k2.json")
    assert run_cli("verify", "--code", tmp_path / "k2.json", "--graph", graphs["K2"], "--model", "taskbased")[0] == 0
    assert run_cli("verify", "--code", tmp_path / "k2.json", "--graph", graphs["K2"], "--model", "embedded")[0] == 0
    assert run_cli("verify", "--code", tmp_path / "k2.json", "--graph", graphs["K2"], "--model", "index")[0] == 2
    data = json.loads((tmp_path / "k2.json").read_text())
    data["assignment"] = [0, 0]
    (tmp_path / "bad.json").write_text(json.dumps(data))
    status, rep = run_cli("verify", "--code", tmp_path / "bad.json", "--graph", graphs["K2"], "--model", "taskbased")
    assert status == 1 and "0" in rep["results"]["foreign_block"]
    (tmp_path / "junk.json").write_text("{")
    assert run_cli("verify", "--code", tmp_path / "junk.json", "--graph", graphs["K2"], "--model", "taskbased")[0] == 2
    assert run_cli("verify", "--code", tmp_path / "k2.json", "--graph", graphs["K3"], "--model", "taskbased")[0] == 2


def test_experiment_gap(run_cli):
    status, rep = run_cli("--seed", 5, "experiment-gap", "--k-min", 2, "--k-max", 3, "--messages", 200)
    rows = rep["results"]["rows"]
    assert status == 0 and rep["seed"] == 5
    assert [r["centralized"] for r in rows] == [2, 3]
    assert all(r["task_based"] <= r["k"] * (r["k"] + 1) for r in rows)
    assert run_cli("experiment-gap", "--k-min", 1, "--k-max", 1)[0] == 2
    assert run_cli("experiment-gap", "--k-min", 3, "--k-max", 7)[0] == 2


def test_spectrum(run_cli, graphs, tmp_path):
    status, rep = run_cli("spectrum", "--graph", graphs["C4"])
    assert status == 0 and rep["results"]["lambda_second_abs"] == pytest.approx(2.0)
    assert run_cli("spectrum", "--graph", graphs["P3"])[0] == 2
    g4 = tmp_path / "g4.txt"
    run_cli("gen", "--k", 4, "--out", g4)
    status, rep = run_cli("spectrum", "--graph", g4, "--expect-peeters", 4)
    assert status == 0 and f"{rep['results']['lambda_second_abs']:.6f}" == "8.000000"
    assert run_cli("spectrum", "--graph", g4, "--expect-peeters", 3)[0] == 1


def test_report_file_and_threads(run_cli, graphs, tmp_path, monkeypatch):
    monkeypatch.setenv("TBCODE_THREADS", "1")
    out = tmp_path / "r.json"
    status, rep = run_cli("--report", out, "--threads", 1, "tb", "--graph", graphs["K3"])
    assert status == 0 and json.loads(out.read_text()) == rep
    jsonschema.validate(rep, REPORT_SCHEMA)


def test_console_script_runs(tmp_path):
    import subprocess

    r = subprocess.run(["tbcode", "gen", "--k", "2", "--out", str(tmp_path / "g.txt")], capture_output=True, text=True)
    assert r.returncode == 0 and read_graph(tmp_path / "g.txt").n == 6
