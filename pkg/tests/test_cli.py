import json
import subprocess
import sys

import pytest

from oscopt import io as fio
from oscopt.cli import cli_main
from oscopt.graph import complete_graph, random_graph

FAST = ["--cycles", "20", "--restarts", "4"]


@pytest.fixture
def files(tmp_path):
    k3 = tmp_path / "k3.txt"
    k3.write_text(fio.format_edge_list(complete_graph(3)))
    square = tmp_path / "square.csv"
    square.write_text("0,1,1.4142135623730951,1\n1,0,1,1.4142135623730951\n"
                      "1.4142135623730951,1,0,1\n1,1.4142135623730951,1,0\n")
    big = tmp_path / "big.txt"
    big.write_text(fio.format_edge_list(random_graph(18, 0.3, 1)))
    return {"k3": k3, "square": square, "big": big, "dir": tmp_path}


def test_solve_maxkcut_writes_result(files, capsys):
    out = files["dir"] / "r.json"
    trace = files["dir"] / "t.csv"
    code = cli_main(["solve", "maxkcut", str(files["k3"]), "--k", "3", "--seed", "1",
                     "--out", str(out), "--trace", str(trace)] + FAST)
    assert code == 0
    rec = fio.read_result(out)
    assert rec.best_score == 3.0 and rec.valid and rec.params["K"] == 3
    assert rec.params["seeds"] == [1, 2, 3, 4]
    assert len(rec.trials) == 4
    header, data = fio.read_trajectory(trace)
    assert header[:2] == ["t", "phi_0"] and data.shape[0] == 201
    assert "score 3" in capsys.readouterr().out


def test_oracle_tsp_square(files, capsys):
    assert cli_main(["oracle", "tsp", str(files["square"])]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_k_below_two_is_invalid(files, capsys):
    assert cli_main(["solve", "maxkcut", str(files["k3"]), "--k", "1"]) == 2
    assert "K must be >= 2" in capsys.readouterr().err


def test_unknown_flag_prints_usage(files, capsys):
    assert cli_main(["solve", "maxkcut", str(files["k3"]), "--bogus"]) == 2
    assert "usage:" in capsys.readouterr().err


def test_oracle_budget_refusal(files, capsys):
    assert cli_main(["oracle", "maxcut", str(files["big"])]) == 3
    assert "budget" in capsys.readouterr().err


def test_missing_instance_is_io_error(files):
    assert cli_main(["oracle", "maxcut", str(files["dir"] / "absent.txt")]) == 1


def test_malformed_instance_is_invalid(files):
    bad = files["dir"] / "bad.txt"
    bad.write_text("3 2\n1 2\n")
    assert cli_main(["solve", "maxcut", str(bad)] + FAST) == 2


def test_trace_unavailable_for_set_problems(files):
    args = ["solve", "mis", str(files["k3"]), "--trace", str(files["dir"] / "t.csv")] + FAST
    assert cli_main(args) == 2


def test_compare_prints_ratio(files, capsys):
    assert cli_main(["compare", "maxcut", str(files["k3"])] + FAST) == 0
    assert capsys.readouterr().out.strip() == "heuristic 2 oracle 2 ratio 1.0000"


def test_gen_round_trips(files):
    path = files["dir"] / "m8.txt"
    assert cli_main(["gen", "mobius", "8", "--out", str(path)]) == 0
    g = fio.load_graph(path)
    assert (g.n, g.m) == (8, 12)
    assert cli_main(["gen", "mobius", "7"]) == 2


@pytest.mark.parametrize("problem", ["maxkcut", "gp", "coloring"])
def test_result_replays_exactly(files, problem, tmp_path):
    inst = files["dir"] / "g.txt"
    inst.write_text(fio.format_edge_list(random_graph(8, 0.5, 4)))
    first = tmp_path / "a.json"
    assert cli_main(["solve", problem, str(inst), "--seed", "7", "--out", str(first)] + FAST) == 0
    rec = fio.read_result(first)
    p = rec.params
    argv = ["solve", rec.problem, str(inst), "--seed", str(p["seed"]), "--restarts", str(p["restarts"]),
            "--dt", repr(p["dt"]), "--cycles", repr(p["T"]), "--c1-start", repr(p["c1_start"]),
            "--anneal-a", repr(p["A"]), "--csync", repr(p["Csync"]), "--c2", repr(p["C2"]),
            "--out", str(tmp_path / "b.json")]
    if p["K"] is not None:
        argv += ["--k", str(p["K"])]
    assert cli_main(argv) == 0
    again = fio.read_result(tmp_path / "b.json")
    assert again.best_score == rec.best_score and again.solution == rec.solution


def test_module_entry_point_is_deterministic(files, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        env = {"SOURCE_DATE_EPOCH": "0", "PATH": ""}
        subprocess.run([sys.executable, "-m", "oscopt", "solve", "maxcut", str(files["k3"]), "--out", str(path)]
                       + FAST, check=True, env=env, capture_output=True)
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["timestamp"] == "1970-01-01T00:00:00Z"
