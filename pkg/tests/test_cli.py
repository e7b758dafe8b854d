import json

import pytest

from copkiller import cli
from copkiller.errors import IllPosed


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_family(capsys):
    code, out, _ = run(capsys, "solve", "--family", "cycle:4")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["command"] == "solve"
    assert doc["results"]["verdict"] == "KillerWin"


def test_solve_g6(capsys):
    code, out, _ = run(capsys, "solve", "--g6", "Bw")
    assert code == 0 and json.loads(out)["results"]["verdict"] == "CopWin"


def test_gambler_time_files(capsys, tmp_path):
    (tmp_path / "p2.el").write_text("2 1\n0 1\n")
    (tmp_path / "half.json").write_text('{"p": [0.5, 0.5]}')
    out_file = tmp_path / "out.json"
    code, out, _ = run(capsys, "gambler-time", "--graph", str(tmp_path / "p2.el"),
                       "--dist", str(tmp_path / "half.json"), "--out", str(out_file))
    assert code == 0 and json.loads(out)["results"]["values"] == [2.0, 2.0]
    assert out_file.read_text() == out


def test_graph_file_in_graph6(capsys, tmp_path):
    (tmp_path / "k3.g6").write_text(">>graph6<<Bw\n")
    code, out, _ = run(capsys, "solve", "--graph", str(tmp_path / "k3.g6"))
    assert code == 0 and json.loads(out)["results"]["verdict"] == "CopWin"


def test_evade_and_delays(capsys, tmp_path):
    (tmp_path / "d.txt").write_text("0 1 1\n1 0 1\n")
    code, out, _ = run(capsys, "evade", "--family", "path:2", "--m", "2", "--delays", str(tmp_path / "d.txt"))
    assert code == 0 and json.loads(out)["results"]["values"] == [0.25, 0.25]
    code, out, _ = run(capsys, "evade", "--family", "path:2", "--m", "1", "--format", "csv")
    assert out.splitlines()[0] == "rounds,vertex,value" and len(out.splitlines()) == 5


def test_multicop(capsys):
    code, out, _ = run(capsys, "multicop", "--family", "star:3", "--cops", "2", "--start", "0")
    res = json.loads(out)["results"]
    assert code == 0 and res["value"] == 2.5 and len(res["states"]) == 16


def test_random_killer_commands(capsys, tmp_path):
    (tmp_path / "d.json").write_text(json.dumps({"p": [1 / 3] + [1 / 6] * 4}))
    code, out, _ = run(capsys, "random-killer", "--family", "star:4", "--dist", str(tmp_path / "d.json"), "--start", "0")
    res = json.loads(out)["results"]
    assert code == 0 and res["win"] == pytest.approx(2 / 3) and res["lose"] == pytest.approx(1 / 3)
    code, out, _ = run(capsys, "random-killer", "--family", "path:2", "--seed", "3")
    res = json.loads(out)["results"]
    assert code == 0 and res["value"] == pytest.approx(0.5, abs=0.01)


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "--family", "pentagon-plus")
    res = json.loads(out)["results"]
    assert code == 0 and res["n"] == 6 and res["edges"] == 9
    code, out, _ = run(capsys, "generate", "--family", "cycle:4", "--format", "csv")
    assert out == "u,v\n0,1\n0,3\n1,2\n2,3\n"


def test_experiment_commands(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "4")
    doc = json.loads(out)
    assert code == 0 and doc["command"] == "enumerate" and doc["results"]["passed"]
    code, out, _ = run(capsys, "random-experiment", "--n", "10", "--samples", "5", "--seed", "1")
    code2, out2, _ = run(capsys, "random-experiment", "--n", "10", "--samples", "5", "--seed", "1")
    assert code == code2 == 0 and out == out2
    code, out, _ = run(capsys, "products", "--format", "csv")
    assert code == 0 and out.startswith("agrees,")


@pytest.mark.parametrize("argv", [
    ["solve", "--g6", "!!"],
    ["solve", "--family", "cycle:2"],
    ["solve"],
    ["solve", "--family", "cycle:4", "--g6", "Bw"],
    ["solve", "--g6", "B?"],  # isolated vertices
    ["gambler-time", "--family", "path:3", "--dist", "/nonexistent.json"],
    ["evade", "--family", "path:2", "--m", "-1"],
    ["enumerate", "--n", "9"],
])
def test_bad_input_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve", "--format", "xml"])
    assert exc.value.code == 2


def test_solver_error_exit_code(capsys, monkeypatch):
    def boom(args):
        raise IllPosed("cycle")

    monkeypatch.setitem(cli.COMMANDS, "solve", boom)
    code, out, err = run(capsys, "solve", "--family", "cycle:4")
    assert code == 3 and "cycle" in err


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "copkiller", "solve", "--family", "cycle:3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["results"]["verdict"] == "CopWin"
