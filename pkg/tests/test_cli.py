import json

from greedylab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_family_check(capsys):
    code, out = run_cli(capsys, "family", "check", "--family", "s:w+1",
                        "--set", "3,4,5")
    assert code == 0
    payload = json.loads(out)
    assert payload == {"family": "s:w + 1", "set": [3, 4, 5], "member": True}


def test_family_enumerate(capsys, tmp_path):
    out_csv = tmp_path / "sets.csv"
    code, out = run_cli(capsys, "family", "enumerate", "--family", "f:1",
                        "--universe", "4", "--max-size", "2",
                        "--out", str(out_csv))
    assert code == 0
    lines = out_csv.read_text().splitlines()
    assert lines[0] == "set,member"
    table = {row.split(",")[0]: row.split(",")[1] for row in lines[1:]}
    assert table[""] == "1"
    assert table["1;2"] == "1"
    assert table["1;2"] == "1" and table["3;4"] == "1"


def test_norm_eval(capsys):
    code, out = run_cli(capsys, "norm", "eval", "--space", "james:a=1",
                        "--vec", "3:1,4:-0.5,5:1")
    assert code == 0
    payload = json.loads(out)
    assert payload["space"] == "james:a=1"
    assert payload["norm"] == 2.5


def test_tga_run(capsys):
    code, out = run_cli(capsys, "tga", "run", "--space", "parity",
                        "--vec", "1:2,2:-3,5:1", "--m", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["greedy_set"] == [1, 2]
    assert payload["residual"] == "5:1"


def test_constants_estimate(capsys, tmp_path):
    out_json = tmp_path / "est.json"
    code, out = run_cli(capsys, "constants", "estimate", "--space", "parity",
                        "--family", "s:1", "--name", "Cd", "--samples", "40",
                        "--seed", "7", "--out", str(out_json))
    assert code == 0
    payload = json.loads(out_json.read_text())
    assert payload["constant"] == "Cd"
    assert payload["lower_bound"] >= 1.0
    assert "witness" in payload and "spec" in payload


def test_rah_build_and_ppp1(capsys, tmp_path):
    out_json = tmp_path / "rah.json"
    code, _ = run_cli(capsys, "rah", "build", "--alpha", "2", "--min", "3",
                      "--blocks", "1", "--out", str(out_json))
    assert code == 0
    payload = json.loads(out_json.read_text())
    assert payload["blocks"][0]["support"] == [3, 23]
    assert payload["certificates"]["l1_mass_one"] is True

    code, out = run_cli(capsys, "rah", "ppp1", "--alpha", "1", "--beta", "2",
                        "--N", "2")
    assert code == 0
    cert = json.loads(out)
    assert cert["holds"] is True and cert["L_min"] == 3


def test_rah_build_budget_exit_code(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("GREEDYLAB_BUDGET", "50")
    out_json = tmp_path / "rah.json"
    code, _ = run_cli(capsys, "rah", "build", "--alpha", "2", "--min", "3",
                      "--blocks", "2", "--out", str(out_json))
    assert code == 3
    payload = json.loads(out_json.read_text())
    assert "budget_error" in payload


def test_repro_and_list(capsys, tmp_path):
    cfg = tmp_path / "cfg"
    cfg.write_text("experiment = repro-parity\nn_max = 9\n")
    code, out = run_cli(capsys, "repro", "--config", str(cfg), "--out",
                        str(tmp_path / "out"))
    assert code == 0
    summary = json.loads(out)
    assert summary["status"] == "PASS"

    code, out = run_cli(capsys, "list")
    assert code == 0
    assert "repro-parity" in out


def test_cli_error_paths(capsys):
    code, _ = run_cli(capsys, "family", "check", "--family", "nope:1",
                      "--set", "1")
    assert code == 2
