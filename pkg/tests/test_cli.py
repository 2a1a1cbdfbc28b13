import json

import pytest

from quillen.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_betti_text(capsys):
    code, out, err = run_cli(capsys, "betti", "--group", "sym5")
    assert code == 0
    assert "b~1 = 16" in out
    assert err == ""


def test_betti_structured(capsys):
    code, out, _ = run_cli(capsys, "betti", "--group", "sym5",
                           "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "qg/1"
    assert doc["inputs"]["group"] == "sym5"
    assert doc["result"]["betti"] == {"0": 0, "1": 16}


def test_structured_output_is_deterministic(capsys):
    _, out1, _ = run_cli(capsys, "euler", "--group", "alt5",
                         "--format", "structured")
    _, out2, _ = run_cli(capsys, "euler", "--group", "alt5",
                         "--format", "structured")
    assert out1 == out2


def test_output_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "euler-formula", "--group", "sym5",
                           "--format", "structured", "--output", str(path))
    assert code == 0
    assert out == ""
    doc = json.loads(path.read_text())
    assert doc["result"]["formula"] == -16
    assert doc["result"]["match"] is True


def test_euler_formula_text(capsys):
    code, out, _ = run_cli(capsys, "euler-formula", "--group", "alt5")
    assert code == 0
    assert "formula 4 == complex 4" in out


def test_hqc_text(capsys):
    code, out, _ = run_cli(capsys, "hqc", "--group", "alt5")
    assert code == 0
    assert "holds" in out


def test_ap_summary(capsys):
    code, out, _ = run_cli(capsys, "ap", "--group", "sym4")
    assert code == 0
    assert "13" in out


def test_conditions_single_orbit(capsys):
    code, out, _ = run_cli(capsys, "conditions", "--group", "sym5")
    assert code == 0
    assert "note trivial_decomposition: True" in out


def test_unknown_group_exits_2(capsys):
    code, _, err = run_cli(capsys, "betti", "--group", "no-such-group")
    assert code == 2
    assert err.startswith("error:")


def test_missing_q_exits_2(capsys):
    code, _, err = run_cli(capsys, "robinson", "--group", "sym5")
    assert code == 2
    assert "--q" in err


def test_bad_p_exits_2(capsys):
    code, _, err = run_cli(capsys, "betti", "--group", "sym5", "--p", "6")
    assert code == 2
    assert err.startswith("error:")


def test_unknown_command_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_prop68_cli(capsys):
    code, out, _ = run_cli(capsys, "prop68", "--group", "aut-alt6",
                           "--k", "1")
    assert code == 0
    assert "holds" in out


def test_robinson_cli_structured(capsys):
    code, out, _ = run_cli(capsys, "robinson", "--group", "sym5",
                           "--q", "5", "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["verdict"] == "holds"
    assert doc["result"]["evidence"]["residue"] == 4
