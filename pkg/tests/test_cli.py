import json

import pytest

from drinfeld.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_ordinary(capsys):
    code, out, _ = run(capsys, "classify", "--q", "2", "--gamma", "0", "--a", "[1,1]")
    assert code == 0
    rep = json.loads(out)
    assert rep["h"] == 1
    assert rep["class"] == "ordinary"
    assert rep["j"] == [1]


def test_classify_supersingular(capsys):
    code, out, _ = run(capsys, "classify", "--q", "2", "--gamma", "0", "--a", "[0,1]")
    assert code == 0
    rep = json.loads(out)
    assert rep["h"] == 0 and rep["class"] == "supersingular" and rep["j"] == [0]


def test_classify_rank1_omits_rank2_fields(capsys):
    code, out, _ = run(capsys, "classify", "--q", "2", "--gamma", "0", "--a", "[1]")
    rep = json.loads(out)
    assert code == 0
    assert rep["h"] == 0
    assert "j" not in rep and "class" not in rep


def test_json_round_trip_and_determinism(capsys, tmp_path):
    argv = ["torsion", "--q", "2", "--gamma", "0", "--a", "[1,1]", "--ideal", "T+1"]
    code, out1, _ = run(capsys, *argv)
    assert code == 0
    rep1 = json.loads(out1)
    code, out2, _ = run(capsys, *argv, "--seed", "0")
    rep2 = json.loads(out2)
    assert rep1 == rep2
    assert rep1["points"] == 4
    assert rep1["invariant_factors"] == ["T+1", "T+1"]


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "classify", "--q", "6", "--gamma", "0", "--a", "[1,1]")
    assert code == 2 and "prime power" in err
    code, _, err = run(capsys, "classify", "--q", "2", "--gamma", "0", "--a", "[1,0]")
    assert code == 2
    code, _, err = run(capsys, "torsion", "--q", "2", "--gamma", "0", "--a", "[1,1]", "--ideal", "T^")
    assert code == 2 and "T^" in err
    code, _, err = run(
        capsys, "classify", "--q", "3", "--field", "p=2 deg=1", "--gamma", "0", "--a", "[1,1]"
    )
    assert code == 2


def test_quotient_command(capsys):
    code, out, _ = run(
        capsys,
        "quotient",
        "--q", "2",
        "--gamma", "0",
        "--a", "[0,1]",
        "--kernel-points", "[[0]]",
        "--mult", "q^1",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["checks"]["verified"]
    assert rep["target"]["a"] == [[0], [1]]
    assert rep["xi"] == [[0], [1]]  # tau


def test_levels_command(capsys):
    code, out, _ = run(
        capsys, "levels", "--q", "2", "--gamma", "0", "--a", "[1,1]",
        "--ideal", "T+1", "--kind", "all",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["gamma0"]["count"] == 3
    assert rep["gamma1"]["count"] == 3
    assert rep["gamma_full"]["count"] == 6


def test_ihara_command(capsys, tmp_path):
    out_file = tmp_path / "report.json"
    code, _, _ = run(
        capsys, "ihara", "--q", "2", "--p", "T", "--n", "T+1",
        "--genus", "0", "--out", str(out_file), "--verbose",
    )
    assert code == 0
    rep = json.loads(out_file.read_text())
    assert {"q", "p", "m", "n", "N2", "S", "bound", "pass"} <= rep.keys()
    assert (rep["N2"], rep["S"]) == (3, 1)
    assert rep["pass"] is True
    assert len(rep["points"]) == 3
    # non-prime p rejected
    code, _, err = run(capsys, "ihara", "--q", "2", "--p", "T^2+T", "--n", "T+1")
    assert code == 2


def test_verify_graphs_command(capsys):
    code, out, _ = run(capsys, "verify-graphs", "--q", "2", "--p", "T", "--n", "T+1")
    assert code == 0
    rep = json.loads(out)
    assert rep["all_on_union"] and rep["count"] == 21


def test_deform_check_exit_codes(capsys):
    code, out, _ = run(
        capsys, "deform-check", "--q", "2", "--kind", "gamma0",
        "--gamma", "0", "--a", "[1,1]",
    )
    assert code == 0
    assert json.loads(out)["matches"] is True
    # the binary-field gamma_full deviation surfaces as a math failure
    code, out, _ = run(
        capsys, "deform-check", "--q", "2", "--kind", "gamma_full",
        "--gamma", "0", "--a", "[1,1]",
    )
    assert code == 1
    assert json.loads(out)["matches"] is False


def test_config_file_and_formats(capsys, tmp_path):
    cfg = tmp_path / "session.cfg"
    cfg.write_text("# session\nq=2\nformat=text\n")
    code, out, _ = run(
        capsys, "classify", "--config", str(cfg), "--gamma", "0", "--a", "[1,1]"
    )
    assert code == 0
    assert "class" in out and "{" not in out
    code, out, _ = run(
        capsys, "classify", "--q", "2", "--format", "csv", "--gamma", "0", "--a", "[1,1]"
    )
    assert code == 0
    assert any(line.startswith("h,") for line in out.splitlines())
    bad = tmp_path / "bad.cfg"
    bad.write_text(". nonsense\n")
    code, _, err = run(capsys, "classify", "--config", str(bad), "--gamma", "0", "--a", "[1,1]")
    assert code == 2 and "bad.cfg:1" in err


def test_extension_field_session(capsys):
    code, out, _ = run(
        capsys, "classify", "--q", "2", "--field", "p=2 deg=1 mod=[1,1,1] ext=2",
        "--gamma", "[0,1]", "--a", "[1,1]",
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["characteristic"] == "T^2+T+1"
