"""End-to-end command tests: exit codes, schemas, determinism, config files."""
import numpy as np
import pytest

from cliffsim import cli

SMALL_ARGS = {
    "verify-basis": ["--n", "2"],
    "omega-count": ["--n", "2"],
    "verify-gqft": ["--n", "2", "--thetas", "0.1,0.5", "--trials", "2"],
    "gqft-distance": ["--n", "2", "--thetas", "0.1,0.5", "--trials", "2"],
    "trotter-sweep": ["--n", "1", "--terms", "2", "--rs", "1,10,100"],
    "swap-test": ["--n", "2", "--shots", "1000,10000"],
    "train-cqp": ["--iterations", "120", "--require-fidelity", "0.5"],
    "equivalence": ["--n", "2", "--trials", "5"],
    "decompose": [],
}

HEADERS = {
    "verify-gqft": "theta,n,seed,unitarity_defect,factorization_error",
    "gqft-distance": "theta,n,seed,distance,bound",
    "trotter-sweep": "r,t,measured_error,bound_simple,bound_full,bound_commutator,omega",
    "train-cqp": "iteration,fidelity,theta_0,theta_1",
    "swap-test": "shots,seed,zero_count,estimate,exact_overlap",
    "omega-count": "n,omega_parity_rule,omega_bruteforce",
    "equivalence": "seed,n,phi_defect,state_defect",
    "verify-basis": ("n,blade_count,max_hermiticity_defect,"
                     "max_generator_relation_defect,gram_rank"),
}


def _run(command, out, extra=()):
    return cli.main([command, *SMALL_ARGS[command], "--out", str(out), *extra])


@pytest.mark.parametrize("command", sorted(SMALL_ARGS))
def test_command_succeeds_and_writes_report(tmp_path, command, capsys):
    out = tmp_path / "report.csv"
    assert _run(command, out) == 0
    assert f"OK wrote {out}" in capsys.readouterr().out
    lines = out.read_text().splitlines()
    if command in HEADERS:
        assert lines[0] == HEADERS[command]
    meta = [ln for ln in lines if ln.startswith("# ")]
    assert any(ln.startswith("# seed = ") for ln in meta)
    assert any(ln.startswith("# version = ") for ln in meta)
    assert any(ln.startswith("# command = cliffsim ") for ln in meta)


@pytest.mark.parametrize("command", sorted(SMALL_ARGS))
def test_data_rows_are_deterministic(tmp_path, command):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run(command, a, ["--seed", "9"]) == 0
    assert _run(command, b, ["--seed", "9"]) == 0
    data_a = [ln for ln in a.read_text().splitlines() if not ln.startswith("#")]
    data_b = [ln for ln in b.read_text().splitlines() if not ln.startswith("#")]
    assert data_a == data_b


def test_seed_changes_sampled_rows(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert _run("swap-test", a, ["--seed", "1"]) == 0
    assert _run("swap-test", b, ["--seed", "2"]) == 0
    assert a.read_text().splitlines()[1] != b.read_text().splitlines()[1]


def test_floats_round_trip_through_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert _run("gqft-distance", out) == 0
    row = out.read_text().splitlines()[1].split(",")
    dist, bound = float(row[3]), float(row[4])
    assert 0.0 < dist <= bound
    assert f"{dist:.17g}" == row[3]  # 17 significant digits round-trip


def test_config_file_and_flag_override(tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text("# sweep settings\nn = 1\nterms = 2\nrs = 1,10\nseed = 4\n")
    out = tmp_path / "r.csv"
    assert cli.main(["trotter-sweep", "--config", str(cfg), "--out", str(out)]) == 0
    rows = [ln for ln in out.read_text().splitlines()
            if ln and not ln.startswith(("#", "r,"))]
    assert [ln.split(",")[0] for ln in rows] == ["1", "10"]
    # flag beats file
    assert cli.main(["trotter-sweep", "--config", str(cfg), "--rs", "5",
                     "--out", str(out)]) == 0
    rows = [ln for ln in out.read_text().splitlines()
            if ln and not ln.startswith(("#", "r,"))]
    assert [ln.split(",")[0] for ln in rows] == ["5"]


def test_unknown_config_key_exits_3(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    out = tmp_path / "r.csv"
    assert cli.main(["omega-count", "--config", str(cfg), "--out", str(out)]) == 3
    assert "ERROR invalid config" in capsys.readouterr().err
    assert not out.exists()


def test_invalid_parameter_exits_3(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert cli.main(["omega-count", "--n", "9", "--out", str(out)]) == 3
    assert "ERROR invalid config" in capsys.readouterr().err


def test_bad_value_exits_3(tmp_path, capsys):
    out = tmp_path / "r.csv"
    assert cli.main(["trotter-sweep", "--rs", "ten", "--out", str(out)]) == 3


def test_unknown_command_exits_2(capsys):
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_check_failure_exits_1(tmp_path, capsys):
    out = tmp_path / "r.csv"
    code = cli.main(["train-cqp", "--iterations", "1", "--require-fidelity", "0.999",
                     "--out", str(out)])
    assert code == 1
    printed = capsys.readouterr().out
    assert printed.startswith("FAIL train-converged")
    assert not out.exists()


def test_decompose_netlist_sections(tmp_path):
    out = tmp_path / "netlist.txt"
    assert _run("decompose", out) == 0
    lines = out.read_text().splitlines()
    assert any(ln.startswith("# two-level factors") for ln in lines)
    assert any(ln.startswith("# compiled circuit") for ln in lines)
    assert any(ln.startswith("twolevel ") for ln in lines)


def test_train_cqp_reaches_target_by_default(tmp_path):
    out = tmp_path / "train.csv"
    assert cli.main(["train-cqp", "--out", str(out)]) == 0
    rows = out.read_text().splitlines()
    fid = [float(ln.split(",")[1]) for ln in rows[1:] if not ln.startswith("#")]
    assert fid[-1] >= 0.99
    assert all(b >= a - 1e-12 for a, b in zip(fid, fid[1:]))


def test_default_output_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert cli.main(["omega-count", "--n", "1"]) == 0
    assert (tmp_path / "omega-count.csv").exists()
