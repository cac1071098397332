import json
import math
from pathlib import Path

import pytest

from rindler_resonance import cli, frontend
from rindler_resonance.errors import QuadratureError
from rindler_resonance.frontend import SweepConfig, run_point, run_sweep, run_verify
from rindler_resonance.shift import AtomPairConfig, delta_e_em_closed

DATA = Path(__file__).parent / "data"


def test_point_scalar_inertial(capsys):
    assert cli.main(["point", "--a", "0", "--z", "1", "--omega0", "1"]) == 0
    out = capsys.readouterr().out
    assert f"{-math.cos(1.0) / (16 * math.pi):.17g}" in out


def test_point_em_yy_matches_closed(capsys):
    res = run_point(AtomPairConfig(1.0, 0.0, 1.0, dipole_A=(0, 1, 0), dipole_B=(0, 1, 0)), "em")
    ref = delta_e_em_closed(AtomPairConfig(1.0, 0.0, 1.0, dipole_A=(0, 1, 0), dipole_B=(0, 1, 0)))
    assert res.value == ref.value
    assert "em" in capsys.readouterr().out


def test_point_scalar_oracle(capsys):
    assert cli.main(["point", "--a", "1", "--z", "1", "--omega0", "1", "--method", "oracle"]) == 0
    line = [l for l in capsys.readouterr().out.splitlines() if l.startswith("delta_e")][0]
    closed = -math.cos(2 * math.asinh(0.5)) / (16 * math.pi * math.sqrt(1.25))
    assert float(line.split()[1]) == pytest.approx(closed, rel=1e-3)


def test_sweep_row_count(tmp_path):
    out = tmp_path / "z.csv"
    assert cli.main(["sweep", "--vary", "z", "--start", "0.5", "--stop", "1", "--num-points", "2",
                     "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 3


def test_sweep_golden_and_deterministic(tmp_path):
    paths = []
    for name in ("a.csv", "b.csv"):
        sweep = SweepConfig("em", "z", 0.5, 2.0, 4, fixed={"omega0": 1.5, "a": 0.7,
                                                          "dipole_A": (1, 0, 0),
                                                          "dipole_B": (0, 0, 1)},
                            output_path=str(tmp_path / name))
        paths.append(Path(run_sweep(sweep)))
    data = paths[0].read_bytes()
    assert data == paths[1].read_bytes()
    assert data == (DATA / "golden_sweep_em.csv").read_bytes()
    assert b"\r" not in data


def test_sweep_schema():
    header = (DATA / "golden_sweep_em.csv").read_text().splitlines()[0]
    assert header == "varied_param,value,a,z,omega0,channel,state,method,delta_e,error_estimate"


def test_state_flip_changes_only_sign(tmp_path):
    rows = {}
    for state in ("sym", "antisym"):
        out = tmp_path / f"{state}.csv"
        cli.main(["sweep", "--vary", "omega0", "--start", "0.5", "--stop", "2", "--num-points", "3",
                  "--a", "1", "--state", state, "--out", str(out)])
        rows[state] = [l.split(",") for l in out.read_text().splitlines()[1:]]
    for s, t in zip(rows["sym"], rows["antisym"]):
        assert s[:6] == t[:6] and s[7] == t[7] and s[9] == t[9]
        assert (s[6], t[6]) == ("sym", "antisym")
        assert float(s[8]) == -float(t[8])


def test_log_a_sweep_first_row_is_inertial(tmp_path):
    out = tmp_path / "a.csv"
    cli.main(["sweep", "--vary", "a", "--start", "1e-6", "--stop", "10", "--num-points", "5",
              "--spacing", "log", "--z", "1.5", "--omega0", "0.8", "--out", str(out)])
    first = out.read_text().splitlines()[1].split(",")
    ref = -math.cos(0.8 * 1.5) / (16 * math.pi * 1.5)
    assert float(first[8]) == pytest.approx(ref, rel=1e-6)


def test_concurrent_sweep_keeps_grid_order(tmp_path):
    kw = dict(fixed={"a": 1.0}, methods=("closed_form", "oracle"))
    one = SweepConfig("scalar", "z", 0.5, 1.5, 3, output_path=str(tmp_path / "1.csv"), **kw)
    many = SweepConfig("scalar", "z", 0.5, 1.5, 3, output_path=str(tmp_path / "2.csv"), **kw)
    assert Path(run_sweep(one)).read_bytes() == Path(run_sweep(many, workers=3)).read_bytes()


def test_unwritable_path_fails_before_computing(tmp_path, monkeypatch):
    called = []
    monkeypatch.setattr(frontend, "evaluate", lambda *a, **k: called.append(1))
    code = cli.main(["sweep", "--vary", "z", "--start", "1", "--stop", "2", "--num-points", "2",
                     "--out", str(tmp_path / "missing" / "x.csv")])
    assert code == 2 and not called


@pytest.mark.parametrize("argv", [
    ["point", "--z", "-1"],
    ["point", "--omega0", "0"],
    ["sweep", "--vary", "z", "--start", "2", "--stop", "1", "--num-points", "3"],
    ["sweep", "--vary", "a", "--start", "0", "--stop", "1", "--num-points", "3", "--spacing", "log"],
    ["sweep", "--vary", "z", "--start", "1", "--stop", "2", "--num-points", "1"],
    ["sweep", "--vary", "z"],
    ["point", "--config", "/nonexistent/config.json"],
])
def test_input_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2
    assert "input error" in capsys.readouterr().err


def test_bad_flag_values_exit_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["point", "--dipole-a", "1,2"])
    assert info.value.code == 2


def test_config_file(tmp_path, capsys):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"channel": "em", "a": 0.0, "z": 1.0, "omega0": 1.0,
                                "dipole_a": [0, 1, 0], "dipole_b": [0, 1, 0]}))
    assert cli.main(["point", "--config", str(conf)]) == 0
    ref = delta_e_em_closed(AtomPairConfig(1.0, 0.0, 1.0, dipole_A=(0, 1, 0), dipole_B=(0, 1, 0)))
    assert f"{ref.value:.17g}" in capsys.readouterr().out
    conf.write_text(json.dumps({"colour": "blue"}))
    assert cli.main(["point", "--config", str(conf)]) == 2


def test_numerical_failure_exit_3(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise QuadratureError("no convergence", context="scalar shift omega integral")
    monkeypatch.setattr(frontend, "evaluate", boom)
    assert cli.main(["point"]) == 3
    assert "scalar shift omega integral" in capsys.readouterr().err


def test_verify_negative_control():
    report = run_verify({"a": [0.5], "omega0": [1.0], "z": [1.0]}, tolerance_override=1e-15,
                        sections=["scalar_shift"])
    assert not report.passed
    assert report.failures()


def test_verify_inertial_grid_frame_checks():
    report = run_verify({"a": [0.0]}, sections=["scalar_chi", "scalar_shift"])
    inertial = [r for r in report.records if r.name.endswith("inertial_form")]
    assert inertial and all(r.passed and r.tolerance == 1e-8 for r in inertial)
    assert report.passed


def test_verify_cli_exit_codes_and_json(tmp_path, monkeypatch, capsys):
    target = tmp_path / "r.json"
    code = cli.main(["verify", "--grid", '{"a": [0.5], "omega": [1.0], "omega0": [1.0], "z": [1.0]}',
                     "--json", str(target)])
    data = json.loads(target.read_text())
    assert code == (0 if data["passed"] else 1)
    assert {"name", "point", "reference", "computed", "rel_error", "passed", "runtime"} <= set(
        data["records"][0])
    assert "overall" in capsys.readouterr().out
    code = cli.main(["verify", "--grid", '{"a": [0.5], "omega": [1.0], "omega0": [1.0], "z": [1.0]}',
                     "--tolerance", "1e-15"])
    assert code == 1


def test_sweep_config_validation():
    from rindler_resonance.errors import DomainError
    with pytest.raises(DomainError):
        SweepConfig("scalar", "z", 1.0, 2.0, 3, methods=("guess",))
    with pytest.raises(DomainError):
        SweepConfig("scalar", "q", 1.0, 2.0, 3)
    with pytest.raises(DomainError):
        SweepConfig("scalar", "a", 1.0, 2.0, 3, fixed={"z": -1.0})


def test_golden_values_agree_with_oracle():
    from rindler_resonance.shift import delta_e_em_oracle
    row = (DATA / "golden_sweep_em.csv").read_text().splitlines()[2].split(",")
    cfg = AtomPairConfig(float(row[4]), float(row[2]), float(row[3]),
                         dipole_A=(1, 0, 0), dipole_B=(0, 0, 1))
    assert delta_e_em_oracle(cfg).value == pytest.approx(float(row[8]), rel=1e-5)
