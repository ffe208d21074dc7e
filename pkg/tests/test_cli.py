"""End-to-end tests of the command-line front end.

Commands are driven through main() directly; file outputs land in pytest
tmp_path.  Exit-code contract: 0 success, 2 configuration error, 3
numerical failure, 4 partial comparison report.
"""

import json

import numpy as np
import pytest

from shockdecay.cli import main
from shockdecay.transport import CSV_HEADER


def test_no_command_prints_usage():
    assert main([]) == 2


def test_unknown_command_is_config_error():
    assert main(["frobnicate"]) == 2


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == 0
    out = capsys.readouterr().out
    for name in ("evolve", "asymptote", "table1", "compare-methods", "fit-shock", "ccw"):
        assert name in out


def test_evolve_writes_history(tmp_path, capsys):
    out = tmp_path / "hist.csv"
    code = main(
        ["evolve", "--h", "0.32", "--k", "10", "--x-end", "100", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    first = lines[1].split(",")
    assert float(first[0]) == 1.0
    assert float(first[1]) == 0.32
    assert float(first[2]) == 10.0
    # The reported strength error at x = 100 for this standard data set.
    data = np.genfromtxt(out, delimiter=",", names=True)
    row = data[data["x"] == 100.0]
    assert row["p_err"][0] == pytest.approx(4.6478939499635177e-05, rel=1e-10)
    assert "decay" in capsys.readouterr().out


def test_evolve_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        assert main(["evolve", "--geometry", "spherical", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_evolve_breakdown_note(capsys):
    assert main(["evolve", "--h", "0.1", "--k", "-1"]) == 0
    out = capsys.readouterr().out
    assert "breakdown" in out
    assert "1.8333333" in out


def test_evolve_rejects_bad_flags(tmp_path):
    assert main(["evolve", "--x-end", "-5"]) == 2
    assert main(["evolve", "--geometry", "toroidal"]) == 2
    assert main(["evolve", "--gamma", "0.8"]) == 2
    assert main(["evolve", "--samples", "1"]) == 2
    missing_dir = tmp_path / "no" / "such" / "dir" / "x.csv"
    assert main(["evolve", "--out", str(missing_dir)]) == 2


def test_asymptote_requires_growth_data(tmp_path):
    assert main(["asymptote", "--k", "-1"]) == 2
    out = tmp_path / "asym.csv"
    assert main(["asymptote", "--k", "2", "--out", str(out)]) == 0
    data = np.genfromtxt(out, delimiter=",", names=True)
    assert data["x"][0] >= 2.0


def test_table1_reports_both_sets(tmp_path, capsys):
    out = tmp_path / "table.csv"
    assert main(["table1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "h = 0.32, k = 10.0" in printed
    assert "h = 0.32, k = 0.28" in printed
    data = np.genfromtxt(out, delimiter=",", names=True)
    assert data.shape == (26,)
    assert set(data["k"]) == {10.0, 0.28}


def test_fit_shock_csv(tmp_path):
    out = tmp_path / "fit.csv"
    code = main(
        ["fit-shock", "--v0", "0.1", "--x-end", "1e4", "--samples", "50", "--out", str(out)]
    )
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "x,tau_minus,u_jump,ux_jump,shock_time,u_asym,ux_asym"
    assert len(lines) == 51
    data = np.genfromtxt(out, delimiter=",", names=True)
    # Late samples sit close to the reference decay law.
    assert data["u_jump"][-1] == pytest.approx(data["u_asym"][-1], rel=0.02)


def test_fit_shock_zero_pulse_is_numerical_failure():
    assert main(["fit-shock", "--v0", "0"]) == 3


def test_fit_shock_ramp_pulse(tmp_path):
    out = tmp_path / "ramp.csv"
    assert main(["fit-shock", "--pulse", "ramp", "--v0", "0.2", "--out", str(out)]) == 0


def test_fit_shock_table_pulse(tmp_path):
    taus = np.linspace(0.0, 1.0, 60)
    pulse_file = tmp_path / "pulse.csv"
    with open(pulse_file, "w") as fh:
        fh.write("tau,v\n")
        for t in taus:
            fh.write(f"{t},{0.05 * np.sin(np.pi * t)}\n")
    out = tmp_path / "fit.csv"
    code = main(
        ["fit-shock", "--pulse", "table", "--pulse-file", str(pulse_file), "--out", str(out)]
    )
    assert code == 0
    assert main(["fit-shock", "--pulse", "table"]) == 2  # no file given


def test_ccw_command(tmp_path):
    out = tmp_path / "ccw.csv"
    code = main(
        ["ccw", "--u0", "1.5", "--geometry", "spherical", "--variant", "classic",
         "--out", str(out)]
    )
    assert code == 0
    data = np.genfromtxt(out, delimiter=",", names=True)
    assert data["U"][0] == 1.5
    assert np.all(np.diff(data["U"]) < 0.0)
    assert main(["ccw", "--u0", "0.9"]) == 2


def test_compare_methods_report(tmp_path):
    report_path = tmp_path / "report.json"
    out_dir = tmp_path / "csv"
    code = main(
        [
            "compare-methods",
            "--geometry",
            "planar",
            "--x-end",
            "1e4",
            "--report",
            str(report_path),
            "--out-dir",
            str(out_dir),
        ]
    )
    assert code == 0
    report = json.loads(report_path.read_text())
    assert report["status"] == "ok"
    entry = report["geometries"]["planar"]
    assert entry["pairs"]["precursor_gap"] < 0.02
    assert entry["pairs"]["acoustic_gap"] < 0.02
    assert 70.0 < entry["simple_wave"]["quadratic_ratio"] < 130.0
    for name in (
        "transport_precursor_planar.csv",
        "transport_acoustic_planar.csv",
        "wngo_planar.csv",
        "ccw_generalized_planar.csv",
        "ccw_classic_planar.csv",
    ):
        assert (out_dir / name).exists()


def test_compare_methods_rejects_strong_data():
    assert main(["compare-methods", "--h", "0.5"]) == 2
    assert main(["compare-methods", "--h", "-0.01"]) == 2
    assert main(["compare-methods", "--k", "-1"]) == 2


def test_compare_methods_partial_failure(tmp_path, capsys):
    # An x_end too small for any asymptotic window sinks the wavelet-fit
    # pipeline; the command must still emit a report and flag it partial.
    report_path = tmp_path / "partial.json"
    code = main(
        ["compare-methods", "--geometry", "planar", "--x-end", "30",
         "--report", str(report_path)]
    )
    assert code == 4
    report = json.loads(report_path.read_text())
    assert report["status"] == "partial"
    assert report["geometries"]["planar"]["wngo"]["status"] == "failed"
    assert "precursor_gap" not in report["geometries"]["planar"]["pairs"]


def test_compare_methods_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(
            ["compare-methods", "--geometry", "cylindrical", "--x-end", "1e4",
             "--report", str(path)]
        ) == 0
    assert a.read_bytes() == b.read_bytes()


def test_config_file_merging(tmp_path):
    config = tmp_path / "run.ini"
    config.write_text("[run]\nh = 0.2\nk = 5\ngeometry = cylindrical\n")
    out = tmp_path / "from_config.csv"
    assert main(["evolve", "--config", str(config), "--out", str(out)]) == 0
    data = np.genfromtxt(out, delimiter=",", names=True)
    assert data["p_jump"][0] == 0.2
    assert data["px_jump"][0] == 5.0
    # Flags win over file values.
    out2 = tmp_path / "flag_wins.csv"
    assert main(
        ["evolve", "--config", str(config), "--h", "0.3", "--out", str(out2)]
    ) == 0
    data2 = np.genfromtxt(out2, delimiter=",", names=True)
    assert data2["p_jump"][0] == 0.3
    assert data2["px_jump"][0] == 5.0


def test_config_file_pulse_section(tmp_path):
    config = tmp_path / "pulse.ini"
    config.write_text("[pulse]\nshape = half-sine\nv0 = 0.08\ntau0 = 2.0\n")
    out = tmp_path / "fit.csv"
    assert main(["fit-shock", "--config", str(config), "--out", str(out)]) == 0


def test_config_file_errors(tmp_path):
    assert main(["evolve", "--config", str(tmp_path / "absent.ini")]) == 2
    bad = tmp_path / "bad.ini"
    bad.write_text("[run\nh = oops")
    assert main(["evolve", "--config", str(bad)]) == 2
    nonnumeric = tmp_path / "nonnumeric.ini"
    nonnumeric.write_text("[run]\nh = abc\n")
    assert main(["evolve", "--config", str(nonnumeric)]) == 2
