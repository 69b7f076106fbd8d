"""Tests for the sweep-figure renderer.

The renderer is exercised against hand-written CSVs and against real output
of the `ltv-experiment` command-line tool, which is the only interface the
figure script shares with the computation package.
"""

import subprocess
import sys

import pytest

from plot import MissingColumnError, PlotSpec, main, parse_spec, render

SYNTHETIC_HEADER = "u_measure,ratio,general_bound,r_inf_bound,necessary_level"


def _write(path, lines):
    path.write_text("\n".join(lines) + "\n")


def test_header_only_csv_warns_but_renders(tmp_path):
    src = tmp_path / "empty.csv"
    _write(src, [SYNTHETIC_HEADER])
    out = tmp_path / "empty.png"
    with pytest.warns(UserWarning, match="no data rows"):
        result = render(PlotSpec(str(src), str(out), ("general_bound",)))
    assert out.exists() and out.stat().st_size > 0
    assert result.scatter_points == 0 and result.curves == []


def test_scatter_stays_below_bound_curve(tmp_path):
    src = tmp_path / "synthetic.csv"
    _write(
        src,
        [
            SYNTHETIC_HEADER,
            "0.25,0.01,0.5,0.6,0.2",
            "0.25,0.02,0.5,0.6,0.2",
            "1.0,0.05,1.0,1.2,0.5",
            "1.0,0.04,1.0,1.2,0.5",
            "2.0,0.09,1.5,1.8,0.9",
        ],
    )
    out = tmp_path / "synthetic.png"
    result = render(PlotSpec(str(src), str(out), ("general_bound",)))
    assert result.scatter_points == 5
    (name, xs, ys) = result.curves[0]
    assert name == "general_bound"
    curve = dict(zip(xs, ys))
    for line in src.read_text().splitlines()[1:]:
        u, ratio, bound = map(float, line.split(",")[:3])
        assert ratio < curve[u]


def test_default_run_output_renders_all_curves(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    subprocess.run(
        [
            "ltv-experiment", "--k-grid", "4", "--trials", "2",
            "--subdiv", "2", "--seed", "3", "--out", str(csv_path),
        ],
        check=True,
    )
    out = tmp_path / "sweep.png"
    result = render(PlotSpec(str(csv_path), str(out)))
    assert out.exists()
    assert result.scatter_points == 14  # 7 support sizes x 2 trials
    assert len(result.curves) >= 3
    assert {name for name, _, _ in result.curves} >= {
        "general_bound", "r_inf_bound", "necessary_level",
    }


def test_missing_column_is_a_named_error(tmp_path):
    src = tmp_path / "short.csv"
    _write(src, ["u_measure,ratio", "0.5,0.01"])
    out = tmp_path / "short.png"
    with pytest.raises(MissingColumnError):
        render(PlotSpec(str(src), str(out), ("general_bound",)))
    code = main(["--in", str(src), "--out", str(out), "--bounds", "general_bound"])
    assert code == 1


def test_cli_round_trip_and_determinism(tmp_path):
    src = tmp_path / "tiny.csv"
    _write(src, [SYNTHETIC_HEADER, "0.5,0.02,0.7,0.9,0.3", "1.5,0.06,1.3,1.6,0.7"])
    out_a = tmp_path / "a.png"
    out_b = tmp_path / "b.png"
    argv = ["--in", str(src), "--out", str(out_a), "--bounds",
            "general_bound,r_inf_bound", "--log-y"]
    assert main(argv) == 0
    spec = parse_spec(argv)
    assert spec.log_y and spec.bounds == ("general_bound", "r_inf_bound")
    assert main(["--in", str(src), "--out", str(out_b), "--bounds",
                 "general_bound,r_inf_bound", "--log-y"]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()


def test_unreadable_input_exits_two(tmp_path):
    code = main(["--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "x.png")])
    assert code == 2
