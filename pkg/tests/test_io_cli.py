"""Trajectory file formats and the command-line interface."""
from __future__ import annotations

import io as io_module
import json
import subprocess
import sys

import numpy as np
import pytest

from adsgeo import connectivity, hamiltonian, io
from adsgeo.charts import GlobalChartPoint
from adsgeo.hamiltonian import IntegratorConfig, PhaseState
from adsgeo.horizontality import Distribution

TX = Distribution.SPAN_TX

EXPECTED_HEADER = (
    "s,x1,x2,x3,x4,xi1,xi2,xi3,xi4,H,manifold_residual,horiz_residual,"
    "hcoord1,hcoord2"
)


def short_flow() -> "hamiltonian.Trajectory":
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])
    cfg = IntegratorConfig(step=1e-2, s_span=(0.0, 0.5), record_every=5)
    return hamiltonian.integrate(
        PhaseState.make([1.0, 0.0, 0.0, 0.0], xi0), TX, cfg
    )


def test_csv_header_and_roundtrip(tmp_path):
    t = short_flow()
    path = tmp_path / "flow.csv"
    io.write_csv(path, t, dist=TX)
    first = path.read_text().splitlines()[0]
    assert first == EXPECTED_HEADER
    t2 = io.read_csv(path)
    # 17 significant digits round-trip doubles exactly
    assert np.array_equal(t2.params, t.params)
    assert np.array_equal(t2.points, t.points)
    assert np.array_equal(t2.momenta, t.momenta)
    for key in ("H", "manifold_residual", "horiz_residual", "hcoord1", "hcoord2"):
        assert np.array_equal(t2.diagnostics[key], t.diagnostics[key])


def test_csv_accepts_file_objects():
    t = short_flow()
    buf = io_module.StringIO()
    io.write_csv(buf, t, dist=TX)
    buf.seek(0)
    t2 = io.read_csv(buf)
    assert np.array_equal(t2.points, t.points)


def test_csv_without_momenta(tmp_path):
    t = connectivity.connect_tx(
        GlobalChartPoint(0.3, 0.6, 0.5), GlobalChartPoint(1.1, 1.9, 0.9), n=33
    )
    path = tmp_path / "conn.csv"
    io.write_csv(path, t, dist=TX)
    t2 = io.read_csv(path)
    assert t2.momenta is None
    assert np.array_equal(t2.points, t.points)


def test_csv_rejects_foreign_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ValueError):
        io.read_csv(path)


def test_json_roundtrip(tmp_path):
    t = short_flow()
    path = tmp_path / "flow.json"
    io.write_json(path, t, dist=TX, command="test", params={"k": 1})
    meta, t2 = io.read_json(path)
    assert meta["command"] == "test"
    assert meta["params"] == {"k": 1}
    assert meta["version"] == io.package_version()
    assert np.array_equal(t2.params, t.params)
    assert np.array_equal(t2.points, t.points)
    assert np.array_equal(t2.momenta, t.momenta)


# ---------------------------------------------------------------------------
# command-line interface


def run_cli(*args: str, check: bool = True) -> subprocess.CompletedProcess:
    proc = subprocess.run(
        [sys.executable, "-m", "adsgeo", *args],
        capture_output=True,
        text=True,
    )
    if check and proc.returncode != 0:
        raise AssertionError(
            f"cli failed ({proc.returncode}):\n{proc.stderr}"
        )
    return proc


def test_cli_geodesic_csv_stdout():
    proc = run_cli(
        "geodesic", "--family", "const", "--distribution", "tx",
        "--causal", "timelike", "--psi", "0.7",
        "--s-end", "1.0", "--samples", "11", "--output", "-",
    )
    lines = proc.stdout.strip().splitlines()
    assert lines[0] == EXPECTED_HEADER
    assert len(lines) == 12
    # first sample is the identity with momenta (0, cosh, sinh, 0)
    row = [float(v) for v in lines[1].split(",")]
    assert row[1:5] == pytest.approx([1.0, 0.0, 0.0, 0.0], abs=1e-15)
    assert row[5:9] == pytest.approx(
        [0.0, np.cosh(0.7), np.sinh(0.7), 0.0], abs=1e-15
    )


def test_cli_integrate_matches_geodesic(tmp_path):
    """Integrating the constant-family momenta reproduces the closed form."""
    f_geo = tmp_path / "geo.csv"
    f_int = tmp_path / "int.csv"
    run_cli(
        "geodesic", "--family", "const", "--distribution", "tx",
        "--causal", "timelike", "--psi", "0.7",
        "--s-end", "1.0", "--samples", "11", "-o", str(f_geo),
    )
    run_cli(
        "integrate", "--distribution", "tx",
        "--xi0", "0", str(np.cosh(0.7)), str(np.sinh(0.7)), "0",
        "--step", "1e-3", "--record-every", "100",
        "--s-end", "1.0", "-o", str(f_int),
    )
    t_geo = io.read_csv(f_geo)
    t_int = io.read_csv(f_int)
    assert np.allclose(t_geo.params, t_int.params, atol=1e-12)
    assert np.max(np.abs(t_geo.points - t_int.points)) < 1e-8


def test_cli_integrate_chart_json():
    proc = run_cli(
        "integrate", "--chart", "timelike",
        "--coords0", "0", "0", "0.1", "--momenta0", "0.8", "0.3", "0",
        "--step", "1e-2", "--s-end", "0.5", "--format", "json", "-o", "-",
    )
    doc = json.loads(proc.stdout)
    assert doc["meta"]["command"] == "integrate"
    assert len(doc["samples"]) == 51


def test_cli_connect_and_degenerate_exit():
    proc = run_cli(
        "connect", "--method", "tx",
        "--p", "0.3", "0.6", "0.5", "--q", "1.1", "1.9", "0.9", "-o", "-",
    )
    assert proc.stdout.splitlines()[0] == EXPECTED_HEADER
    # equal-phi pair: typed failure, machine-readable reason, exit 1
    bad = run_cli(
        "connect", "--method", "tx",
        "--p", "0.3", "0.6", "0.5", "--q", "0.3", "1.9", "0.9", "-o", "-",
        check=False,
    )
    assert bad.returncode == 1
    err = json.loads(bad.stderr)
    assert err["error"] == "DegenerateConfiguration"


def test_cli_usage_error_exit_code():
    proc = run_cli("geodesic", "--family", "nope", check=False)
    assert proc.returncode == 2


def test_cli_verify_passes_and_negative_control():
    proc = run_cli("verify", "--gram-points", "50")
    lines = [l for l in proc.stdout.splitlines() if l.startswith("[")]
    assert lines and all(l.startswith("[PASS]") for l in lines)
    bad = run_cli(
        "verify", "--gram-points", "50", "--inject-perturbation", "1e-4",
        check=False,
    )
    assert bad.returncode == 1
    assert "[FAIL]" in bad.stdout


def test_cli_sweep_sequential(tmp_path):
    out = tmp_path / "sweep.csv"
    run_cli(
        "sweep", "--task", "bridge", "--values", "9", "17", "33",
        "--jobs", "1", "-o", str(out),
    )
    rows = out.read_text().strip().splitlines()
    assert len(rows) == 4  # header + one row per value
