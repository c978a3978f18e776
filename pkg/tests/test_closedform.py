"""Closed-form geodesic families: constant-coordinate, Cartesian, parametric."""
from __future__ import annotations

import numpy as np
import pytest

from adsgeo import algebra, closedform, hamiltonian, horizontality
from adsgeo.closedform import (
    CartesianGeodesicSpec,
    ConstGeodesicSpec,
    ParametricGeodesicSpec,
)
from adsgeo.hamiltonian import ChartPhaseState, IntegratorConfig, PhaseState
from adsgeo.horizontality import Distribution
from adsgeo.errors import NormalizationError, UnsupportedCase

TX = Distribution.SPAN_TX
XY = Distribution.SPAN_XY


# ---------------------------------------------------------------------------
# constant-coordinate families


CONST_SPECS = [
    ConstGeodesicSpec(TX, "timelike", psi=0.7),
    ConstGeodesicSpec(TX, "spacelike", psi=0.7),
    ConstGeodesicSpec(TX, "lightlike", sign_alpha=1, sign_beta=1),
    ConstGeodesicSpec(TX, "lightlike", sign_alpha=1, sign_beta=-1),
    ConstGeodesicSpec(XY, "spacelike", psi=0.45),
]


@pytest.mark.parametrize("spec", CONST_SPECS, ids=lambda s: f"{s.distribution.value}-{s.causal}")
def test_const_geodesic_invariants(spec: ConstGeodesicSpec):
    grid = np.linspace(0.0, 2.0, 101)
    t = closedform.sample_const_geodesic(spec, grid)
    assert np.max(np.abs(t.diagnostics["manifold_residual"])) < 1e-12
    assert np.max(np.abs(t.diagnostics["horiz_residual"])) < 1e-12
    # momentum scalars stay constant along the closed form
    scal = np.array(
        [hamiltonian.momentum_scalars(t.points[k], t.momenta[k]) for k in range(len(t))]
    )
    assert np.max(np.abs(scal - scal[0])) < 1e-11
    # velocities match a central finite difference of the points
    h = 1e-6
    for s in (0.3, 1.1):
        fd = (closedform.const_geodesic(spec, s + h) - closedform.const_geodesic(spec, s - h)) / (2 * h)
        assert np.max(np.abs(closedform.const_geodesic_velocity(spec, s) - fd)) < 1e-9


@pytest.mark.parametrize("spec", CONST_SPECS, ids=lambda s: f"{s.distribution.value}-{s.causal}")
def test_const_geodesic_causal_class(spec: ConstGeodesicSpec):
    x = closedform.const_geodesic(spec, 0.7)
    v = closedform.const_geodesic_velocity(spec, 0.7)
    assert horizontality.classify(x, v).kind == spec.causal


def test_const_geodesic_starts_at_identity():
    for spec in CONST_SPECS:
        assert np.allclose(closedform.const_geodesic(spec, 0.0), algebra.IDENTITY, atol=1e-15)


def test_const_xy_timelike_unsupported():
    # the span{X, Y} horizontal metric is positive definite
    with pytest.raises(UnsupportedCase):
        closedform.const_geodesic(ConstGeodesicSpec(XY, "timelike", psi=0.7), 0.0)


@pytest.mark.parametrize("dist", [TX, XY], ids=["tx", "xy"])
def test_vertical_line_is_vertical(dist: Distribution):
    grid = np.linspace(0.0, 2.0, 101)
    t = closedform.sample_vertical_line(dist, grid)
    assert np.max(np.abs(t.diagnostics["manifold_residual"])) < 1e-12
    # velocity has no horizontal part and unit vertical component
    for k in (0, 50, 100):
        a, b = horizontality.horizontal_coords(t.points[k], t.velocities[k], dist)
        assert abs(a) < 1e-12 and abs(b) < 1e-12
        res = horizontality.horizontality_residual(t.points[k], t.velocities[k], dist)
        assert abs(res) == pytest.approx(1.0, abs=1e-12)


# ---------------------------------------------------------------------------
# Cartesian span{T, X} family


TX_SPECS = [
    CartesianGeodesicSpec(A=0.0, B=-2.0, C=1.0, D=1.0),     # A - B = 2
    CartesianGeodesicSpec(A=3.0, B=0.5, C=2.0, D=0.5),      # A - B > 2
    CartesianGeodesicSpec(A=-0.5, B=-3.0, C=-1.0, D=-1.0),  # A - B > 2, negative C, D
    CartesianGeodesicSpec(A=1.0, B=-3.0, C=4.0, D=0.25),    # A - B > 2, asymmetric C, D
]


@pytest.mark.parametrize("spec", TX_SPECS, ids=lambda s: f"A{s.A}-B{s.B}")
def test_cartesian_tx_invariants(spec: CartesianGeodesicSpec):
    grid = np.linspace(0.0, 1.5, 61)
    t = closedform.sample_cartesian_geodesic_tx(spec, grid)
    # curves grow like e^{mu s}; scale tolerances by the largest sample
    scale = 1.0 + float(np.max(np.abs(t.points))) ** 2
    assert np.max(np.abs(t.diagnostics["manifold_residual"])) < 1e-12 * scale
    assert np.max(np.abs(t.diagnostics["horiz_residual"])) < 1e-12 * scale
    assert np.allclose(t.points[0], algebra.IDENTITY, atol=1e-14)
    # the four bilinear invariants reproduce the defining parameters
    vals = np.array(
        [closedform.first_integrals_tx(PhaseState(t.points[k], t.momenta[k])) for k in range(len(t))]
    )
    assert np.max(np.abs(vals - [spec.A, spec.B, spec.C, spec.D])) < 1e-10 * scale


@pytest.mark.parametrize("spec", TX_SPECS, ids=lambda s: f"A{s.A}-B{s.B}")
def test_cartesian_tx_matches_hamiltonian_flow(spec: CartesianGeodesicSpec):
    grid = np.linspace(0.0, 1.5, 61)
    ref = closedform.sample_cartesian_geodesic_tx(spec, grid)
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 1.5), record_every=25)
    t = hamiltonian.integrate(PhaseState.make(ref.points[0], ref.momenta[0]), TX, cfg)
    assert np.allclose(t.params, grid, atol=1e-12)
    scale = 1.0 + float(np.max(np.abs(ref.points))) ** 2
    assert np.max(np.abs(t.points - ref.points)) < 1e-9 * scale


def test_cartesian_tx_momentum_at_zero():
    # xi(0) = (A+B, C+D, C-D, A-B) / 2 links the invariants to initial data
    spec = TX_SPECS[1]
    t = closedform.sample_cartesian_geodesic_tx(spec, np.array([0.0, 0.1]))
    want = 0.5 * np.array(
        [spec.A + spec.B, spec.C + spec.D, spec.C - spec.D, spec.A - spec.B]
    )
    assert np.allclose(t.momenta[0], want, atol=1e-12)


def test_cartesian_tx_case_restrictions():
    grid = np.linspace(0.0, 1.0, 11)
    # oscillatory range |A - B| < 2: no implemented closed form
    with pytest.raises(UnsupportedCase):
        closedform.sample_cartesian_geodesic_tx(
            CartesianGeodesicSpec(A=1.0, B=1.0, C=2.0, D=0.5), grid
        )
    # only the A - B = +2 parabolic family is covered, not its mirror
    with pytest.raises(UnsupportedCase):
        closedform.sample_cartesian_geodesic_tx(
            CartesianGeodesicSpec(A=0.0, B=2.0, C=1.0, D=1.0), grid
        )
    with pytest.raises(NormalizationError):
        closedform.sample_cartesian_geodesic_tx(
            CartesianGeodesicSpec(A=3.0, B=0.5, C=2.0, D=0.7), grid
        )


# ---------------------------------------------------------------------------
# Cartesian span{X, Y} family


XY_SPECS = [
    (2.0, 1.0, 0.0),
    (0.5, 0.6, 0.8),
    (1.0, 0.0, 1.0),   # |B| = 1 boundary between trigonometric and hyperbolic
    (-1.0, 1.0, 0.0),
    (0.0, 0.6, -0.8),
]


@pytest.mark.parametrize("bcd", XY_SPECS, ids=lambda p: f"B{p[0]}")
def test_cartesian_xy_invariants(bcd):
    B, C, D = bcd
    grid = np.linspace(0.0, 3.0, 61)
    t = closedform.sample_cartesian_geodesic_xy(B, C, D, grid)
    scale = 1.0 + float(np.max(np.abs(t.points))) ** 2
    assert np.max(np.abs(t.diagnostics["manifold_residual"])) < 1e-12 * scale
    assert np.max(np.abs(t.diagnostics["horiz_residual"])) < 1e-12 * scale
    vals = np.array(
        [closedform.first_integrals_xy(PhaseState(t.points[k], t.momenta[k])) for k in range(len(t))]
    )
    assert np.max(np.abs(vals - vals[0])) < 1e-9 * scale


@pytest.mark.parametrize("bcd", XY_SPECS[:3], ids=lambda p: f"B{p[0]}")
def test_cartesian_xy_matches_hamiltonian_flow(bcd):
    B, C, D = bcd
    grid = np.linspace(0.0, 3.0, 61)
    ref = closedform.sample_cartesian_geodesic_xy(B, C, D, grid)
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 3.0), record_every=50)
    t = hamiltonian.integrate(PhaseState.make(ref.points[0], ref.momenta[0]), XY, cfg)
    scale = 1.0 + float(np.max(np.abs(ref.points))) ** 2
    assert np.max(np.abs(t.points - ref.points)) < 1e-8 * scale


def test_cartesian_xy_normalization_guard():
    with pytest.raises(NormalizationError):
        closedform.sample_cartesian_geodesic_xy(0.5, 0.8, 0.8, np.linspace(0, 1, 11))


# ---------------------------------------------------------------------------
# parametric (chart-coordinate) families


PARAMETRIC_CASES = [
    ("timelike", 0.8, 0.8),   # |xi1| equals the phi-momentum
    ("timelike", 0.5, 0.9),   # xi1 dominates
    ("timelike", 0.9, 0.3),   # phi-momentum dominates
    ("spacelike", 0.7, 0.4),
    ("subriemannian", 0.8, 0.8),
    ("subriemannian", 0.5, 1.0),
    ("subriemannian", 0.9, 0.3),
]


@pytest.mark.parametrize(
    "chart,phi_dot0,chi2_dot", PARAMETRIC_CASES,
    ids=[f"{c}-{p}-{q}" for c, p, q in PARAMETRIC_CASES],
)
def test_parametric_matches_chart_flow(chart: str, phi_dot0: float, chi2_dot: float):
    """Closed-form chart curves agree with the integrated chart system."""
    spec = ParametricGeodesicSpec(
        chart=chart, phi_dot0=phi_dot0, chi2_dot=chi2_dot, chi2_0=0.05
    )
    s_end = 0.6 if chart == "timelike" else 0.9
    init = closedform.parametric_initial_state(spec)
    cfg = IntegratorConfig(step=5e-4, s_span=(0.0, s_end), record_every=20)
    flow = hamiltonian.integrate_chart(chart, init, cfg)
    ref = closedform.sample_parametric_geodesic(spec, flow.params)
    assert np.max(np.abs(flow.coords - ref)) < 1e-8


@pytest.mark.parametrize("chart", ["timelike", "spacelike", "subriemannian"])
def test_parametric_chart_state_consistency(chart: str):
    """parametric_chart_state agrees with the sampled curve and conserves H."""
    spec = ParametricGeodesicSpec(chart=chart, phi_dot0=0.6, chi2_dot=0.5, chi2_0=0.0)
    svals = np.array([0.0, 0.2, 0.4])
    curve = closedform.sample_parametric_geodesic(spec, svals)
    h_vals = []
    for k, s in enumerate(svals):
        st = closedform.parametric_chart_state(spec, float(s))
        assert np.max(np.abs(st.coords - curve[k])) < 1e-10
        h_vals.append(hamiltonian.chart_hamiltonian_value(chart, st))
    assert np.ptp(h_vals) < 1e-10
