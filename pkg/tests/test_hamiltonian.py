"""Hamiltonian flows: vector fields, conservation, chart systems, diagnostics."""
from __future__ import annotations

import numpy as np
import pytest

from adsgeo import algebra, closedform, hamiltonian
from adsgeo.hamiltonian import ChartPhaseState, IntegratorConfig, PhaseState
from adsgeo.horizontality import Distribution
from adsgeo.errors import DiagnosticBreach, NotHorizontal

TX = Distribution.SPAN_TX
XY = Distribution.SPAN_XY

E = algebra.IDENTITY.astype(float)


def test_momentum_scalars_at_identity():
    xi = np.array([0.4, -1.2, 0.9, 2.0])
    sc = hamiltonian.momentum_scalars(E, xi)
    # at the identity the frame is the coordinate basis (N, T, X, Y)
    assert sc.tau == pytest.approx(-1.2)
    assert sc.sigma == pytest.approx(0.9)
    assert sc.kappa == pytest.approx(2.0)
    assert sc.nu == pytest.approx(0.4)


def test_hamiltonian_values():
    xi = np.array([0.4, -1.2, 0.9, 2.0])
    st = PhaseState(E, xi)
    assert hamiltonian.hamiltonian_value(st, TX) == pytest.approx(
        0.5 * (0.9**2 - 1.2**2)
    )
    assert hamiltonian.hamiltonian_value(st, XY) == pytest.approx(
        0.5 * (0.9**2 + 2.0**2)
    )


@pytest.mark.parametrize("dist", [TX, XY], ids=["tx", "xy"])
def test_vector_field_position_part(dist: Distribution):
    """x' is the horizontal combination of frame fields picked by the scalars."""
    rng = np.random.default_rng(0)
    from test_algebra import random_point

    x = random_point(rng)
    xi = rng.uniform(-1.0, 1.0, size=4)
    sc = hamiltonian.momentum_scalars(x, xi)
    field = hamiltonian.vector_field(PhaseState(x, xi), dist)
    if dist is TX:
        want = -sc.tau * (x @ algebra.J) + sc.sigma * (x @ algebra.E1)
    else:
        want = sc.sigma * (x @ algebra.E1) + sc.kappa * (x @ algebra.E2)
    assert np.max(np.abs(field.x - want)) < 1e-12


@pytest.mark.parametrize("dist", [TX, XY], ids=["tx", "xy"])
def test_vector_field_is_canonical(dist: Distribution):
    """(x', xi') matches central differences of H in (xi, x)."""
    rng = np.random.default_rng(1)
    from test_algebra import random_point

    x = random_point(rng)
    xi = rng.uniform(-1.0, 1.0, size=4)
    field = hamiltonian.vector_field(PhaseState(x, xi), dist)
    h = 1e-6
    for i in range(4):
        dxi = np.zeros(4)
        dxi[i] = h
        dH = (
            hamiltonian.hamiltonian_value(PhaseState(x, xi + dxi), dist)
            - hamiltonian.hamiltonian_value(PhaseState(x, xi - dxi), dist)
        ) / (2 * h)
        assert field.x[i] == pytest.approx(dH, abs=1e-8)  # x' = dH/dxi
        dx = np.zeros(4)
        dx[i] = h
        dH = (
            hamiltonian.hamiltonian_value(PhaseState(x + dx, xi), dist)
            - hamiltonian.hamiltonian_value(PhaseState(x - dx, xi), dist)
        ) / (2 * h)
        assert field.xi[i] == pytest.approx(-dH, abs=1e-8)  # xi' = -dH/dx


@pytest.mark.parametrize(
    "dist,xi0",
    [
        (TX, np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])),
        (XY, np.array([0.0, 2.0, np.cos(0.4), np.sin(0.4)])),
    ],
    ids=["tx", "xy"],
)
def test_integrate_conserves_everything(dist: Distribution, xi0: np.ndarray):
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 5.0), record_every=20)
    t = hamiltonian.integrate(PhaseState.make(E, xi0), dist, cfg)
    assert np.max(np.abs(t.diagnostics["H_drift"])) < 1e-10
    assert np.max(np.abs(t.diagnostics["manifold_residual"])) < 1e-10
    assert np.max(np.abs(t.diagnostics["horiz_residual"])) < 1e-10
    # the complementary momentum scalar and nu are first integrals
    scal = np.array(
        [hamiltonian.momentum_scalars(t.points[k], t.momenta[k]) for k in range(len(t))]
    )
    if dist is TX:
        conserved = scal[:, 2:]  # kappa, nu
    else:
        conserved = scal[:, [0, 3]]  # tau, nu
    assert np.max(np.abs(conserved - conserved[0])) < 1e-10


def test_rk45_agrees_with_rk4():
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])
    t4 = hamiltonian.integrate(
        PhaseState.make(E, xi0), TX,
        IntegratorConfig(method="rk4", step=1e-3, s_span=(0.0, 2.0), record_every=100),
    )
    t5 = hamiltonian.integrate(
        PhaseState.make(E, xi0), TX,
        IntegratorConfig(
            method="rk45", step=1e-3, s_span=(0.0, 2.0), record_every=100,
            rel_tol=1e-11, abs_tol=1e-13,
        ),
    )
    assert np.allclose(t4.params, t5.params, atol=1e-12)
    assert np.max(np.abs(t4.points - t5.points)) < 1e-7


def test_record_every_and_span_offset():
    xi0 = np.array([0.0, 1.0, 1.0, 0.0])
    cfg = IntegratorConfig(step=1e-2, s_span=(0.5, 1.5), record_every=10)
    x0 = closedform.const_geodesic(
        closedform.ConstGeodesicSpec(TX, "lightlike", sign_alpha=1, sign_beta=1), 0.5
    )
    xi_start = closedform.const_geodesic_momentum(
        closedform.ConstGeodesicSpec(TX, "lightlike", sign_alpha=1, sign_beta=1), 0.5
    )
    t = hamiltonian.integrate(PhaseState.make(x0, xi_start), TX, cfg)
    assert t.params[0] == pytest.approx(0.5)
    assert t.params[-1] == pytest.approx(1.5)
    assert len(t) == 11  # 100 steps recorded every 10, plus the initial sample
    del xi0


def test_strict_mode_raises_on_breach():
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.0])
    cfg = IntegratorConfig(
        step=1e-2, s_span=(0.0, 2.0), record_every=10, strict=True, drift_bound=1e-18
    )
    with pytest.raises(DiagnosticBreach):
        hamiltonian.integrate(PhaseState.make(E, xi0), TX, cfg)


@pytest.mark.parametrize(
    "chart,init",
    [
        ("timelike", ChartPhaseState.make([0.0, 0.0, 0.1], [0.8, 0.3, 0.0])),
        ("spacelike", ChartPhaseState.make([0.0, 0.0, -0.2], [0.9, 0.4, 0.0])),
        ("subriemannian", ChartPhaseState.make([0.0, 0.2, 0.1], [0.7, 0.5, 0.0])),
    ],
    ids=["timelike", "spacelike", "subriemannian"],
)
def test_chart_flow_matches_ambient_flow(chart: str, init: ChartPhaseState):
    """Chart-coordinate flow, lifted to the ambient space, equals the ambient flow."""
    dist = TX if chart in ("timelike", "spacelike") else XY
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 0.8), record_every=10)
    flow = hamiltonian.integrate_chart(chart, init, cfg)
    assert np.max(np.abs(flow.diagnostics["H_drift"])) < 1e-10
    # the chart-to-ambient momentum lift is singular at phi = 0, so hand the
    # ambient integrator a state from a few samples into the flow
    k0 = 5
    st = hamiltonian.chart_phase_to_cartesian(
        chart, flow.coords[k0], flow.momenta[k0]
    )
    cfg_amb = IntegratorConfig(
        step=1e-3, s_span=(float(flow.params[k0]), 0.8), record_every=10
    )
    amb = hamiltonian.integrate(PhaseState.make(st.x, st.xi), dist, cfg_amb)
    lifted = flow.to_cartesian().points[k0:]
    assert np.max(np.abs(lifted - amb.points)) < 1e-7


def test_chart_hamiltonian_equals_ambient_hamiltonian():
    """H evaluated in chart variables equals H of the lifted ambient state."""
    cases = [
        ("timelike", TX, ChartPhaseState.make([0.3, 0.1, 0.2], [0.8, 0.3, 0.1])),
        ("spacelike", TX, ChartPhaseState.make([0.4, 0.1, -0.2], [0.9, 0.4, 0.2])),
        ("subriemannian", XY, ChartPhaseState.make([0.5, 0.2, 0.1], [0.7, 0.5, 0.3])),
    ]
    for chart, dist, st in cases:
        h_chart = hamiltonian.chart_hamiltonian_value(chart, st)
        amb = hamiltonian.chart_phase_to_cartesian(chart, st.coords, st.momenta)
        h_amb = hamiltonian.hamiltonian_value(amb, dist)
        assert h_chart == pytest.approx(h_amb, abs=1e-10)


def test_euler_lagrange_residual_on_flow():
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 3.0), record_every=3)
    t = hamiltonian.integrate(PhaseState.make(E, xi0), TX, cfg)
    rep = hamiltonian.euler_lagrange_residual(t, TX)
    assert rep.lambda_constant
    # the multiplier equals minus the conserved vertical scalar
    assert rep.lambda_mean == pytest.approx(-0.25, abs=1e-8)
    assert np.ptp(rep.speed_sq) < 1e-10


def test_euler_lagrange_rejects_vertical_curve():
    t = closedform.sample_vertical_line(TX, np.linspace(0.0, 1.0, 101))
    with pytest.raises(NotHorizontal):
        hamiltonian.euler_lagrange_residual(t, TX)


def test_acceleration_decomposition_relations():
    """a = alpha', b = beta', omega = 0, w = alpha^2 - beta^2 on a TX flow."""
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])
    cfg = IntegratorConfig(step=1e-3, s_span=(0.0, 2.0), record_every=2)
    t = hamiltonian.integrate(PhaseState.make(E, xi0), TX, cfg)
    dec = hamiltonian.acceleration_decomposition(t)
    n = len(t)
    sl = slice(2, n - 2)
    alpha = t.diagnostics["hcoord1"]
    beta = t.diagnostics["hcoord2"]
    h = float(t.params[1] - t.params[0])
    from adsgeo._numerics import derivative_uniform

    assert np.max(np.abs(dec.a - derivative_uniform(alpha, h)[sl])) < 1e-5
    assert np.max(np.abs(dec.b - derivative_uniform(beta, h)[sl])) < 1e-5
    assert np.max(np.abs(dec.omega)) < 1e-6
    assert np.max(np.abs(dec.w - (alpha[sl] ** 2 - beta[sl] ** 2))) < 1e-5
