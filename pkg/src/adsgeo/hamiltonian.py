"""Normal Hamiltonian flows for both distributions, in ambient and chart
coordinates, plus Euler-Lagrange style diagnostics for sampled curves.

Ambient phase space is (x, xi) in R^4 x R^4 with the canonical (Euclidean)
pairing.  The momenta enter only through the frame pairings

    tau   = xi . (x J),   sigma = xi . (x E1),
    kappa = xi . (x E2),  nu    = xi . x,

and the two normal Hamiltonians are

    span{T, X}: H = (sigma^2 - tau^2) / 2,
    span{X, Y}: H = (sigma^2 + kappa^2) / 2.

Both flows preserve the quadric constraint and the horizontality of the
position velocity exactly (nu and the vertical pairing are conserved), so
their numerical drift is a direct measure of integrator quality.

The chart Hamiltonians integrate the same geodesics in the three local
charts.  Writing b for the single horizontal momentum combination,

    timelike chart:       b = xi1 tan(phi)  + xi2 cot(phi),  H = (-psi^2 + b^2)/2
    spacelike chart:      b = xi1 tanh(phi) - xi2 coth(phi), H = ( psi^2 - b^2)/2
    sub-Riemannian chart: b = xi1 tanh(phi) - xi2 coth(phi), H = ( psi^2 + b^2)/2

with xi1, xi2 conserved.  The xi2 = 0 flows stay regular through phi = 0;
for xi2 != 0 the coordinate singularity at sin(phi) = 0 (resp. sinh(phi) =
0) is genuine and is guarded by :class:`ChartSingularity`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np
from scipy.integrate import solve_ivp

from . import algebra, charts
from ._numerics import derivative_uniform, rk4_fixed, second_derivative_uniform
from .errors import (
    ChartSingularity,
    DiagnosticBreach,
    EmptyTrajectory,
    NotHorizontal,
    OutOfDomain,
    StepFailure,
)
from .horizontality import Distribution, Trajectory

__all__ = [
    "PhaseState",
    "MomentumScalars",
    "ChartPhaseState",
    "ChartTrajectory",
    "IntegratorConfig",
    "momentum_scalars",
    "hamiltonian_value",
    "vector_field",
    "flow_outputs",
    "integrate",
    "chart_hamiltonian_value",
    "chart_vector_field",
    "integrate_chart",
    "chart_phase_to_cartesian",
    "euler_lagrange_residual",
    "acceleration_decomposition",
]

_CHART_NAMES = ("timelike", "spacelike", "subriemannian")

_CHART_POINT_TYPES = {
    "timelike": charts.TimelikeChartPoint,
    "spacelike": charts.SpacelikeChartPoint,
    "subriemannian": charts.SubRiemChartPoint,
}


class PhaseState(NamedTuple):
    """Ambient phase-space state (position, momentum)."""

    x: np.ndarray
    xi: np.ndarray

    @classmethod
    def make(cls, x, xi) -> "PhaseState":
        x = algebra.require_on_manifold(x)
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (4,):
            raise ValueError("momentum must be a 4-vector")
        return cls(x=x, xi=xi)


class MomentumScalars(NamedTuple):
    """Frame pairings of the momentum at the current position."""

    tau: float
    sigma: float
    kappa: float
    nu: float


class ChartPhaseState(NamedTuple):
    """Chart phase-space state: coords (phi, chi1, chi2) and momenta
    (psi, xi1, xi2)."""

    coords: np.ndarray
    momenta: np.ndarray

    @classmethod
    def make(cls, coords, momenta) -> "ChartPhaseState":
        coords = np.asarray(coords, dtype=float)
        momenta = np.asarray(momenta, dtype=float)
        if coords.shape != (3,) or momenta.shape != (3,):
            raise ValueError("chart phase state needs two 3-vectors")
        return cls(coords=coords, momenta=momenta)


@dataclass
class ChartTrajectory:
    """Uniformly sampled chart-coordinate flow."""

    chart: str
    params: np.ndarray
    coords: np.ndarray
    momenta: Optional[np.ndarray] = None
    diagnostics: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.params.shape[0])

    def point(self, k: int):
        cls = _CHART_POINT_TYPES[self.chart]
        return cls(*(float(v) for v in self.coords[k]))

    def to_cartesian(self) -> Trajectory:
        """Push the chart flow to ambient coordinates.

        Velocities are pushed through the chart Jacobian from the
        Hamiltonian coordinate velocities when momenta are stored.
        """
        pts = np.empty((len(self), 4))
        vels = None
        if self.momenta is not None:
            vels = np.empty((len(self), 4))
        for k in range(len(self)):
            cp = self.point(k)
            pts[k] = charts.chart_to_cartesian(cp)
            if vels is not None:
                cdot = _chart_coordinate_velocity(
                    self.chart, self.coords[k], self.momenta[k]
                )
                vels[k] = charts.chart_pushforward(cp, cdot)
        return Trajectory(
            params=self.params.copy(),
            points=pts,
            velocities=vels,
            diagnostics=dict(self.diagnostics),
        )


@dataclass
class IntegratorConfig:
    """Configuration for :func:`integrate` / :func:`integrate_chart`.

    ``method`` is ``"rk4"`` (fixed step ``step``) or ``"rk45"`` (adaptive
    Dormand-Prince via SciPy with ``rel_tol``/``abs_tol``; output is still
    sampled every ``step * record_every``).  ``strict`` promotes drift of
    the monitored diagnostics beyond ``drift_bound`` into a
    :class:`DiagnosticBreach`.
    """

    method: str = "rk4"
    step: float = 1e-3
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    s_span: tuple[float, float] = (0.0, 1.0)
    record_every: int = 1
    strict: bool = False
    drift_bound: float = 1e-8


def momentum_scalars(x, xi) -> MomentumScalars:
    """Pairings (tau, sigma, kappa, nu) of ``xi`` with the frame at ``x``."""
    x = np.asarray(x, dtype=float)
    xi = np.asarray(xi, dtype=float)
    return MomentumScalars(
        tau=float(xi @ (x @ algebra.J)),
        sigma=float(xi @ (x @ algebra.E1)),
        kappa=float(xi @ (x @ algebra.E2)),
        nu=float(xi @ x),
    )


def hamiltonian_value(state: PhaseState, dist: Distribution) -> float:
    """Normal Hamiltonian of the distribution at a phase-space state."""
    ms = momentum_scalars(state.x, state.xi)
    if dist is Distribution.SPAN_TX:
        return 0.5 * (ms.sigma**2 - ms.tau**2)
    return 0.5 * (ms.sigma**2 + ms.kappa**2)


def vector_field(state: PhaseState, dist: Distribution) -> PhaseState:
    """Right-hand side of the Hamiltonian system at a state.

    span{T, X}:  x' = -tau xJ + sigma xE1,  xi' = -tau xiJ - sigma xiE1
    span{X, Y}:  x' = sigma xE1 + kappa xE2, xi' = -sigma xiE1 - kappa xiE2
    """
    x, xi = state
    ms = momentum_scalars(x, xi)
    if dist is Distribution.SPAN_TX:
        xdot = -ms.tau * (x @ algebra.J) + ms.sigma * (x @ algebra.E1)
        xidot = -ms.tau * (xi @ algebra.J) - ms.sigma * (xi @ algebra.E1)
    else:
        xdot = ms.sigma * (x @ algebra.E1) + ms.kappa * (x @ algebra.E2)
        xidot = -ms.sigma * (xi @ algebra.E1) - ms.kappa * (xi @ algebra.E2)
    return PhaseState(x=xdot, xi=xidot)


def _ambient_rhs(dist: Distribution):
    def rhs(_s: float, y: np.ndarray) -> np.ndarray:
        state = PhaseState(x=y[:4], xi=y[4:])
        d = vector_field(state, dist)
        return np.concatenate([d.x, d.xi])

    return rhs


def flow_outputs(
    points: np.ndarray, momenta: np.ndarray, dist: Distribution
) -> tuple[np.ndarray, dict]:
    """Velocities and standard diagnostics of a sampled phase-space flow.

    The velocity at each sample is the position part of the Hamiltonian
    vector field, so for exact flow data it coincides with the curve's
    derivative.  Diagnostics: ``H``, ``H_drift``, ``manifold_residual``,
    ``horiz_residual`` (the vertical frame pairing of the velocity) and
    the two horizontal components ``hcoord1``, ``hcoord2``.
    """
    points = np.asarray(points, dtype=float)
    momenta = np.asarray(momenta, dtype=float)
    n = points.shape[0]
    velocities = np.empty((n, 4))
    H = np.empty(n)
    man = np.empty(n)
    hres = np.empty(n)
    hc1 = np.empty(n)
    hc2 = np.empty(n)
    for k in range(n):
        x = points[k]
        xi = momenta[k]
        ms = momentum_scalars(x, xi)
        t_vec = x @ algebra.J
        x_vec = x @ algebra.E1
        y_vec = x @ algebra.E2
        if dist is Distribution.SPAN_TX:
            velocities[k] = -ms.tau * t_vec + ms.sigma * x_vec
            H[k] = 0.5 * (ms.sigma**2 - ms.tau**2)
            hres[k] = algebra.minkowski_inner(y_vec, velocities[k])
            hc1[k] = algebra.minkowski_inner(velocities[k], t_vec)
            hc2[k] = algebra.minkowski_inner(velocities[k], x_vec)
        else:
            velocities[k] = ms.sigma * x_vec + ms.kappa * y_vec
            H[k] = 0.5 * (ms.sigma**2 + ms.kappa**2)
            hres[k] = algebra.minkowski_inner(t_vec, velocities[k])
            hc1[k] = algebra.minkowski_inner(velocities[k], x_vec)
            hc2[k] = algebra.minkowski_inner(velocities[k], y_vec)
        man[k] = algebra.manifold_residual(x)
    diagnostics = {
        "H": H,
        "H_drift": H - H[0],
        "manifold_residual": man,
        "horiz_residual": hres,
        "hcoord1": hc1,
        "hcoord2": hc2,
    }
    return velocities, diagnostics


def integrate(
    state0: PhaseState, dist: Distribution, cfg: IntegratorConfig
) -> Trajectory:
    """Integrate the ambient Hamiltonian flow and attach diagnostics.

    The returned trajectory stores analytic velocities (the position part
    of the vector field evaluated on the recorded states) and per-sample
    diagnostics ``H``, ``H_drift``, ``manifold_residual``,
    ``horiz_residual``, ``hcoord1``, ``hcoord2``.
    """
    state0 = PhaseState.make(state0.x, state0.xi)
    s0, s1 = cfg.s_span
    y0 = np.concatenate([state0.x, state0.xi])
    rhs = _ambient_rhs(dist)
    if cfg.method == "rk4":
        s_vals, ys = rk4_fixed(rhs, y0, s0, s1, cfg.step, cfg.record_every)
    elif cfg.method == "rk45":
        out_h = cfg.step * cfg.record_every
        n_out = max(int(round((s1 - s0) / out_h)), 1)
        t_eval = s0 + np.arange(n_out + 1) * (s1 - s0) / n_out
        sol = solve_ivp(
            rhs,
            (s0, s1),
            y0,
            method="RK45",
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
            t_eval=t_eval,
            dense_output=False,
        )
        if not sol.success:
            raise StepFailure(f"adaptive integration failed: {sol.message}")
        s_vals, ys = sol.t, sol.y.T
    else:
        raise ValueError(f"unknown method {cfg.method!r}")

    points = ys[:, :4]
    momenta = ys[:, 4:]
    velocities, diagnostics = flow_outputs(points, momenta, dist)
    traj = Trajectory(
        params=s_vals,
        points=points,
        velocities=velocities,
        momenta=momenta,
        diagnostics=diagnostics,
    )
    if cfg.strict:
        worst = max(
            float(np.max(np.abs(diagnostics["H_drift"]))),
            float(np.max(np.abs(diagnostics["manifold_residual"]))),
            float(np.max(np.abs(diagnostics["horiz_residual"]))),
        )
        if worst > cfg.drift_bound:
            raise DiagnosticBreach(
                f"diagnostic drift {worst:.3e} exceeds bound {cfg.drift_bound:.1e}"
            )
    return traj


# ---------------------------------------------------------------------------
# Chart flows


def _chart_b(chart: str, phi: float, xi1: float, xi2: float) -> tuple[float, float]:
    """Horizontal momentum combination b and its phi-derivative.

    Returns (b, db/dphi).  For xi2 = 0 the cot/coth terms are dropped
    algebraically, keeping the flow regular through phi = 0.
    """
    if chart == "timelike":
        if abs(np.cos(phi)) < 1e-12:
            raise OutOfDomain("timelike chart flow reached |phi| = pi/2")
        t = np.tan(phi)
        if xi2 == 0.0:
            return xi1 * t, xi1 / np.cos(phi) ** 2
        s = np.sin(phi)
        if abs(s) < 1e-8:
            raise ChartSingularity(
                "xi2 != 0 flow entered the sin(phi) = 0 singular locus"
            )
        return (
            xi1 * t + xi2 / t,
            xi1 / np.cos(phi) ** 2 - xi2 / s**2,
        )
    # spacelike and subriemannian share b = xi1 tanh - xi2 coth
    t = np.tanh(phi)
    if xi2 == 0.0:
        return xi1 * t, xi1 / np.cosh(phi) ** 2
    sh = np.sinh(phi)
    if abs(sh) < 1e-8:
        raise ChartSingularity(
            "xi2 != 0 flow entered the sinh(phi) = 0 singular locus"
        )
    return (
        xi1 * t - xi2 / t,
        xi1 / np.cosh(phi) ** 2 + xi2 / sh**2,
    )


def chart_hamiltonian_value(chart: str, state: ChartPhaseState) -> float:
    """Chart Hamiltonian at a chart phase state."""
    phi = float(state.coords[0])
    psi, xi1, xi2 = (float(v) for v in state.momenta)
    b, _ = _chart_b(chart, phi, xi1, xi2)
    if chart == "timelike":
        return 0.5 * (-psi * psi + b * b)
    if chart == "spacelike":
        return 0.5 * (psi * psi - b * b)
    if chart == "subriemannian":
        return 0.5 * (psi * psi + b * b)
    raise ValueError(f"unknown chart {chart!r}")


def _chart_coordinate_velocity(
    chart: str, coords: np.ndarray, momenta: np.ndarray
) -> np.ndarray:
    """Coordinate velocity (phi', chi1', chi2') from chart momenta."""
    phi = float(coords[0])
    psi, xi1, xi2 = (float(v) for v in momenta)
    b, _ = _chart_b(chart, phi, xi1, xi2)
    if chart == "timelike":
        t = np.tan(phi)
        cot = np.cos(phi) / np.sin(phi) if xi2 != 0.0 else 0.0
        return np.array([-psi, b * t, b * cot if xi2 != 0.0 else xi1])
    t = np.tanh(phi)
    if chart == "spacelike":
        if xi2 == 0.0:
            return np.array([psi, -b * t, xi1])
        coth = np.cosh(phi) / np.sinh(phi)
        return np.array([psi, -b * t, b * coth])
    if chart == "subriemannian":
        if xi2 == 0.0:
            return np.array([psi, b * t, -xi1])
        coth = np.cosh(phi) / np.sinh(phi)
        return np.array([psi, b * t, -b * coth])
    raise ValueError(f"unknown chart {chart!r}")


def chart_vector_field(chart: str, state: ChartPhaseState) -> ChartPhaseState:
    """Hamiltonian right-hand side for a chart flow.

    xi1 and xi2 are momenta of the chart's two cyclic coordinates and stay
    constant; only psi evolves on the momentum side.
    """
    phi = float(state.coords[0])
    psi, xi1, xi2 = (float(v) for v in state.momenta)
    b, dbdphi = _chart_b(chart, phi, xi1, xi2)
    cdot = _chart_coordinate_velocity(chart, state.coords, state.momenta)
    if chart == "timelike":
        psidot = -b * dbdphi
    else:  # spacelike / subriemannian: H = (psi^2 -+ b^2)/2 -> psi' = +-b b'
        psidot = b * dbdphi if chart == "spacelike" else -b * dbdphi
    return ChartPhaseState(
        coords=cdot, momenta=np.array([psidot, 0.0, 0.0])
    )


def integrate_chart(
    chart: str, init: ChartPhaseState, cfg: IntegratorConfig
) -> ChartTrajectory:
    """Integrate a chart Hamiltonian flow (RK4 or adaptive RK45)."""
    if chart not in _CHART_NAMES:
        raise ValueError(f"unknown chart {chart!r}")
    init = ChartPhaseState.make(init.coords, init.momenta)
    s0, s1 = cfg.s_span
    y0 = np.concatenate([init.coords, init.momenta])

    def rhs(_s: float, y: np.ndarray) -> np.ndarray:
        st = ChartPhaseState(coords=y[:3], momenta=y[3:])
        d = chart_vector_field(chart, st)
        return np.concatenate([d.coords, d.momenta])

    if cfg.method == "rk4":
        s_vals, ys = rk4_fixed(rhs, y0, s0, s1, cfg.step, cfg.record_every)
    elif cfg.method == "rk45":
        out_h = cfg.step * cfg.record_every
        n_out = max(int(round((s1 - s0) / out_h)), 1)
        t_eval = s0 + np.arange(n_out + 1) * (s1 - s0) / n_out
        sol = solve_ivp(
            rhs,
            (s0, s1),
            y0,
            method="RK45",
            rtol=cfg.rel_tol,
            atol=cfg.abs_tol,
            t_eval=t_eval,
        )
        if not sol.success:
            raise StepFailure(f"adaptive integration failed: {sol.message}")
        s_vals, ys = sol.t, sol.y.T
    else:
        raise ValueError(f"unknown method {cfg.method!r}")

    n = s_vals.shape[0]
    H = np.empty(n)
    for k in range(n):
        H[k] = chart_hamiltonian_value(
            chart, ChartPhaseState(coords=ys[k, :3], momenta=ys[k, 3:])
        )
    diag = {"H": H, "H_drift": H - H[0]}
    traj = ChartTrajectory(
        chart=chart,
        params=s_vals,
        coords=ys[:, :3],
        momenta=ys[:, 3:],
        diagnostics=diag,
    )
    if cfg.strict and float(np.max(np.abs(diag["H_drift"]))) > cfg.drift_bound:
        raise DiagnosticBreach("chart Hamiltonian drift exceeds bound")
    return traj


def chart_phase_to_cartesian(
    chart: str, coords, momenta, nu: float = 0.0
) -> PhaseState:
    """Lift a chart phase state to the ambient phase space.

    The ambient momentum is fixed by its pairings with the three chart
    coordinate fields (the chart momenta) plus the radial pairing
    ``nu = xi . x``, which is a gauge choice: it does not influence the
    projected dynamics and defaults to 0.
    """
    coords = np.asarray(coords, dtype=float)
    momenta = np.asarray(momenta, dtype=float)
    cp = _CHART_POINT_TYPES[chart](*(float(v) for v in coords))
    x = charts.chart_to_cartesian(cp)
    rows = np.stack(
        [
            charts.chart_pushforward(cp, (1.0, 0.0, 0.0)),
            charts.chart_pushforward(cp, (0.0, 1.0, 0.0)),
            charts.chart_pushforward(cp, (0.0, 0.0, 1.0)),
            x,
        ]
    )
    rhs = np.array([momenta[0], momenta[1], momenta[2], nu])
    try:
        xi = np.linalg.solve(rows, rhs)
    except np.linalg.LinAlgError as exc:
        raise ChartSingularity(
            "chart Jacobian is singular at this point; the momentum lift "
            "is not determined"
        ) from exc
    return PhaseState(x=x, xi=xi)


# ---------------------------------------------------------------------------
# Curve diagnostics


@dataclass
class ELReport:
    """Euler-Lagrange diagnostics of a sampled horizontal curve.

    ``lambda_hat`` is the pointwise least-squares estimate of the
    multiplier in the first-order system (a' = 2 lambda b, b' = 2 lambda a
    for span{T, X}; b' = 2 lambda g, g' = -2 lambda b for span{X, Y}); the
    residual arrays are what remains of the two equations after inserting
    it.  All arrays exclude two boundary samples at each end, where the
    finite-difference stencils lose accuracy.
    """

    params: np.ndarray
    lambda_hat: np.ndarray
    residual_primary: np.ndarray
    residual_secondary: np.ndarray
    speed_sq: np.ndarray
    lambda_mean: float
    lambda_max_dev: float
    lambda_constant: bool


def euler_lagrange_residual(
    t: Trajectory,
    dist: Distribution,
    horizontal_tol: float = 1e-6,
    constancy_rel_tol: float = 1e-5,
) -> ELReport:
    """Check a sampled curve against the geodesic first-order system.

    Raises:
        NotHorizontal: if the curve's velocities have a vertical component
            beyond ``horizontal_tol`` (scaled).
    """
    n = len(t)
    if n < 7:
        raise EmptyTrajectory("Euler-Lagrange diagnostics need >= 7 samples")
    v = t.velocities_or_fd()
    h = float(t.params[1] - t.params[0])
    a = np.empty(n)
    b = np.empty(n)
    for k in range(n):
        co = algebra.decompose_in_frame(t.points[k], v[k])
        vertical = co.gamma if dist is Distribution.SPAN_TX else co.alpha
        scale = 1.0 + float(np.linalg.norm(v[k])) * float(
            np.linalg.norm(t.points[k])
        )
        if abs(vertical) > horizontal_tol * scale:
            raise NotHorizontal(
                f"sample {k}: vertical component {vertical:.3e} beyond tolerance"
            )
        if dist is Distribution.SPAN_TX:
            a[k], b[k] = co.alpha, co.beta
        else:
            a[k], b[k] = co.beta, co.gamma
    adot = derivative_uniform(a, h)
    bdot = derivative_uniform(b, h)
    sl = slice(2, n - 2)
    denom = 2.0 * (a[sl] ** 2 + b[sl] ** 2)
    if float(np.min(np.abs(denom))) < 1e-14:
        raise NotHorizontal("velocity vanishes; multiplier is undefined")
    if dist is Distribution.SPAN_TX:
        lam = (adot[sl] * b[sl] + bdot[sl] * a[sl]) / denom
        r1 = adot[sl] - 2.0 * lam * b[sl]
        r2 = bdot[sl] - 2.0 * lam * a[sl]
        speed = -a[sl] ** 2 + b[sl] ** 2
    else:
        lam = (adot[sl] * b[sl] - bdot[sl] * a[sl]) / denom
        r1 = adot[sl] - 2.0 * lam * b[sl]
        r2 = bdot[sl] + 2.0 * lam * a[sl]
        speed = a[sl] ** 2 + b[sl] ** 2
    mean = float(np.mean(lam))
    max_dev = float(np.max(np.abs(lam - mean)))
    return ELReport(
        params=t.params[sl].copy(),
        lambda_hat=lam,
        residual_primary=r1,
        residual_secondary=r2,
        speed_sq=speed,
        lambda_mean=mean,
        lambda_max_dev=max_dev,
        lambda_constant=bool(max_dev <= constancy_rel_tol * (1.0 + abs(mean))),
    )


@dataclass
class AccelDecomp:
    """Frame inner products of the finite-difference acceleration.

    For a horizontal span{T, X} curve the exact relations are
    a = alpha', b = beta', omega = 0 and w = alpha^2 - beta^2 (the normal
    curvature of the quadric).  Boundary samples carry lower-order
    stencils and are excluded.
    """

    params: np.ndarray
    a: np.ndarray
    b: np.ndarray
    omega: np.ndarray
    w: np.ndarray


def acceleration_decomposition(t: Trajectory) -> AccelDecomp:
    """Decompose the sampled second derivative in the moving frame."""
    n = len(t)
    if n < 7:
        raise EmptyTrajectory("acceleration decomposition needs >= 7 samples")
    h = float(t.params[1] - t.params[0])
    acc = second_derivative_uniform(t.points, h)
    sl = slice(2, n - 2)
    idx = range(2, n - 2)
    a = np.empty(n - 4)
    b = np.empty(n - 4)
    om = np.empty(n - 4)
    w = np.empty(n - 4)
    for j, k in enumerate(idx):
        co = algebra.decompose_in_frame(t.points[k], acc[k])
        a[j], b[j], om[j], w[j] = co.alpha, co.beta, co.gamma, co.delta
    return AccelDecomp(params=t.params[sl].copy(), a=a, b=b, omega=om, w=w)
