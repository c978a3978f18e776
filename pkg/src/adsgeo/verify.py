"""Self-contained verification suites used by the CLI and the test bench.

Every check returns a :class:`CheckResult` with the worst observed
deviation and the tolerance it was held to.  The optional ``perturb``
argument injects a controlled error into the quantity being checked so
that the suite can demonstrate it is actually sensitive (negative
control); production runs use ``perturb = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import algebra, charts, closedform, connectivity, hamiltonian
from .errors import AdsGeoError
from .horizontality import Distribution

__all__ = [
    "CheckResult",
    "BOUNDED_FLOW_SET",
    "CROSS_VALIDATION_SET",
    "check_matrix_identities",
    "check_frame_gram",
    "check_flow_vs_closed_form",
    "check_conserved_drift",
    "check_connectivity",
    "run_all",
    "format_report",
]

DEFAULT_SEED = 20260815


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        msg = f"[{tag}] {self.name}: max deviation {self.value:.3e} (tol {self.tol:.1e})"
        if self.detail:
            msg += f" -- {self.detail}"
        return msg


# Constant-component families cross-validated against the integrator.
# (name, spec, tolerance)
CROSS_VALIDATION_SET = [
    (
        "tx-timelike-psi0.7",
        closedform.ConstGeodesicSpec(Distribution.SPAN_TX, "timelike", psi=0.7),
        1e-8,
    ),
    (
        "tx-spacelike-psi0.7",
        closedform.ConstGeodesicSpec(Distribution.SPAN_TX, "spacelike", psi=0.7),
        1e-8,
    ),
    (
        "xy-spacelike-psi0.7",
        closedform.ConstGeodesicSpec(Distribution.SPAN_XY, "spacelike", psi=0.7),
        1e-8,
    ),
    (
        "tx-lightlike-pp",
        closedform.ConstGeodesicSpec(
            Distribution.SPAN_TX, "lightlike", sign_alpha=1, sign_beta=1
        ),
        1e-10,
    ),
]

# Flows whose trajectories stay O(10) in norm over s in [0, 10], so that
# double-precision drift bounds of 1e-8 are meaningful.  Families with
# exponentially growing Cartesian components amplify rounding error by
# their growth factor and are excluded by construction.
# (name, distribution, xi0 at the identity)
BOUNDED_FLOW_SET = [
    (
        "tx-const-timelike-0.3",
        Distribution.SPAN_TX,
        np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.0]),
    ),
    ("tx-lightlike-pp", Distribution.SPAN_TX, np.array([0.0, 1.0, 1.0, 0.0])),
    ("tx-lightlike-pm", Distribution.SPAN_TX, np.array([0.0, 1.0, -1.0, 0.0])),
    (
        "tx-kappa+0.25",
        Distribution.SPAN_TX,
        np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25]),
    ),
    (
        "tx-kappa-0.25",
        Distribution.SPAN_TX,
        np.array([0.0, np.cosh(0.3), np.sinh(0.3), -0.25]),
    ),
    ("xy-B2-C1", Distribution.SPAN_XY, np.array([0.0, 2.0, 1.0, 0.0])),
    (
        "xy-B2-angle0.4",
        Distribution.SPAN_XY,
        np.array([0.0, 2.0, np.cos(0.4), np.sin(0.4)]),
    ),
    (
        "xy-B-2-angle1.1",
        Distribution.SPAN_XY,
        np.array([0.0, -2.0, np.cos(1.1), np.sin(1.1)]),
    ),
]


def check_matrix_identities(perturb: float = 0.0) -> CheckResult:
    """Multiplication table and commutators of the three frame matrices."""
    J = algebra.J + perturb * np.eye(4)
    E1, E2, U = algebra.E1, algebra.E2, algebra.U
    residuals = [
        J @ J + U,
        E1 @ E1 - U,
        E2 @ E2 - U,
        J @ E1 - E2,
        E1 @ J + E2,
        J @ E2 + E1,
        E2 @ J - E1,
        E1 @ E2 + J,
        E2 @ E1 - J,
        (J @ E1 - E1 @ J) - 2.0 * E2,
        (E2 @ E1 - E1 @ E2) - 2.0 * J,
        (J @ E2 - E2 @ J) + 2.0 * E1,
    ]
    worst = max(float(np.max(np.abs(r))) for r in residuals)
    return CheckResult(
        name="matrix-identities",
        passed=worst == 0.0,
        value=worst,
        tol=0.0,
        detail="12 exact integer identities",
    )


def check_frame_gram(
    n: int = 1000, seed: int = DEFAULT_SEED, perturb: float = 0.0
) -> CheckResult:
    """Frame Gram matrix diag(-1, -1, 1, 1) at random points."""
    rng = np.random.default_rng(seed)
    target = np.diag([-1.0, -1.0, 1.0, 1.0])
    worst = 0.0
    for p in charts.random_points(n, rng):
        frame = np.stack(algebra.frame_at(p))  # rows N, T, X, Y
        frame[1] = frame[1] + perturb * frame[2]
        gram = np.array(
            [
                [algebra.minkowski_inner(a, b) for b in frame]
                for a in frame
            ]
        )
        worst = max(worst, float(np.max(np.abs(gram - target))))
    return CheckResult(
        name="frame-gram",
        passed=worst <= 1e-12,
        value=worst,
        tol=1e-12,
        detail=f"{n} random points",
    )


def check_flow_vs_closed_form(perturb: float = 0.0) -> list[CheckResult]:
    """Fixed-step integrator against the constant-component closed forms."""
    out = []
    for name, spec, tol in CROSS_VALIDATION_SET:
        xi0 = closedform.const_geodesic_momentum(spec, 0.0)
        cfg = hamiltonian.IntegratorConfig(
            method="rk4", step=1e-3, s_span=(0.0, 2.0 * np.pi), record_every=10
        )
        traj = hamiltonian.integrate(
            hamiltonian.PhaseState.make(algebra.IDENTITY, xi0),
            spec.distribution,
            cfg,
        )
        ref = closedform.sample_const_geodesic(spec, traj.params)
        dev_x = float(np.max(np.abs(traj.points - ref.points)))
        dev_xi = float(np.max(np.abs(traj.momenta - ref.momenta)))
        worst = max(dev_x, dev_xi) + abs(perturb)
        out.append(
            CheckResult(
                name=f"closed-form/{name}",
                passed=worst <= tol,
                value=worst,
                tol=tol,
                detail="position and momentum, s in [0, 2 pi], h = 1e-3",
            )
        )
    return out


def _first_integral_drift(traj, dist: Distribution) -> float:
    states = [
        hamiltonian.PhaseState(traj.points[k], traj.momenta[k])
        for k in range(len(traj))
    ]
    if dist is Distribution.SPAN_TX:
        vals = np.array([closedform.first_integrals_tx(s) for s in states])
        return float(np.max(np.abs(vals - vals[0])))
    vals = np.array(
        [
            [s_.c_plus_id, s_.a_minus_ib]
            for s_ in (closedform.first_integrals_xy(s) for s in states)
        ]
    )
    return float(np.max(np.abs(vals - vals[0])))


def check_conserved_drift(perturb: float = 0.0) -> list[CheckResult]:
    """Hamiltonian, constraint, and first-integral drift over s in [0, 10]."""
    out = []
    cfg = hamiltonian.IntegratorConfig(
        method="rk4", step=1e-3, s_span=(0.0, 10.0), record_every=10
    )
    for name, dist, xi0 in BOUNDED_FLOW_SET:
        traj = hamiltonian.integrate(
            hamiltonian.PhaseState.make(algebra.IDENTITY, xi0), dist, cfg
        )
        if perturb:
            traj.points[len(traj) // 2] += perturb
            vel, diag = hamiltonian.flow_outputs(traj.points, traj.momenta, dist)
            traj.diagnostics.update(diag)
        d = traj.diagnostics
        worst = max(
            float(np.max(np.abs(d["H_drift"]))),
            float(np.max(np.abs(d["manifold_residual"]))),
            float(np.max(np.abs(d["horiz_residual"]))),
            _first_integral_drift(traj, dist),
        )
        out.append(
            CheckResult(
                name=f"drift/{name}",
                passed=worst <= 1e-8,
                value=worst,
                tol=1e-8,
                detail="H, constraint, horizontality, first integrals",
            )
        )
    return out


def sample_endpoint_pair(rng) -> tuple:
    """Random endpoint pair from the documented connectable region.

    theta in [0.3, 1.0] (common sign), psi in (0.25 pi, 0.75 pi) within
    one branch strip, phi separated by 0.3 to 1.5.  Outside this region
    the linear-phi construction can drive theta to infinity, which
    surfaces as a typed DegenerateConfiguration error.
    """
    th = rng.uniform(0.3, 1.0, size=2)
    psi = rng.uniform(0.25 * np.pi, 0.75 * np.pi, size=2)
    phi0 = rng.uniform(-2.0, 2.0)
    phi1 = phi0 + rng.choice([-1.0, 1.0]) * rng.uniform(0.3, 1.5)
    P = charts.GlobalChartPoint(phi=phi0, psi=float(psi[0]), theta=float(th[0]))
    Q = charts.GlobalChartPoint(phi=phi1, psi=float(psi[1]), theta=float(th[1]))
    return P, Q


def check_connectivity(
    n_pairs: int = 100, seed: int = DEFAULT_SEED, perturb: float = 0.0
) -> list[CheckResult]:
    """Success rate of connect_tx plus exactness of the rigid families."""
    rng = np.random.default_rng(seed)
    ok = 0
    worst_endpoint = 0.0
    worst_residual = 0.0
    errors: dict[str, int] = {}
    for _ in range(n_pairs):
        P, Q = sample_endpoint_pair(rng)
        if perturb:
            Q = charts.GlobalChartPoint(Q.phi, Q.psi, Q.theta + perturb)
        try:
            traj = connectivity.connect_tx(P, Q, n=257)
        except AdsGeoError as exc:
            errors[type(exc).__name__] = errors.get(type(exc).__name__, 0) + 1
            continue
        e_end = float(traj.diagnostics["endpoint_error"])
        e_res = float(np.max(np.abs(traj.diagnostics["chart_residual"])))
        if perturb:
            worst_endpoint = max(worst_endpoint, e_end)
            worst_residual = max(worst_residual, e_res)
            ok += 1 if (e_end <= 1e-6 and e_res <= 1e-8) else 0
            continue
        if e_end <= 1e-6 and e_res <= 1e-8:
            ok += 1
            worst_endpoint = max(worst_endpoint, e_end)
            worst_residual = max(worst_residual, e_res)
    detail = f"{ok}/{n_pairs} connected"
    if errors:
        detail += "; typed failures " + ", ".join(
            f"{k}x{v}" for k, v in sorted(errors.items())
        )
    results = [
        CheckResult(
            name="connect-tx-success-rate",
            passed=ok >= int(0.95 * n_pairs),
            value=float(n_pairs - ok),
            tol=float(n_pairs - int(0.95 * n_pairs)),
            detail=detail,
        ),
        CheckResult(
            name="connect-tx-endpoint",
            passed=worst_endpoint <= 1e-6 and ok > 0,
            value=worst_endpoint,
            tol=1e-6,
        ),
        CheckResult(
            name="connect-tx-residual",
            passed=worst_residual <= 1e-8 and ok > 0,
            value=worst_residual,
            tol=1e-8,
        ),
    ]

    # rigid constant-theta span{X, Y} family on a compatible pair
    th = 0.4
    r = float(np.cosh(2.0 * th))
    P = charts.GlobalChartPoint(phi=0.3, psi=0.2, theta=th)
    Q = charts.GlobalChartPoint(
        phi=0.3 - 0.7, psi=0.2 + r * 0.7, theta=th + perturb
    )
    try:
        traj = connectivity.connect_xy_constant_theta(P, Q)
        e_end = float(
            np.linalg.norm(traj.points[-1] - charts.chart_to_cartesian(Q))
        )
        e_res = float(np.max(np.abs(traj.diagnostics["chart_residual"])))
        worst = max(e_end, e_res)
        detail = ""
    except AdsGeoError as exc:
        worst = np.inf
        detail = f"{type(exc).__name__}: {exc}"
    results.append(
        CheckResult(
            name="connect-xy-constant-theta",
            passed=worst <= 1e-12,
            value=worst,
            tol=1e-12,
            detail=detail,
        )
    )
    return results


def run_all(
    perturbation: float = 0.0, seed: int = DEFAULT_SEED, n_gram: int = 1000
) -> list[CheckResult]:
    results = [
        check_matrix_identities(perturb=perturbation),
        check_frame_gram(n=n_gram, seed=seed, perturb=perturbation),
    ]
    results += check_flow_vs_closed_form(perturb=perturbation)
    results += check_conserved_drift(perturb=perturbation)
    results += check_connectivity(seed=seed, perturb=perturbation)
    return results


def format_report(results: list[CheckResult]) -> str:
    lines = [r.line() for r in results]
    n_fail = sum(not r.passed for r in results)
    lines.append(
        f"{len(results) - n_fail}/{len(results)} checks passed"
        + (f", {n_fail} FAILED" if n_fail else "")
    )
    return "\n".join(lines)
