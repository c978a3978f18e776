"""Explicit horizontal curves joining prescribed endpoint pairs.

All constructions work in the global (phi, psi, theta) parametrization and
return Cartesian trajectories.  The span{T, X} construction drives phi
linearly and prescribes the auxiliary profile q(s) = cot(psi(s)); the
horizontality condition then couples theta to the running integral of q,

    cosh(2 theta(s)) = 1 / h(s),    h = -tanh( k * int_0^s q  -  X0 ),

with X_i = arctanh(1 / cosh(2 theta_i)), and hitting the far endpoint
pins down int_0^1 q = (X0 - X1) / k.  A quadratic (or sine) bridge
matches the endpoint values and that integral.  Velocities are assembled
by the chain rule, which makes the horizontality residual vanish
algebraically; the only numerical error is the quadrature of int q, which
converges at the composite-Simpson rate O(n^-4).

The span{X, Y} construction instead prescribes psi(s) and recovers
theta from p(s) = psi'(s)/q(s) = cosh(2 theta(s)) (possible only while
p >= 1) and phi from phi' = -psi'/p.

Both distributions also admit rigid special forms (constant psi resp.
constant theta) that exist only for compatible endpoint pairs, and the
span{T, X} timelike families yield a piecewise-smooth timelike connection
between any two points sharing the radial coordinate.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from . import charts
from ._numerics import cumulative_simpson_uniform
from .charts import GlobalChartPoint
from .errors import (
    DegenerateConfiguration,
    DomainError,
    IncompatiblePair,
    ThetaSignLoss,
)
from .horizontality import Distribution, Trajectory, horizontality_residual

__all__ = [
    "bridge_function",
    "connect_tx",
    "connect_tx_constant_psi",
    "connect_xy",
    "connect_xy_constant_theta",
    "piecewise_timelike_tx",
]


class Bridge:
    """Smooth profile on [0, 1] with prescribed endpoint values and integral.

    ``kind="quadratic"`` uses the minimal polynomial correction
    c u (1 - u); ``kind="sine"`` uses c sin(pi u), which is useful when a
    non-polynomial integrand is wanted (e.g. to observe the quadrature
    convergence order).
    """

    def __init__(self, q0: float, q1: float, integral: float, kind: str = "quadratic"):
        self.q0 = float(q0)
        self.q1 = float(q1)
        self.integral = float(integral)
        self.kind = kind
        excess = self.integral - 0.5 * (self.q0 + self.q1)
        if kind == "quadratic":
            self.c = 6.0 * excess
        elif kind == "sine":
            self.c = 0.5 * np.pi * excess
        else:
            raise ValueError(f"unknown bridge kind {kind!r}")

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        base = self.q0 + (self.q1 - self.q0) * u
        if self.kind == "quadratic":
            return base + self.c * u * (1.0 - u)
        return base + self.c * np.sin(np.pi * u)

    def derivative(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == "quadratic":
            return (self.q1 - self.q0) + self.c * (1.0 - 2.0 * u)
        return (self.q1 - self.q0) + self.c * np.pi * np.cos(np.pi * u)


def bridge_function(
    q0: float, q1: float, integral: float, kind: str = "quadratic"
) -> Bridge:
    """Profile q on [0, 1] with q(0) = q0, q(1) = q1, int_0^1 q = integral."""
    return Bridge(q0, q1, integral, kind)


def _as_chart_point(P) -> GlobalChartPoint:
    if isinstance(P, GlobalChartPoint):
        return P
    return charts.cartesian_to_global_chart(np.asarray(P, dtype=float))


def _odd(n: int) -> int:
    n = int(n)
    if n < 5:
        n = 5
    return n if n % 2 == 1 else n + 1


def _chart_curve_to_trajectory(
    s_grid: np.ndarray,
    phi: np.ndarray,
    psi: np.ndarray,
    theta: np.ndarray,
    phidot: np.ndarray,
    psidot: np.ndarray,
    thetadot: np.ndarray,
    extra_diag: Optional[dict] = None,
) -> Trajectory:
    n = s_grid.shape[0]
    pts = np.empty((n, 4))
    vel = np.empty((n, 4))
    chart_res = np.empty(n)
    for k in range(n):
        cp = GlobalChartPoint(phi=float(phi[k]), psi=float(psi[k]), theta=float(theta[k]))
        cdot = (float(phidot[k]), float(psidot[k]), float(thetadot[k]))
        pts[k] = charts.chart_to_cartesian(cp)
        vel[k] = charts.chart_pushforward(cp, cdot)
        chart_res[k] = charts.chart_horizontality_residual(cp, cdot)
    diag = {
        "phi": phi.copy(),
        "psi": psi.copy(),
        "theta": theta.copy(),
        "chart_residual": chart_res,
    }
    if extra_diag:
        diag.update(extra_diag)
    return Trajectory(params=s_grid, points=pts, velocities=vel, diagnostics=diag)


def connect_tx(
    P,
    Q,
    n: int = 257,
    bridge: str = "quadratic",
    allow_trivial: bool = False,
) -> Trajectory:
    """Horizontal span{T, X} curve from P to Q with linear phi.

    P and Q may be ambient points or :class:`GlobalChartPoint` values.
    Requirements on the (canonical) chart coordinates: distinct phi,
    nonzero same-sign theta, and psi values off the singular lattice
    pi Z and within one and the same branch strip (n pi, (n+1) pi).

    Raises:
        DegenerateConfiguration: phi values equal, psi on the lattice or
            in different strips, vanishing theta, or a bridge whose
            running integral would force theta to diverge.
        ThetaSignLoss: theta values of opposite sign (the construction
            cannot cross theta = 0).
    """
    cP = _as_chart_point(P)
    cQ = _as_chart_point(Q)
    if allow_trivial and cP == cQ:
        s = np.linspace(0.0, 1.0, _odd(n))
        x0 = charts.chart_to_cartesian(cP)
        return Trajectory(
            params=s,
            points=np.tile(x0, (s.shape[0], 1)),
            velocities=np.zeros((s.shape[0], 4)),
            diagnostics={"chart_residual": np.zeros(s.shape[0])},
        )
    k = cQ.phi - cP.phi
    if abs(k) < 1e-14:
        raise DegenerateConfiguration(
            "endpoints share phi; the linear-phi construction needs k != 0"
        )
    th0, th1 = cP.theta, cQ.theta
    if min(abs(th0), abs(th1)) < 1e-12:
        raise DegenerateConfiguration("theta must be nonzero at both endpoints")
    if np.sign(th0) != np.sign(th1):
        raise ThetaSignLoss(
            "theta endpoint signs differ; a theta = 0 crossing cannot be "
            "represented"
        )
    for name, psi in (("P", cP.psi), ("Q", cQ.psi)):
        if abs(np.sin(psi)) < 1e-12:
            raise DegenerateConfiguration(
                f"psi of {name} lies on the singular lattice pi Z"
            )
    strip = int(np.floor(cP.psi / np.pi))
    if int(np.floor(cQ.psi / np.pi)) != strip:
        raise DegenerateConfiguration(
            "psi endpoints lie in different branch strips of arccot"
        )

    q0 = 1.0 / np.tan(cP.psi)
    q1 = 1.0 / np.tan(cQ.psi)
    x_cap0 = float(np.arctanh(1.0 / np.cosh(2.0 * th0)))
    x_cap1 = float(np.arctanh(1.0 / np.cosh(2.0 * th1)))
    integral = (x_cap0 - x_cap1) / k
    prof = bridge_function(q0, q1, integral, kind=bridge)

    n = _odd(n)
    s = np.linspace(0.0, 1.0, n)
    h_step = s[1] - s[0]
    q = prof(s)
    qdot = prof.derivative(s)
    g = k * cumulative_simpson_uniform(q, h_step) - x_cap0
    if float(np.max(g)) >= -1e-14:
        raise DegenerateConfiguration(
            "bridge integral drives theta to infinity inside the interval "
            f"(max g = {float(np.max(g)):.3e})"
        )
    hval = -np.tanh(g)  # = 1 / cosh(2 theta), in (0, 1)
    sign = np.sign(th0)
    p = sign * np.sqrt(1.0 - hval * hval) / hval  # = sinh(2 theta)
    theta = 0.5 * np.arcsinh(p)

    phi = cP.phi + k * s
    psi = (0.5 * np.pi - np.arctan(q)) + strip * np.pi
    phidot = np.full(n, k)
    psidot = -qdot / (1.0 + q * q)
    thetadot = 0.5 * k * q * p

    endpoint_err = float(
        np.linalg.norm(
            charts.chart_to_cartesian(
                GlobalChartPoint(float(phi[-1]), float(psi[-1]), float(theta[-1]))
            )
            - charts.chart_to_cartesian(cQ)
        )
    )
    return _chart_curve_to_trajectory(
        s, phi, psi, theta, phidot, psidot, thetadot,
        extra_diag={"endpoint_error": endpoint_err},
    )


def connect_tx_constant_psi(P, Q, n: int = 257) -> Trajectory:
    """Horizontal span{T, X} curve with constant psi, when one exists.

    The relation cot(psi) = ln(tanh theta1 / tanh theta0) / (phi1 - phi0)
    fixes psi up to the branch already chosen by the endpoints; the curve
    then follows phi(theta) = phi0 + tan(psi) ln(tanh theta / tanh theta0)
    with theta moving linearly.  Endpoints are hit exactly.

    Raises:
        IncompatiblePair: psi coordinates differ, sit on the singular
            lattice, or do not match the value the endpoints force.
        DomainError: theta values of opposite sign or zero (the logarithm
            requires tanh theta1 / tanh theta0 > 0).
    """
    cP = _as_chart_point(P)
    cQ = _as_chart_point(Q)
    if abs(cP.psi - cQ.psi) > 1e-10:
        raise IncompatiblePair("constant-psi curve needs equal psi coordinates")
    psi0 = cP.psi
    if abs(np.sin(psi0)) < 1e-12:
        raise IncompatiblePair("psi on the lattice pi Z admits no such curve")
    th0, th1 = cP.theta, cQ.theta
    if min(abs(th0), abs(th1)) < 1e-12 or np.sign(th0) != np.sign(th1):
        raise DomainError(
            "constant-psi curve needs nonzero same-sign theta endpoints"
        )
    k = cQ.phi - cP.phi
    big_l = float(np.log(np.tanh(th1) / np.tanh(th0)))
    if abs(k) < 1e-14:
        if abs(big_l) < 1e-14:
            raise IncompatiblePair("endpoints coincide; nothing to connect")
        raise IncompatiblePair(
            "equal phi with distinct theta would force psi onto the lattice"
        )
    cot_req = big_l / k
    cot_have = 1.0 / np.tan(psi0)
    if abs(cot_have - cot_req) > 1e-9 * (1.0 + abs(cot_req)):
        raise IncompatiblePair(
            f"endpoint psi = {psi0!r} does not satisfy the constant-psi "
            f"relation (cot psi must be {cot_req!r})"
        )

    n = _odd(n)
    s = np.linspace(0.0, 1.0, n)
    if abs(big_l) < 1e-14:  # equal theta: phi moves at fixed psi
        theta = np.full(n, th0)
        thetadot = np.zeros(n)
        phi = cP.phi + k * s
        phidot = np.full(n, k)
    else:
        theta = th0 + (th1 - th0) * s
        thetadot = np.full(n, th1 - th0)
        tan_psi = k / big_l
        phi = cP.phi + tan_psi * np.log(np.tanh(theta) / np.tanh(th0))
        phidot = tan_psi * thetadot * 2.0 / np.sinh(2.0 * theta)
    psi = np.full(n, psi0)
    psidot = np.zeros(n)
    return _chart_curve_to_trajectory(s, phi, psi, theta, phidot, psidot, thetadot)


def _hermite_profile(psi0: float, psi1: float, m0: float, m1: float):
    """Cubic Hermite (value, derivative, second derivative) on [0, 1]."""

    def value(u):
        u = np.asarray(u, dtype=float)
        h00 = 2 * u**3 - 3 * u**2 + 1
        h10 = u**3 - 2 * u**2 + u
        h01 = -2 * u**3 + 3 * u**2
        h11 = u**3 - u**2
        return h00 * psi0 + h10 * m0 + h01 * psi1 + h11 * m1

    def deriv(u):
        u = np.asarray(u, dtype=float)
        return (
            (6 * u**2 - 6 * u) * psi0
            + (3 * u**2 - 4 * u + 1) * m0
            + (-6 * u**2 + 6 * u) * psi1
            + (3 * u**2 - 2 * u) * m1
        )

    def deriv2(u):
        u = np.asarray(u, dtype=float)
        return (
            (12 * u - 6) * psi0
            + (6 * u - 4) * m0
            + (-12 * u + 6) * psi1
            + (6 * u - 2) * m1
        )

    return value, deriv, deriv2


def connect_xy(
    P,
    Q,
    psi_profile: Optional[Callable[[np.ndarray], tuple]] = None,
    n: int = 257,
) -> Trajectory:
    """Horizontal span{X, Y} curve from P to Q.

    The default construction drives phi linearly and designs the radial
    profile p(s) = cosh(2 theta(s)) directly: a zero-slope cubic between
    the endpoint values c_i = cosh(2 theta_i) plus a quadratic bump
    fixing int_0^1 p = R = (psi1 - psi0)/(phi0 - phi1); psi then follows
    from psi' = (phi0 - phi1) p, which hits psi1 exactly and makes the
    horizontality defect vanish identically.  Success is guaranteed when
    R >= (c0 + c1)/2; for 1 < R < (c0 + c1)/2 the bump may push p below
    1, which raises a typed error.

    A custom ``psi_profile`` callable may be supplied instead; it must
    accept an array of parameters in [0, 1] and return the triple
    (psi, psi', psi'').  theta and phi are then recovered from
    cosh(2 theta) = psi'/q with a bridge profile q matching the endpoint
    radii and int q = phi0 - phi1.

    Raises:
        DegenerateConfiguration: vanishing or opposite-sign theta, equal
            phi, or R <= 1 (no curve of this shape exists).
        DomainError: the profile forces cosh(2 theta) below 1 somewhere.
    """
    cP = _as_chart_point(P)
    cQ = _as_chart_point(Q)
    th0, th1 = cP.theta, cQ.theta
    if min(abs(th0), abs(th1)) < 1e-12:
        raise DegenerateConfiguration("theta must be nonzero at both endpoints")
    if np.sign(th0) != np.sign(th1):
        raise DegenerateConfiguration("theta endpoint signs must agree")
    dphi = cP.phi - cQ.phi
    dpsi = cQ.psi - cP.psi
    c0 = float(np.cosh(2.0 * th0))
    c1 = float(np.cosh(2.0 * th1))
    sign = np.sign(th0)

    n = _odd(n)
    s = np.linspace(0.0, 1.0, n)
    h_step = s[1] - s[0]

    if psi_profile is None:
        if abs(dphi) < 1e-14:
            raise DegenerateConfiguration(
                "endpoints share phi; the linear-phi construction needs "
                "distinct phi"
            )
        ratio = dpsi / dphi
        if ratio <= 1.0:
            raise DegenerateConfiguration(
                f"(psi1 - psi0)/(phi0 - phi1) = {ratio:.6g} <= 1; no "
                "horizontal curve with monotone psi exists for this pair"
            )
        # cubic profile: zero-slope base between the endpoint radii plus
        # a quadratic bump fixing the integral (composite Simpson is
        # exact on cubics, so psi(1) lands on psi1 to rounding)
        bump = 6.0 * (ratio - 0.5 * (c0 + c1))
        base = (2 * s**3 - 3 * s**2 + 1) * c0 + (-2 * s**3 + 3 * s**2) * c1
        p = base + bump * s * (1.0 - s)
        pdot = (6 * s**2 - 6 * s) * (c0 - c1) + bump * (1.0 - 2.0 * s)
        bad = np.where(p < 1.0 + 1e-14)[0]
        if bad.size:
            raise DomainError(
                f"cosh(2 theta) = {p[bad[0]]:.6g} < 1 at s = {s[bad[0]]:.6g}; "
                "the endpoint ratio is too small for this profile"
            )
        psidot = dphi * p
        psi = cP.psi + dphi * cumulative_simpson_uniform(p, h_step)
        phidot = np.full(n, -dphi)
        phi = cP.phi - dphi * s
    else:
        psi = np.asarray(psi_profile(s)[0], dtype=float)
        psidot = np.asarray(psi_profile(s)[1], dtype=float)
        psiddot = np.asarray(psi_profile(s)[2], dtype=float)
        if abs(psi[0] - cP.psi) > 1e-12 or abs(psi[-1] - cQ.psi) > 1e-12:
            raise DegenerateConfiguration("psi profile misses its endpoints")
        q0 = psidot[0] / c0
        q1 = psidot[-1] / c1
        prof = bridge_function(q0, q1, dphi)
        q = prof(s)
        qdot = prof.derivative(s)
        if np.any(np.abs(q) < 1e-14):
            raise DomainError("profile quotient q vanishes inside the interval")
        p = psidot / q
        bad = np.where(p < 1.0 + 1e-14)[0]
        if bad.size:
            raise DomainError(
                f"cosh(2 theta) = psi'/q = {p[bad[0]]:.6g} < 1 at s = "
                f"{s[bad[0]]:.6g}; endpoints not connectable with this profile"
            )
        pdot = (psiddot - p * qdot) / q
        phidot = -psidot / p  # = -q
        phi = cP.phi - cumulative_simpson_uniform(psidot / p, h_step)

    theta = sign * 0.5 * np.arccosh(p)
    thetadot = sign * pdot / (2.0 * np.sqrt(p * p - 1.0))

    endpoint_err = float(
        np.linalg.norm(
            charts.chart_to_cartesian(
                GlobalChartPoint(float(phi[-1]), float(psi[-1]), float(theta[-1]))
            )
            - charts.chart_to_cartesian(cQ)
        )
    )
    traj = _chart_curve_to_trajectory(
        s, phi, psi, theta, phidot, psidot, thetadot,
        extra_diag={"endpoint_error": endpoint_err},
    )
    # report the span{X, Y} defect instead of the span{T, X} one
    n_pts = len(traj)
    res = np.empty(n_pts)
    for k in range(n_pts):
        res[k] = horizontality_residual(
            traj.points[k], traj.velocities[k], Distribution.SPAN_XY
        )
    traj.diagnostics["chart_residual"] = psidot + phidot * np.cosh(2.0 * theta)
    traj.diagnostics["horiz_residual"] = res
    return traj


def connect_xy_constant_theta(P, Q) -> Trajectory:
    """Linear span{X, Y} connection at constant theta, when one exists.

    Existence requires cosh(2 theta0) = (psi1 - psi0) / (phi0 - phi1) with
    equal endpoint theta; phi then moves linearly while psi compensates.

    Raises:
        IncompatiblePair: ratio below 1, unequal theta, or theta
            inconsistent with the ratio.
    """
    cP = _as_chart_point(P)
    cQ = _as_chart_point(Q)
    if abs(cP.theta - cQ.theta) > 1e-12:
        raise IncompatiblePair("constant-theta curve needs equal theta")
    dphi = cP.phi - cQ.phi
    if abs(dphi) < 1e-14:
        raise IncompatiblePair("constant-theta curve needs distinct phi")
    ratio = (cQ.psi - cP.psi) / dphi
    if ratio < 1.0:
        raise IncompatiblePair(
            f"(psi1 - psi0)/(phi0 - phi1) = {ratio:.6g} < 1 admits no "
            "constant-theta horizontal curve"
        )
    if abs(np.cosh(2.0 * cP.theta) - ratio) > 1e-9 * (1.0 + ratio):
        raise IncompatiblePair(
            "theta is inconsistent with the endpoint ratio: need "
            f"cosh(2 theta) = {ratio!r}"
        )

    n = _odd(257)
    s = np.linspace(0.0, 1.0, n)
    phi = cP.phi + (cQ.phi - cP.phi) * s
    psi = cP.psi - ratio * (phi - cP.phi)
    theta = np.full(n, cP.theta)
    phidot = np.full(n, cQ.phi - cP.phi)
    psidot = -ratio * phidot
    thetadot = np.zeros(n)
    traj = _chart_curve_to_trajectory(s, phi, psi, theta, phidot, psidot, thetadot)
    traj.diagnostics["chart_residual"] = psidot + phidot * np.cosh(2.0 * theta)
    return traj


def piecewise_timelike_tx(P, Q, n_per_segment: int = 85) -> Trajectory:
    """Piecewise-smooth timelike horizontal span{T, X} path from P to Q.

    Works for any endpoints sharing the radial coordinate theta: move psi
    at fixed phi (timelike for any psi rate), slide phi along the
    half-lattice psi = pi/2 + n pi (horizontal and timelike at any
    theta), then move psi again.  Corner parameters are recorded in
    ``diagnostics["corner_params"]``.

    Raises:
        IncompatiblePair: endpoint theta values differ.
    """
    cP = _as_chart_point(P)
    cQ = _as_chart_point(Q)
    if abs(cP.theta - cQ.theta) > 1e-12:
        raise IncompatiblePair(
            "piecewise construction requires equal endpoint theta"
        )
    theta0 = cP.theta
    half = 0.5 * np.pi
    lattice = half + np.pi * np.round((cP.psi - half) / np.pi)

    segments = []  # (kind, start, end, fixed_phi_or_psi)
    if abs(cP.psi - lattice) > 1e-14:
        segments.append(("psi", cP.psi, lattice, cP.phi))
    if abs(cQ.phi - cP.phi) > 1e-14:
        segments.append(("phi", cP.phi, cQ.phi, lattice))
    if abs(cQ.psi - lattice) > 1e-14:
        segments.append(("psi", lattice, cQ.psi, cQ.phi))
    if not segments:
        raise IncompatiblePair("endpoints coincide; nothing to connect")

    n_seg = _odd(n_per_segment)
    m = len(segments)
    params = []
    phis = []
    psis = []
    phidots = []
    psidots = []
    corners = []
    for j, (kind, a, b, fixed) in enumerate(segments):
        u = np.linspace(0.0, 1.0, n_seg)
        s_seg = (j + u) / m
        rate = (b - a) * m  # d/ds of the moving coordinate
        if kind == "psi":
            phi_seg = np.full(n_seg, fixed)
            psi_seg = a + (b - a) * u
            phid = np.zeros(n_seg)
            psid = np.full(n_seg, rate)
        else:
            phi_seg = a + (b - a) * u
            psi_seg = np.full(n_seg, fixed)
            phid = np.full(n_seg, rate)
            psid = np.zeros(n_seg)
        if j > 0:
            corners.append(float(s_seg[0]))
            s_seg = s_seg[1:]
            phi_seg = phi_seg[1:]
            psi_seg = psi_seg[1:]
            phid = phid[1:]
            psid = psid[1:]
        params.append(s_seg)
        phis.append(phi_seg)
        psis.append(psi_seg)
        phidots.append(phid)
        psidots.append(psid)

    s = np.concatenate(params)
    phi = np.concatenate(phis)
    psi = np.concatenate(psis)
    phidot = np.concatenate(phidots)
    psidot = np.concatenate(psidots)
    theta = np.full(s.shape[0], theta0)
    thetadot = np.zeros(s.shape[0])
    traj = _chart_curve_to_trajectory(s, phi, psi, theta, phidot, psidot, thetadot)
    traj.diagnostics["corner_params"] = np.asarray(corners)
    return traj
