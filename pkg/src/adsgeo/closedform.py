"""Closed-form geodesic families and the conserved first integrals.

Constant-coordinate families
----------------------------
For constant frame components the Hamiltonian flow through the identity is
a one-parameter matrix exponential ``x(s) = e exp(s M)`` with
``M = -tau J + sigma E1`` (span{T, X}) or ``M = sigma E1 + kappa E2``
(span{X, Y}).  Since ``M^2 = (sigma^2 - tau^2) U`` resp.
``M^2 = (sigma^2 + kappa^2) U``, the exponential collapses to a
circular/hyperbolic/parabolic pair of scalar factors and the unit-speed
families are

    timelike  (span{T,X}): x = (cos s, -cosh(psi) sin s, sinh(psi) sin s, 0)
    spacelike (span{T,X}): x = (cosh s, -sinh(psi) sinh s, cosh(psi) sinh s, 0)
    lightlike (span{T,X}): x = (1, -a s, b s, 0),  a, b in {-1, +1}
    span{X,Y}:             x = (cosh s, 0, cos(psi) sinh s, sin(psi) sinh s)

The same scalar pair propagates the momentum covector.

Cartesian span{T, X} integrals
------------------------------
In the null-pair coordinates

    u = (x1 + x4, x1 - x4, x2 + x3, x2 - x3),
    v = (xi1 + xi4, xi1 - xi4, xi2 + xi3, xi2 - xi3),

the quadric reads ``u1 u2 + u3 u4 = 1`` and the flow conserves

    A = u1 v1 + u3 v3,   B = u2 v2 + u4 v4,
    C = u2 v3 - u4 v1,   D = u1 v4 - u3 v2,

with ``C D = 1`` exactly on unit-speed timelike geodesics through the
identity.  Because the vertical pairing kappa = (A - B)/2 is itself
conserved, each u-component satisfies a constant-coefficient linear ODE
and the geodesic is elementary for A - B = 2 and for |A - B| > 2.

Cartesian span{X, Y} integrals
------------------------------
In complex coordinates ``z = x1 + i x2, w = x3 + i x4`` (and likewise
``ph = xi1 + i xi2, ps = xi3 + i xi4``) the conserved quantities are
``z ps + w ph = C + iD`` and ``z conj(ph) + w conj(ps) = A - iB``, with
normalization ``C^2 + D^2 = 1``.  The position factors through another
constant-coefficient equation, giving

    z = e^{iBs} (cosh(sg s) - (iB/sg) sinh(sg s)),
    w = (C + iD) e^{-iBs} sinh(sg s)/sg,         sg = sqrt(1 - B^2),

which covers oscillatory (|B| > 1), exponential (|B| < 1) and the
degenerate |B| = 1 regimes in one expression.

Chart-parametric families
-------------------------
The local-chart Hamiltonians with conserved momenta (xi1, xi2 = 0) reduce
to a single pendulum-type equation for phi whose solutions split on the
sign of xi1^2 - phi'(0)^2; the chart angles follow by elementary
antiderivatives.  :func:`parametric_geodesic` evaluates all cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import algebra, hamiltonian
from .errors import NormalizationError, OutOfDomain, UnsupportedCase
from .horizontality import Distribution, Trajectory

__all__ = [
    "ConstGeodesicSpec",
    "CartesianGeodesicSpec",
    "ParametricGeodesicSpec",
    "CartesianIntegralsTX",
    "ComplexIntegralsXY",
    "const_geodesic",
    "const_geodesic_velocity",
    "const_geodesic_momentum",
    "sample_const_geodesic",
    "vertical_line",
    "vertical_line_velocity",
    "sample_vertical_line",
    "first_integrals_tx",
    "first_integrals_xy",
    "cartesian_geodesic_tx",
    "sample_cartesian_geodesic_tx",
    "cartesian_geodesic_xy",
    "sample_cartesian_geodesic_xy",
    "parametric_geodesic",
    "sample_parametric_geodesic",
    "parametric_initial_state",
    "parametric_chart_state",
]

_CASE_TOL = 1e-12


# ---------------------------------------------------------------------------
# Constant-coordinate families


@dataclass(frozen=True)
class ConstGeodesicSpec:
    """Unit-speed geodesic with constant horizontal components.

    ``causal`` is one of ``"timelike"``, ``"spacelike"``, ``"lightlike"``
    for span{T, X}; span{X, Y} admits only ``"spacelike"``.  ``psi`` is
    the hyperbolic (span{T, X}) or circular (span{X, Y}) angle of the
    constant components; lightlike rays use the two signs instead.
    """

    distribution: Distribution
    causal: str = "timelike"
    psi: float = 0.0
    sign_alpha: int = 1
    sign_beta: int = 1

    def __post_init__(self) -> None:
        if self.causal not in ("timelike", "spacelike", "lightlike"):
            raise ValueError(f"unknown causal type {self.causal!r}")
        if self.distribution is Distribution.SPAN_XY and self.causal != "spacelike":
            raise UnsupportedCase(
                "span{X, Y} has positive-definite horizontal metric; only "
                "spacelike constant-component geodesics exist"
            )
        if self.causal == "lightlike" and (
            abs(self.sign_alpha) != 1 or abs(self.sign_beta) != 1
        ):
            raise ValueError("lightlike signs must be +1 or -1")


def _const_data(spec: ConstGeodesicSpec):
    """Constant momenta (tau, sigma, kappa) and the scalar exponential pair.

    Returns (xi0, e_M, f, g) where x(s) = f(s) e + g(s) e_M and the same
    factors propagate the momentum row against its own structure matrix.
    """
    if spec.distribution is Distribution.SPAN_TX:
        if spec.causal == "timelike":
            tau, sigma = np.cosh(spec.psi), np.sinh(spec.psi)
            f, g = np.cos, np.sin
        elif spec.causal == "spacelike":
            tau, sigma = np.sinh(spec.psi), np.cosh(spec.psi)
            f, g = np.cosh, np.sinh
        else:
            tau, sigma = float(spec.sign_alpha), float(spec.sign_beta)
            f, g = np.ones_like, lambda s: np.asarray(s, dtype=float)
        kappa = 0.0
        m_pos = -tau * algebra.J + sigma * algebra.E1
        m_mom = -tau * algebra.J - sigma * algebra.E1
    else:
        sigma, kappa = np.cos(spec.psi), np.sin(spec.psi)
        tau = 0.0
        f, g = np.cosh, np.sinh
        m_pos = sigma * algebra.E1 + kappa * algebra.E2
        m_mom = -sigma * algebra.E1 - kappa * algebra.E2
    xi0 = np.array([0.0, tau, sigma, kappa])
    return xi0, m_pos, m_mom, f, g


def const_geodesic(spec: ConstGeodesicSpec, s) -> np.ndarray:
    """Point(s) of a constant-component geodesic through the identity.

    Scalar ``s`` gives a 4-vector; an array gives shape (n, 4).
    """
    s = np.asarray(s, dtype=float)
    _, m_pos, _, f, g = _const_data(spec)
    e_m = algebra.IDENTITY @ m_pos
    out = np.multiply.outer(f(s), algebra.IDENTITY) + np.multiply.outer(
        g(s), e_m
    )
    return out


def const_geodesic_velocity(spec: ConstGeodesicSpec, s) -> np.ndarray:
    """Velocity of :func:`const_geodesic` (derivative of the scalar pair)."""
    s = np.asarray(s, dtype=float)
    _, m_pos, _, f, _ = _const_data(spec)
    e_m = algebra.IDENTITY @ m_pos
    if f is np.cos:
        fd, gd = -np.sin(s), np.cos(s)
    elif f is np.cosh:
        fd, gd = np.sinh(s), np.cosh(s)
    else:  # parabolic (lightlike)
        fd, gd = np.zeros_like(s), np.ones_like(s)
    return np.multiply.outer(fd, algebra.IDENTITY) + np.multiply.outer(gd, e_m)


def const_geodesic_momentum(spec: ConstGeodesicSpec, s) -> np.ndarray:
    """Momentum covector along a constant-component geodesic."""
    s = np.asarray(s, dtype=float)
    xi0, _, m_mom, f, g = _const_data(spec)
    xi_m = xi0 @ m_mom
    return np.multiply.outer(f(s), xi0) + np.multiply.outer(g(s), xi_m)


def sample_const_geodesic(spec: ConstGeodesicSpec, s_grid) -> Trajectory:
    """Sampled constant-component geodesic with momenta and diagnostics."""
    s_grid = np.asarray(s_grid, dtype=float)
    pts = const_geodesic(spec, s_grid)
    mom = const_geodesic_momentum(spec, s_grid)
    velocities, diag = hamiltonian.flow_outputs(pts, mom, spec.distribution)
    return Trajectory(
        params=s_grid, points=pts, velocities=velocities, momenta=mom,
        diagnostics=diag,
    )


def vertical_line(dist: Distribution, s) -> np.ndarray:
    """Vertical (non-horizontal) one-parameter subgroup through identity.

    span{T, X}: the hyperbola (cosh s, 0, 0, -sinh s), whose velocity is
    everywhere -Y; span{X, Y}: the circle (cos s, sin s, 0, 0), whose
    velocity is everywhere -T.
    """
    s = np.asarray(s, dtype=float)
    z = np.zeros_like(s)
    if dist is Distribution.SPAN_TX:
        return np.stack([np.cosh(s), z, z, -np.sinh(s)], axis=-1)
    return np.stack([np.cos(s), np.sin(s), z, z], axis=-1)


def vertical_line_velocity(dist: Distribution, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    z = np.zeros_like(s)
    if dist is Distribution.SPAN_TX:
        return np.stack([np.sinh(s), z, z, -np.cosh(s)], axis=-1)
    return np.stack([-np.sin(s), np.cos(s), z, z], axis=-1)


def sample_vertical_line(dist: Distribution, s_grid) -> Trajectory:
    s_grid = np.asarray(s_grid, dtype=float)
    pts = vertical_line(dist, s_grid)
    vel = vertical_line_velocity(dist, s_grid)
    n = s_grid.shape[0]
    hres = np.empty(n)
    for k in range(n):
        mat = algebra.E2 if dist is Distribution.SPAN_TX else algebra.J
        hres[k] = algebra.minkowski_inner(pts[k] @ mat, vel[k])
    man = np.array([algebra.manifold_residual(x) for x in pts])
    return Trajectory(
        params=s_grid,
        points=pts,
        velocities=vel,
        diagnostics={"manifold_residual": man, "horiz_residual": hres},
    )


# ---------------------------------------------------------------------------
# First integrals


class CartesianIntegralsTX(NamedTuple):
    A: float
    B: float
    C: float
    D: float


class ComplexIntegralsXY(NamedTuple):
    c_plus_id: complex
    a_minus_ib: complex


def _null_pair(x: np.ndarray) -> np.ndarray:
    return np.array([x[0] + x[3], x[0] - x[3], x[1] + x[2], x[1] - x[2]])


def _from_null_pair(u: np.ndarray) -> np.ndarray:
    return 0.5 * np.array([u[0] + u[1], u[2] + u[3], u[2] - u[3], u[0] - u[1]])


def first_integrals_tx(state: hamiltonian.PhaseState) -> CartesianIntegralsTX:
    """Conserved integrals (A, B, C, D) of the span{T, X} flow."""
    u = _null_pair(np.asarray(state.x, dtype=float))
    v = _null_pair(np.asarray(state.xi, dtype=float))
    return CartesianIntegralsTX(
        A=float(u[0] * v[0] + u[2] * v[2]),
        B=float(u[1] * v[1] + u[3] * v[3]),
        C=float(u[1] * v[2] - u[3] * v[0]),
        D=float(u[0] * v[3] - u[2] * v[1]),
    )


def first_integrals_xy(state: hamiltonian.PhaseState) -> ComplexIntegralsXY:
    """Conserved complex integrals of the span{X, Y} flow."""
    x = np.asarray(state.x, dtype=float)
    xi = np.asarray(state.xi, dtype=float)
    z = complex(x[0], x[1])
    w = complex(x[2], x[3])
    ph = complex(xi[0], xi[1])
    ps = complex(xi[2], xi[3])
    return ComplexIntegralsXY(
        c_plus_id=z * ps + w * ph,
        a_minus_ib=z * ph.conjugate() + w * ps.conjugate(),
    )


# ---------------------------------------------------------------------------
# Cartesian span{T, X} geodesics from the first integrals


@dataclass(frozen=True)
class CartesianGeodesicSpec:
    """Values of the conserved integrals selecting a unit-speed timelike
    span{T, X} geodesic through the identity.  Requires C D = 1."""

    A: float
    B: float
    C: float
    D: float

    def __post_init__(self) -> None:
        if abs(self.C * self.D - 1.0) > 1e-10:
            raise NormalizationError(
                f"unit-timelike normalization C*D = 1 violated: "
                f"C*D = {self.C * self.D!r}"
            )


def _u_factors(mu: float, s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Scalar pair (cosh(om*s), sinh(om*s)/om) with om^2 = mu^2 - 1.

    Only the parabolic boundary mu = 1 and the hyperbolic range |mu| > 1
    are reachable here; the oscillatory range is rejected upstream.
    """
    if abs(mu * mu - 1.0) <= _CASE_TOL * max(1.0, mu * mu):
        return np.ones_like(s), s.copy()
    om = np.sqrt(mu * mu - 1.0)
    return np.cosh(om * s), np.sinh(om * s) / om


def _tx_u_components(spec: CartesianGeodesicSpec, s: np.ndarray):
    """Closed-form null-pair components and their derivatives.

    Because kappa = (A - B)/2 is conserved, u1 and u4 satisfy
    u'' + (A - B) u' + u = 0 while u2 and u3 satisfy the equation with the
    opposite drift sign; initial data come from u(0) = (1, 1, 0, 0) and
    u'(0) = (0, 0, -D, -C).
    """
    mu = 0.5 * (spec.A - spec.B)
    ch, shc = _u_factors(mu, s)  # cosh(om s), sinh(om s)/om
    em = np.exp(-mu * s)
    ep = np.exp(mu * s)
    u1 = em * (ch + mu * shc)
    u2 = ep * (ch - mu * shc)
    u3 = -spec.D * ep * shc
    u4 = -(1.0 / spec.D) * em * shc
    # derivatives (using (d/ds) of the factor products; om^2 - mu^2 = -1)
    du1 = -em * shc
    du2 = -ep * shc
    du3 = -spec.D * ep * (mu * shc + ch)
    du4 = -(1.0 / spec.D) * em * (ch - mu * shc)
    return np.stack([u1, u2, u3, u4]), np.stack([du1, du2, du3, du4])


def _tx_momenta_from_u(spec: CartesianGeodesicSpec, u: np.ndarray) -> np.ndarray:
    """Recover the momentum null-pair from the integrals and u."""
    v1 = spec.A * u[1] - spec.C * u[2]
    v2 = spec.B * u[0] - spec.D * u[3]
    v3 = spec.C * u[0] + spec.A * u[3]
    v4 = spec.D * u[1] + spec.B * u[2]
    return np.stack([v1, v2, v3, v4])


def _check_tx_case(spec: CartesianGeodesicSpec) -> None:
    gap = spec.A - spec.B
    if abs(gap - 2.0) <= _CASE_TOL * max(1.0, abs(gap)):
        return
    if abs(gap) > 2.0:
        return
    raise UnsupportedCase(
        f"no closed form implemented for A - B = {gap!r} "
        "(need A - B = 2 or |A - B| > 2)"
    )


def sample_cartesian_geodesic_tx(
    spec: CartesianGeodesicSpec, s_grid
) -> Trajectory:
    """Sampled Cartesian span{T, X} geodesic with momenta and diagnostics."""
    _check_tx_case(spec)
    s = np.asarray(s_grid, dtype=float)
    u, _ = _tx_u_components(spec, s)
    v = _tx_momenta_from_u(spec, u)
    pts = np.stack([_from_null_pair(u[:, k]) for k in range(s.shape[0])])
    mom = np.stack([_from_null_pair(v[:, k]) for k in range(s.shape[0])])
    velocities, diag = hamiltonian.flow_outputs(pts, mom, Distribution.SPAN_TX)
    diag["u_constraint_residual"] = u[0] * u[1] + u[2] * u[3] - 1.0
    return Trajectory(
        params=s, points=pts, velocities=velocities, momenta=mom,
        diagnostics=diag,
    )


def cartesian_geodesic_tx(spec: CartesianGeodesicSpec, s: float) -> np.ndarray:
    """Point of the Cartesian span{T, X} geodesic at parameter ``s``."""
    _check_tx_case(spec)
    u, _ = _tx_u_components(spec, np.asarray([float(s)]))
    return _from_null_pair(u[:, 0])


# ---------------------------------------------------------------------------
# Cartesian span{X, Y} geodesics


def _xy_zw(B: float, C: float, D: float, s: np.ndarray):
    """Closed-form complex pair (z, w) and derivatives for span{X, Y}."""
    if abs(C * C + D * D - 1.0) > 1e-10:
        raise NormalizationError(
            f"unit-speed normalization C^2 + D^2 = 1 violated: "
            f"C^2 + D^2 = {C * C + D * D!r}"
        )
    h0 = complex(C, -D)
    rot = np.exp(1j * B * s)
    if abs(1.0 - B * B) <= _CASE_TOL:
        ch = np.ones_like(s).astype(complex)
        shc = s.astype(complex)
    else:
        sg = np.sqrt(complex(1.0 - B * B, 0.0))
        ch = np.cosh(sg * s)
        shc = np.sinh(sg * s) / sg
    z = rot * (ch - 1j * B * shc)
    w = h0.conjugate() * np.conj(rot) * shc
    # z' = w h, w' = z conj(h) with h = h0 e^{2iBs}
    h = h0 * rot * rot
    dz = w * h
    dw = z * np.conj(h)
    return z, w, dz, dw


def sample_cartesian_geodesic_xy(
    B: float, C: float, D: float, s_grid, A: float = 0.0
) -> Trajectory:
    """Sampled Cartesian span{X, Y} geodesic with momenta and diagnostics.

    The integral ``A`` does not affect the position trajectory (it only
    rotates the momentum gauge); it defaults to 0.
    """
    s = np.asarray(s_grid, dtype=float)
    z, w, _, _ = _xy_zw(B, C, D, s)
    pts = np.stack([z.real, z.imag, w.real, w.imag], axis=-1)
    cpid = complex(C, D)
    amib = complex(A, -B)
    ph = z * amib.conjugate() - np.conj(w) * cpid
    ps = np.conj(z) * cpid - w * amib.conjugate()
    mom = np.stack([ph.real, ph.imag, ps.real, ps.imag], axis=-1)
    velocities, diag = hamiltonian.flow_outputs(pts, mom, Distribution.SPAN_XY)
    return Trajectory(
        params=s, points=pts, velocities=velocities, momenta=mom,
        diagnostics=diag,
    )


def cartesian_geodesic_xy(B: float, C: float, D: float, s: float) -> np.ndarray:
    """Point of the Cartesian span{X, Y} geodesic at parameter ``s``."""
    z, w, _, _ = _xy_zw(B, C, D, np.asarray([float(s)]))
    return np.array([z[0].real, z[0].imag, w[0].real, w[0].imag])


# ---------------------------------------------------------------------------
# Chart-parametric geodesics


@dataclass(frozen=True)
class ParametricGeodesicSpec:
    """Closed-form chart geodesic through the chart origin line.

    ``chart`` is ``"timelike"``, ``"spacelike"`` or ``"subriemannian"``;
    ``phi_dot0`` is the initial radial speed phi'(0); ``chi2_dot`` the
    (constant) speed of the cyclic angle chi2; ``chi2_0`` its offset.  The
    second chart momentum xi2 is identically zero for these families, and
    the first is xi1 = chi2_dot in the timelike/spacelike charts and
    xi1 = -chi2_dot in the sub-Riemannian chart.
    """

    chart: str
    phi_dot0: float
    chi2_dot: float = 0.0
    chi2_0: float = 0.0

    def __post_init__(self) -> None:
        if self.chart not in ("timelike", "spacelike", "subriemannian"):
            raise ValueError(f"unknown chart {self.chart!r}")

    @property
    def xi1(self) -> float:
        if self.chart == "subriemannian":
            return -self.chi2_dot
        return self.chi2_dot


def _continuous_arctan_scaled(u: np.ndarray, k: float) -> np.ndarray:
    """Continuous branch of arctan(k tan u) agreeing with u at multiples
    of pi (valid for k > 0; exact for scalar or array input)."""
    c = np.cos(u)
    sn = np.sin(u)
    return u + np.arctan((k - 1.0) * sn * c / (c * c + k * sn * sn))


def _parametric_components(spec: ParametricGeodesicSpec, s: np.ndarray):
    """(sin phi | sinh phi, d(sin phi)/ds, chi1) for each case."""
    C = float(spec.phi_dot0)
    xi1 = float(spec.xi1)
    gap = xi1 * xi1 - C * C
    boundary = abs(gap) <= _CASE_TOL * max(1.0, C * C, xi1 * xi1)

    if spec.chart == "timelike":
        if boundary:
            sig = C * s
            dsig = np.full_like(s, C)
        elif gap > 0.0:  # xi1^2 > C^2
            nu = np.sqrt(gap)
            sig = (C / nu) * np.sinh(nu * s)
            dsig = C * np.cosh(nu * s)
        else:  # xi1^2 < C^2
            nu = np.sqrt(-gap)
            sig = (C / nu) * np.sin(nu * s)
            dsig = C * np.cos(nu * s)
        if np.any(np.abs(sig) >= 1.0):
            raise OutOfDomain("sin(phi) leaves (-1, 1); chart exited")
        if xi1 == 0.0:
            chi1 = np.zeros_like(s)
        elif boundary:
            chi1 = -xi1 * s + (xi1 / C) * np.arctanh(C * s)
        elif gap > 0.0:
            chi1 = -xi1 * s + np.arctanh((xi1 / nu) * np.tanh(nu * s))
        else:
            # within the domain |sin phi| < 1 the argument stays inside
            # (-1, 1); the clip only absorbs boundary roundoff
            chi1 = -xi1 * s + np.arctanh(
                np.clip((xi1 / nu) * np.tan(nu * s), -1.0 + 1e-16, 1.0 - 1e-16)
            )
        chi2 = xi1 * s + spec.chi2_0
        return sig, dsig, chi1, chi2

    if spec.chart == "spacelike":
        nu = np.hypot(C, xi1)
        if nu == 0.0:
            sig = np.zeros_like(s)
            dsig = np.zeros_like(s)
            chi1 = np.zeros_like(s)
        else:
            sig = (C / nu) * np.sinh(nu * s)
            dsig = C * np.cosh(nu * s)
            chi1 = -xi1 * s + np.arctanh((xi1 / nu) * np.tanh(nu * s))
        chi2 = xi1 * s + spec.chi2_0
        return sig, dsig, chi1, chi2

    # sub-Riemannian chart
    if boundary:
        sig = C * s
        dsig = np.full_like(s, C)
        chi1 = xi1 * s - (xi1 / C) * np.arctan(C * s) if C != 0.0 else np.zeros_like(s)
    elif gap > 0.0:  # xi1^2 > C^2: bounded oscillation
        nu = np.sqrt(gap)
        k = abs(xi1) / nu
        sig = (C / nu) * np.sin(nu * s)
        dsig = C * np.cos(nu * s)
        chi1 = xi1 * s - np.sign(xi1) * _continuous_arctan_scaled(nu * s, k)
    else:  # xi1^2 < C^2
        nu = np.sqrt(-gap)
        sig = (C / nu) * np.sinh(nu * s)
        dsig = C * np.cosh(nu * s)
        chi1 = xi1 * s - np.arctan((xi1 / nu) * np.tanh(nu * s))
    chi2 = -xi1 * s + spec.chi2_0
    return sig, dsig, chi1, chi2


def parametric_geodesic(spec: ParametricGeodesicSpec, s: float):
    """Chart point of the parametric geodesic at parameter ``s``."""
    coords = sample_parametric_geodesic(spec, np.asarray([float(s)]))
    from . import charts  # local import to keep module load order simple

    cls = {
        "timelike": charts.TimelikeChartPoint,
        "spacelike": charts.SpacelikeChartPoint,
        "subriemannian": charts.SubRiemChartPoint,
    }[spec.chart]
    return cls(*(float(v) for v in coords[0]))


def sample_parametric_geodesic(
    spec: ParametricGeodesicSpec, s_grid
) -> np.ndarray:
    """Chart coordinates (phi, chi1, chi2) sampled along the geodesic."""
    s = np.asarray(s_grid, dtype=float)
    sig, _, chi1, chi2 = _parametric_components(spec, s)
    if spec.chart == "timelike":
        phi = np.arcsin(sig)
    else:
        phi = np.arcsinh(sig)
    return np.stack([phi, chi1, chi2], axis=-1)


def parametric_initial_state(
    spec: ParametricGeodesicSpec,
) -> hamiltonian.ChartPhaseState:
    """Chart phase state generating the same flow under integrate_chart."""
    psi0 = -spec.phi_dot0 if spec.chart == "timelike" else spec.phi_dot0
    return hamiltonian.ChartPhaseState(
        coords=np.array([0.0, 0.0, spec.chi2_0]),
        momenta=np.array([psi0, spec.xi1, 0.0]),
    )


def parametric_chart_state(
    spec: ParametricGeodesicSpec, s: float
) -> hamiltonian.ChartPhaseState:
    """Chart phase state (coords and momenta) at parameter ``s``.

    The radial momentum is psi = -phi' in the timelike chart and
    psi = +phi' in the other two.
    """
    sv = np.asarray([float(s)])
    sig, dsig, chi1, chi2 = _parametric_components(spec, sv)
    if spec.chart == "timelike":
        phi = float(np.arcsin(sig[0]))
        phidot = float(dsig[0] / np.sqrt(1.0 - sig[0] ** 2))
        psi = -phidot
    else:
        phi = float(np.arcsinh(sig[0]))
        phidot = float(dsig[0] / np.sqrt(1.0 + sig[0] ** 2))
        psi = phidot
    return hamiltonian.ChartPhaseState(
        coords=np.array([phi, float(chi1[0]), float(chi2[0])]),
        momenta=np.array([psi, spec.xi1, 0.0]),
    )
