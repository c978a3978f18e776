"""Coordinate charts on the quadric and their horizontality conditions.

The workhorse is the global trigonometric-hyperbolic parametrization

    x = (cos a cosh th, sin a cosh th, cos b sinh th, sin b sinh th),

written in the rotated angles ``phi = a + b``, ``psi = a - b``.  In these
coordinates the span{T, X} horizontality condition becomes the single
scalar equation

    phi' cos(psi) sinh(2 th) - 2 th' sin(psi) = 0,

and the horizontal components of a velocity are

    alpha = -(phi' cosh(2 th) + psi') / 2,
    beta  =  (phi' sin(psi) sinh(2 th) + 2 th' cos(psi)) / 2.

Three further local charts adapt to geodesics of a fixed causal type; each
writes the quadric as a product of circular/hyperbolic angles and carries a
diagonal induced metric:

* timelike chart      (|phi| < pi/2):   metric diag(-1, cos^2 phi, sin^2 phi)
* spacelike chart:                      metric diag( 1, cosh^2 phi, -sinh^2 phi)
* sub-Riemannian chart (|chi_i| < pi/2): metric diag( 1, -cosh^2 phi, sinh^2 phi)

In the first two the vertical direction is Y = d_chi1 - d_chi2; in the
third it is T = d_chi1 - d_chi2.  Angles are never reduced modulo 2 pi:
the pair (phi, psi) is only defined up to the joint lattice generated by
(2 pi, 2 pi) and (2 pi, -2 pi), so reducing each angle independently would
silently move a point to its antipode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import BranchAmbiguity, NotHorizontal, OutOfDomain

__all__ = [
    "GlobalChartPoint",
    "TimelikeChartPoint",
    "SpacelikeChartPoint",
    "SubRiemChartPoint",
    "chart_to_cartesian",
    "chart_pushforward",
    "cartesian_to_global_chart",
    "cartesian_to_chart",
    "chart_horizontality_residual",
    "chart_horizontal_coords",
    "chart_velocity_norm_sq",
    "local_chart_horizontality_residual",
    "random_points",
]


@dataclass(frozen=True)
class GlobalChartPoint:
    """Point in the global (phi, psi, theta) parametrization."""

    phi: float
    psi: float
    theta: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi, self.psi, self.theta)


@dataclass(frozen=True)
class TimelikeChartPoint:
    """Point in the chart adapted to timelike span{T, X} geodesics.

    Domain: |phi| < pi/2.
    """

    phi: float
    chi1: float
    chi2: float


@dataclass(frozen=True)
class SpacelikeChartPoint:
    """Point in the chart adapted to spacelike span{T, X} geodesics."""

    phi: float
    chi1: float
    chi2: float


@dataclass(frozen=True)
class SubRiemChartPoint:
    """Point in the chart adapted to span{X, Y} geodesics.

    Domain: |chi1| < pi/2 and |chi2| < pi/2.
    """

    phi: float
    chi1: float
    chi2: float


_HALF_PI = 0.5 * np.pi


def chart_to_cartesian(c) -> np.ndarray:
    """Ambient coordinates of a chart point (dispatch on the point type)."""
    if isinstance(c, GlobalChartPoint):
        a = 0.5 * (c.phi + c.psi)
        b = 0.5 * (c.phi - c.psi)
        ch, sh = np.cosh(c.theta), np.sinh(c.theta)
        return np.array(
            [np.cos(a) * ch, np.sin(a) * ch, np.cos(b) * sh, np.sin(b) * sh]
        )
    if isinstance(c, TimelikeChartPoint):
        if not abs(c.phi) < _HALF_PI:
            raise OutOfDomain("timelike chart requires |phi| < pi/2")
        return np.array(
            [
                np.cos(c.phi) * np.cosh(c.chi1),
                np.sin(c.phi) * np.cosh(c.chi2),
                np.sin(c.phi) * np.sinh(c.chi2),
                np.cos(c.phi) * np.sinh(c.chi1),
            ]
        )
    if isinstance(c, SpacelikeChartPoint):
        return np.array(
            [
                np.cosh(c.phi) * np.cosh(c.chi1),
                np.sinh(c.phi) * np.sinh(c.chi2),
                np.sinh(c.phi) * np.cosh(c.chi2),
                np.cosh(c.phi) * np.sinh(c.chi1),
            ]
        )
    if isinstance(c, SubRiemChartPoint):
        if not (abs(c.chi1) < _HALF_PI and abs(c.chi2) < _HALF_PI):
            raise OutOfDomain("sub-Riemannian chart requires |chi_i| < pi/2")
        return np.array(
            [
                np.cos(c.chi1) * np.cosh(c.phi),
                np.sin(c.chi1) * np.cosh(c.phi),
                np.cos(c.chi2) * np.sinh(c.phi),
                np.sin(c.chi2) * np.sinh(c.phi),
            ]
        )
    raise TypeError(f"not a chart point: {type(c).__name__}")


def chart_pushforward(c, cdot) -> np.ndarray:
    """Ambient velocity of a chart velocity ``cdot`` at chart point ``c``.

    ``cdot`` is the coordinate-velocity triple in the same order as the
    chart's fields: (phi', psi', theta') for the global chart and
    (phi', chi1', chi2') for the local charts.
    """
    d1, d2, d3 = (float(u) for u in cdot)
    if isinstance(c, GlobalChartPoint):
        a = 0.5 * (c.phi + c.psi)
        b = 0.5 * (c.phi - c.psi)
        adot = 0.5 * (d1 + d2)
        bdot = 0.5 * (d1 - d2)
        ch, sh = np.cosh(c.theta), np.sinh(c.theta)
        return np.array(
            [
                -adot * np.sin(a) * ch + d3 * np.cos(a) * sh,
                adot * np.cos(a) * ch + d3 * np.sin(a) * sh,
                -bdot * np.sin(b) * sh + d3 * np.cos(b) * ch,
                bdot * np.cos(b) * sh + d3 * np.sin(b) * ch,
            ]
        )
    if isinstance(c, TimelikeChartPoint):
        cp, sp = np.cos(c.phi), np.sin(c.phi)
        return np.array(
            [
                -d1 * sp * np.cosh(c.chi1) + d2 * cp * np.sinh(c.chi1),
                d1 * cp * np.cosh(c.chi2) + d3 * sp * np.sinh(c.chi2),
                d1 * cp * np.sinh(c.chi2) + d3 * sp * np.cosh(c.chi2),
                -d1 * sp * np.sinh(c.chi1) + d2 * cp * np.cosh(c.chi1),
            ]
        )
    if isinstance(c, SpacelikeChartPoint):
        cp, sp = np.cosh(c.phi), np.sinh(c.phi)
        return np.array(
            [
                d1 * sp * np.cosh(c.chi1) + d2 * cp * np.sinh(c.chi1),
                d1 * cp * np.sinh(c.chi2) + d3 * sp * np.cosh(c.chi2),
                d1 * cp * np.cosh(c.chi2) + d3 * sp * np.sinh(c.chi2),
                d1 * sp * np.sinh(c.chi1) + d2 * cp * np.cosh(c.chi1),
            ]
        )
    if isinstance(c, SubRiemChartPoint):
        cp, sp = np.cosh(c.phi), np.sinh(c.phi)
        return np.array(
            [
                d1 * np.cos(c.chi1) * sp - d2 * np.sin(c.chi1) * cp,
                d1 * np.sin(c.chi1) * sp + d2 * np.cos(c.chi1) * cp,
                d1 * np.cos(c.chi2) * cp - d3 * np.sin(c.chi2) * sp,
                d1 * np.sin(c.chi2) * cp + d3 * np.cos(c.chi2) * sp,
            ]
        )
    raise TypeError(f"not a chart point: {type(c).__name__}")


def cartesian_to_global_chart(p) -> GlobalChartPoint:
    """Canonical global-chart coordinates of an ambient point.

    The canonical representative has theta >= 0, with the circular angles
    a = atan2(x2, x1), b = atan2(x4, x3) (b := a on the degenerate locus
    theta = 0, making psi = 0 there).
    """
    p = algebra.require_on_manifold(p)
    rho = float(np.hypot(p[0], p[1]))
    if rho < 0.5:
        # cosh(theta) >= 1 on the quadric, so this cannot fire for valid
        # inputs; it guards against far-off-manifold data.
        raise BranchAmbiguity("x1 = x2 = 0 does not occur on the quadric")
    sigma = float(np.hypot(p[2], p[3]))
    theta = float(np.arcsinh(sigma))
    a = float(np.arctan2(p[1], p[0]))
    b = float(np.arctan2(p[3], p[2])) if sigma > 1e-15 else a
    return GlobalChartPoint(phi=a + b, psi=a - b, theta=theta)


def cartesian_to_chart(p, chart: str):
    """Inverse of a local chart, with explicit domain checks.

    ``chart`` is one of ``"timelike"``, ``"spacelike"``,
    ``"subriemannian"``.  Raises OutOfDomain when the point lies outside
    the chart's image rather than wrapping angles silently.
    """
    p = algebra.require_on_manifold(p)
    x1, x2, x3, x4 = (float(v) for v in p)
    if chart == "timelike":
        s_sq = x2 * x2 - x3 * x3
        c_sq = x1 * x1 - x4 * x4
        if c_sq <= 0.0 or x1 <= 0.0:
            raise OutOfDomain("timelike chart needs x1 > |x4|")
        if s_sq < -1e-12:
            raise OutOfDomain("timelike chart needs |x2| >= |x3|")
        sin_phi = np.sign(x2) * np.sqrt(max(s_sq, 0.0))
        phi = float(np.arcsin(np.clip(sin_phi, -1.0, 1.0)))
        chi1 = float(np.arctanh(x4 / x1))
        chi2 = float(np.arctanh(x3 / x2)) if abs(sin_phi) > 1e-15 else 0.0
        return TimelikeChartPoint(phi=phi, chi1=chi1, chi2=chi2)
    if chart == "spacelike":
        s_sq = x3 * x3 - x2 * x2
        if x1 <= 0.0 or x1 * x1 - x4 * x4 <= 0.0:
            raise OutOfDomain("spacelike chart needs x1 > |x4|")
        if s_sq < -1e-12:
            raise OutOfDomain("spacelike chart needs |x3| >= |x2|")
        sinh_phi = np.sign(x3) * np.sqrt(max(s_sq, 0.0))
        phi = float(np.arcsinh(sinh_phi))
        chi1 = float(np.arctanh(x4 / x1))
        chi2 = float(np.arctanh(x2 / x3)) if abs(sinh_phi) > 1e-15 else 0.0
        return SpacelikeChartPoint(phi=phi, chi1=chi1, chi2=chi2)
    if chart == "subriemannian":
        if x1 <= 0.0:
            raise OutOfDomain("sub-Riemannian chart needs x1 > 0")
        sigma = float(np.hypot(x3, x4))
        if sigma > 1e-15 and x3 <= 0.0:
            raise OutOfDomain("sub-Riemannian chart needs x3 > 0 off phi = 0")
        phi = float(np.arcsinh(np.sign(x3) * sigma)) if sigma > 1e-15 else 0.0
        chi1 = float(np.arctan2(x2, x1))
        chi2 = float(np.arctan2(x4, x3)) if sigma > 1e-15 else 0.0
        if not (abs(chi1) < _HALF_PI and abs(chi2) < _HALF_PI):
            raise OutOfDomain("sub-Riemannian chart requires |chi_i| < pi/2")
        return SubRiemChartPoint(phi=phi, chi1=chi1, chi2=chi2)
    raise ValueError(f"unknown chart {chart!r}")


def chart_horizontality_residual(c: GlobalChartPoint, cdot) -> float:
    """span{T, X} horizontality defect in global coordinates.

    Returns ``phi' cos(psi) sinh(2 theta) - 2 theta' sin(psi)``, which is
    twice the Y-component of the ambient velocity; it vanishes exactly on
    horizontal velocities.
    """
    phid, psid, thd = (float(u) for u in cdot)
    del psid  # psi' does not enter the condition
    return float(
        phid * np.cos(c.psi) * np.sinh(2.0 * c.theta)
        - 2.0 * thd * np.sin(c.psi)
    )


def chart_horizontal_coords(c: GlobalChartPoint, cdot) -> tuple[float, float]:
    """Horizontal components (alpha, beta) of a global-chart velocity."""
    phid, psid, thd = (float(u) for u in cdot)
    alpha = -0.5 * (phid * np.cosh(2.0 * c.theta) + psid)
    beta = 0.5 * (
        phid * np.sin(c.psi) * np.sinh(2.0 * c.theta)
        + 2.0 * thd * np.cos(c.psi)
    )
    return float(alpha), float(beta)


def chart_velocity_norm_sq(
    c: GlobalChartPoint, cdot, tol: float = 1e-8
) -> float:
    """Signed square norm ``-alpha^2 + beta^2`` of a horizontal velocity.

    Raises:
        NotHorizontal: if the chart horizontality residual is not
            negligible (scaled by the velocity magnitude), since the
            two-term expression is only the full norm on horizontal
            velocities.
    """
    phid, psid, thd = (float(u) for u in cdot)
    res = chart_horizontality_residual(c, cdot)
    scale = 1.0 + abs(phid) * np.cosh(2.0 * c.theta) + abs(psid) + abs(thd)
    if abs(res) > tol * scale:
        raise NotHorizontal(
            f"chart residual {res:.3e} exceeds scaled tol {tol:.1e}"
        )
    alpha, beta = chart_horizontal_coords(c, cdot)
    return -alpha * alpha + beta * beta


def local_chart_horizontality_residual(c, cdot) -> float:
    """Vertical component of a velocity in one of the local charts.

    For the timelike and spacelike charts this is the Y-component
    (span{T, X} defect); for the sub-Riemannian chart it is the
    T-component (span{X, Y} defect).  All three are linear in
    (chi1', chi2') with coefficients read off the diagonal metric.
    """
    _, d2, d3 = (float(u) for u in cdot)
    if isinstance(c, TimelikeChartPoint):
        return float(d2 * np.cos(c.phi) ** 2 - d3 * np.sin(c.phi) ** 2)
    if isinstance(c, SpacelikeChartPoint):
        return float(d2 * np.cosh(c.phi) ** 2 + d3 * np.sinh(c.phi) ** 2)
    if isinstance(c, SubRiemChartPoint):
        return float(-(d2 * np.cosh(c.phi) ** 2 + d3 * np.sinh(c.phi) ** 2))
    raise TypeError(f"not a local chart point: {type(c).__name__}")


def random_points(
    n: int, rng: np.random.Generator, theta_max: float = 2.0
) -> np.ndarray:
    """Sample points on the quadric through the global chart.

    Angles are uniform on (-pi, pi], theta uniform on [0, theta_max].
    """
    a = rng.uniform(-np.pi, np.pi, size=n)
    b = rng.uniform(-np.pi, np.pi, size=n)
    th = rng.uniform(0.0, theta_max, size=n)
    ch, sh = np.cosh(th), np.sinh(th)
    return np.column_stack(
        [np.cos(a) * ch, np.sin(a) * ch, np.cos(b) * sh, np.sin(b) * sh]
    )
