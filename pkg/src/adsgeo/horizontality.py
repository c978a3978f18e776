"""Horizontal distributions, causal classification, and sampled curves.

Two rank-2 distributions are supported, each spanned by two of the
left-invariant frame fields:

* ``Distribution.SPAN_TX`` — span{T, X}, a sub-Lorentzian structure.  A
  velocity is horizontal when its Y-component ``gamma = <x E2, v>``
  vanishes; the induced square-norm of a horizontal velocity is
  ``-alpha^2 + beta^2`` and can take either sign.
* ``Distribution.SPAN_XY`` — span{X, Y}, a sub-Riemannian structure.  A
  velocity is horizontal when its T-component ``alpha = <x J, v>``
  vanishes; the induced square-norm ``beta^2 + gamma^2`` is nonnegative.

Sampled curves are held in :class:`Trajectory`, a light container of
uniformly spaced parameter values, ambient points, and optional velocities,
momenta and per-sample diagnostics.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.integrate import simpson

from . import algebra
from ._numerics import derivative_uniform
from ._tol import LIGHTLIKE_TOL, MANIFOLD_TOL, TANGENT_TOL
from .errors import EmptyTrajectory, NotHorizontal, OffManifold

__all__ = [
    "Distribution",
    "CausalClass",
    "Trajectory",
    "horizontality_residual",
    "horizontal_coords",
    "classify",
    "curve_length",
    "action",
    "translate_curve",
    "contact_form_tx",
    "contact_form_xy",
]


class Distribution(enum.Enum):
    """Which rank-2 subbundle of the tangent bundle is in force."""

    SPAN_TX = "tx"
    SPAN_XY = "xy"

    @classmethod
    def parse(cls, text: str) -> "Distribution":
        key = str(text).strip().lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown distribution {text!r}; use 'tx' or 'xy'")


@dataclass(frozen=True)
class CausalClass:
    """Causal character of a single tangent vector.

    ``kind`` is one of ``"timelike"``, ``"spacelike"``, ``"lightlike"``.
    ``future_directed`` is only meaningful for timelike vectors (negative
    inner product against the frame field T) and is ``None`` otherwise.
    The zero vector classifies as spacelike.
    """

    kind: str
    future_directed: Optional[bool] = None

    @property
    def timelike(self) -> bool:
        return self.kind == "timelike"

    @property
    def spacelike(self) -> bool:
        return self.kind == "spacelike"

    @property
    def lightlike(self) -> bool:
        return self.kind == "lightlike"


@dataclass
class Trajectory:
    """Uniformly sampled curve on the quadric.

    Attributes:
        params: strictly increasing parameter values, shape (n,).
        points: ambient points, shape (n, 4); validated against the quadric
            constraint on construction.
        velocities: optional ambient velocities, shape (n, 4).
        momenta: optional ambient momenta (covectors), shape (n, 4).
        diagnostics: named per-sample arrays (energies, residuals, ...).
    """

    params: np.ndarray
    points: np.ndarray
    velocities: Optional[np.ndarray] = None
    momenta: Optional[np.ndarray] = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.params = np.asarray(self.params, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if self.params.ndim != 1:
            raise ValueError("params must be one-dimensional")
        n = self.params.shape[0]
        if n == 0:
            raise EmptyTrajectory("trajectory has no samples")
        if self.points.shape != (n, 4):
            raise ValueError("points must have shape (n, 4)")
        if n > 1 and not np.all(np.diff(self.params) > 0.0):
            raise ValueError("params must be strictly increasing")
        res = -self.points[:, 0] ** 2 - self.points[:, 1] ** 2 \
            + self.points[:, 2] ** 2 + self.points[:, 3] ** 2 + 1.0
        worst = float(np.max(np.abs(res)))
        scale = 1.0 + float(np.max(np.sum(self.points**2, axis=1)))
        if worst > MANIFOLD_TOL * scale:
            raise OffManifold(
                f"trajectory leaves the quadric: max |<x,x>+1| = {worst:.3e}"
            )
        if self.velocities is not None:
            self.velocities = np.asarray(self.velocities, dtype=float)
            if self.velocities.shape != (n, 4):
                raise ValueError("velocities must have shape (n, 4)")
        if self.momenta is not None:
            self.momenta = np.asarray(self.momenta, dtype=float)
            if self.momenta.shape != (n, 4):
                raise ValueError("momenta must have shape (n, 4)")

    def __len__(self) -> int:
        return int(self.params.shape[0])

    def velocities_or_fd(self) -> np.ndarray:
        """Stored velocities, or a finite-difference estimate.

        The estimate uses 4th-order central stencils in the interior and
        2nd-order one-sided stencils at the boundary, and requires at
        least 5 uniformly spaced samples.
        """
        if self.velocities is not None:
            return self.velocities
        n = len(self)
        if n < 5:
            raise EmptyTrajectory("need >= 5 samples for velocity recovery")
        h = float(self.params[1] - self.params[0])
        spread = float(np.max(np.abs(np.diff(self.params) - h)))
        if spread > 1e-9 * max(1.0, abs(h)):
            raise ValueError("velocity recovery requires a uniform grid")
        return derivative_uniform(self.points, h)


def horizontality_residual(p, v, dist: Distribution) -> float:
    """Component of ``v`` outside the distribution at ``p``.

    For span{T, X} this is ``gamma = <x E2, v>``; for span{X, Y} it is
    ``alpha = <x J, v>``.  Horizontal velocities return 0.
    """
    p = algebra.require_on_manifold(p)
    v = np.asarray(v, dtype=float)
    if dist is Distribution.SPAN_TX:
        return algebra.minkowski_inner(p @ algebra.E2, v)
    return algebra.minkowski_inner(p @ algebra.J, v)


def horizontal_coords(p, v, dist: Distribution) -> tuple[float, float]:
    """Frame components of ``v`` along the distribution at ``p``.

    Returns ``(alpha, beta) = (<v, T>, <v, X>)`` for span{T, X} and
    ``(beta, gamma) = (<v, X>, <v, Y>)`` for span{X, Y}.
    """
    coeffs = algebra.decompose_in_frame(p, v)
    if dist is Distribution.SPAN_TX:
        return coeffs.alpha, coeffs.beta
    return coeffs.beta, coeffs.gamma


def classify(
    p,
    v,
    lightlike_tol: float = LIGHTLIKE_TOL,
    tangent_tol: float = TANGENT_TOL,
) -> CausalClass:
    """Causal class of a tangent vector under the ambient form.

    Raises:
        NotTangent: if ``<v, p>`` is not negligible.
    """
    p = algebra.require_on_manifold(p)
    v = algebra.require_tangent(p, v, tangent_tol)
    sq = algebra.minkowski_inner(v, v)
    if abs(sq) <= lightlike_tol:
        if float(np.dot(v, v)) <= lightlike_tol:
            return CausalClass("spacelike")  # zero vector
        return CausalClass("lightlike")
    if sq < 0.0:
        alpha = algebra.minkowski_inner(v, p @ algebra.J)
        return CausalClass("timelike", future_directed=bool(alpha < 0.0))
    return CausalClass("spacelike")


def _speed_sq(t: Trajectory) -> np.ndarray:
    v = t.velocities_or_fd()
    return (
        -v[:, 0] ** 2 - v[:, 1] ** 2 + v[:, 2] ** 2 + v[:, 3] ** 2
    )


def curve_length(t: Trajectory) -> float:
    """Length ``integral |<c', c'>|^(1/2) ds`` of a sampled curve.

    For horizontal curves this equals the distribution-induced length
    (``|alpha^2 - beta^2|^(1/2)`` under span{T, X}, ``(beta^2 +
    gamma^2)^(1/2)`` under span{X, Y}); the ambient form is used directly
    so the same routine serves both distributions.
    """
    if len(t) < 2:
        raise EmptyTrajectory("length needs at least 2 samples")
    integrand = np.sqrt(np.abs(_speed_sq(t)))
    return float(simpson(integrand, x=t.params))


def action(t: Trajectory, dist: Distribution) -> float:
    """Energy functional ``(1/2) integral |c'|_dist^2 ds`` of a curve.

    Unlike :func:`curve_length`, the integrand is the signed square norm
    of the distribution (``-alpha^2 + beta^2`` for span{T, X}, ``beta^2 +
    gamma^2`` for span{X, Y}).
    """
    if len(t) < 2:
        raise EmptyTrajectory("action needs at least 2 samples")
    v = t.velocities_or_fd()
    n = len(t)
    vals = np.empty(n)
    for k in range(n):
        a, b = horizontal_coords(t.points[k], v[k], dist)
        if dist is Distribution.SPAN_TX:
            vals[k] = -a * a + b * b
        else:
            vals[k] = a * a + b * b
    return float(0.5 * simpson(vals, x=t.params))


def translate_curve(p, t: Trajectory) -> Trajectory:
    """Left-translate a sampled curve (points, velocities, momenta) by ``p``.

    Momenta transform contragradiently so that all pairings — and hence
    every Hamiltonian diagnostic — are preserved.
    """
    p = algebra.require_on_manifold(p)
    points = np.stack([algebra._bilinear_product(p, x) for x in t.points])
    velocities = None
    if t.velocities is not None:
        velocities = np.stack(
            [algebra._bilinear_product(p, v) for v in t.velocities]
        )
    momenta = None
    if t.momenta is not None:
        p_inv = algebra.group_inverse(p)
        rows_inv = np.stack(
            [
                p_inv,
                p_inv @ algebra.J,
                p_inv @ algebra.E1,
                p_inv @ algebra.E2,
            ]
        )
        momenta = t.momenta @ rows_inv.T  # xi -> xi (M^{-1})^T, M^{-1} = M(p^{-1})
    return Trajectory(
        params=t.params.copy(),
        points=points,
        velocities=velocities,
        momenta=momenta,
        diagnostics=dict(t.diagnostics),
    )


def contact_form_tx(p, v) -> float:
    """Annihilator 1-form of span{T, X}: ``omega = <x E2, dx>``.

    Normalized so that ``omega(Y) = 1``.
    """
    return horizontality_residual(p, v, Distribution.SPAN_TX)


def contact_form_xy(p, v) -> float:
    """Annihilator 1-form of span{X, Y}: ``w = -<x J, dx>``.

    Normalized so that ``w(T) = 1``.
    """
    return -horizontality_residual(p, v, Distribution.SPAN_XY)


def require_horizontal(
    p, v, dist: Distribution, tol: float = 1e-6
) -> np.ndarray:
    """Return ``v`` after checking the horizontality residual (scaled)."""
    v = np.asarray(v, dtype=float)
    res = horizontality_residual(p, v, dist)
    scale = 1.0 + float(np.linalg.norm(v)) * float(np.linalg.norm(np.asarray(p)))
    if abs(res) > tol * scale:
        raise NotHorizontal(f"residual {res:.3e} exceeds scaled tol {tol:.1e}")
    return v
