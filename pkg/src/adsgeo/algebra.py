"""Matrix-group model of the 3-dimensional anti-de Sitter quadric.

The manifold is the level set <x,x> = -1 of the signature-(2,2) bilinear
form

    <a, b> = -a1*b1 - a2*b2 + a3*b3 + a4*b4

on R^4.  It carries a group structure whose product is bilinear in the
coordinates, with identity e = (1, 0, 0, 0).  Three integer matrices J, E1,
E2 generate the left-invariant frame

    N(x) = x,     T(x) = x J,     X(x) = x E1,     Y(x) = x E2

(row vector times matrix throughout), which is orthonormal for the ambient
form with Gram matrix diag(-1, -1, 1, 1).  The matrix relations

    J^2 = -U,  E1^2 = E2^2 = U,  J E1 = E2,  E2 E1 = J,  J E2 = -E1,

together with their anticommutation consequences, encode the frame bracket
relations [T, X] = 2Y, [X, Y] = -2T, [T, Y] = -2X.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from ._tol import MANIFOLD_TOL, TANGENT_TOL
from .errors import NotTangent, OffManifold

__all__ = [
    "U",
    "J",
    "E1",
    "E2",
    "IDENTITY",
    "FrameCoeffs",
    "minkowski_inner",
    "manifold_residual",
    "require_on_manifold",
    "group_mul",
    "group_inverse",
    "left_translate_tangent",
    "frame_at",
    "decompose_in_frame",
    "frame_reconstruct",
]

#: Identity matrix; the remaining three are the structure matrices of the
#: left-invariant frame fields T, X, Y.
U = np.eye(4, dtype=int)

J = np.array(
    [
        [0, 1, 0, 0],
        [-1, 0, 0, 0],
        [0, 0, 0, -1],
        [0, 0, 1, 0],
    ],
    dtype=int,
)

E1 = np.array(
    [
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, 0, 0],
        [0, 1, 0, 0],
    ],
    dtype=int,
)

E2 = np.array(
    [
        [0, 0, 0, 1],
        [0, 0, -1, 0],
        [0, -1, 0, 0],
        [1, 0, 0, 0],
    ],
    dtype=int,
)

#: Group identity.
IDENTITY = np.array([1.0, 0.0, 0.0, 0.0])

#: Signature matrix of the ambient bilinear form.
_G = np.diag([-1.0, -1.0, 1.0, 1.0])


class FrameCoeffs(NamedTuple):
    """Inner products of a vector against the frame at a point.

    ``alpha = <v, T>``, ``beta = <v, X>``, ``gamma = <v, Y>``,
    ``delta = <v, N>``.  For a genuinely tangent vector ``delta`` vanishes,
    and the vector is reconstructed as
    ``v = -alpha*T + beta*X + gamma*Y - delta*N``
    (mind the signs: T and N are timelike for the ambient form).
    """

    alpha: float
    beta: float
    gamma: float
    delta: float


def _as_vec4(x) -> np.ndarray:
    v = np.asarray(x, dtype=float)
    if v.shape != (4,):
        raise ValueError(f"expected a 4-vector, got shape {v.shape}")
    return v


def minkowski_inner(a, b) -> float:
    """Signature-(2,2) bilinear form ``-a1 b1 - a2 b2 + a3 b3 + a4 b4``."""
    a = _as_vec4(a)
    b = _as_vec4(b)
    return float(-a[0] * b[0] - a[1] * b[1] + a[2] * b[2] + a[3] * b[3])


def manifold_residual(x) -> float:
    """Signed deviation ``<x,x> + 1`` from the quadric constraint."""
    x = _as_vec4(x)
    return minkowski_inner(x, x) + 1.0


def require_on_manifold(x, tol: float = MANIFOLD_TOL) -> np.ndarray:
    """Return ``x`` as an array after checking the quadric constraint.

    The tolerance is scaled by ``1 + sum(x^2)``: rounding noise in the
    evaluated constraint grows with the squared point norm, so a fixed
    absolute bound would spuriously reject valid points far from the
    identity.

    Raises:
        OffManifold: if ``|<x,x> + 1|`` exceeds the scaled ``tol``.
            Points are never silently re-normalized; rejecting keeps
            downstream invariants attributable to the caller's data.
    """
    x = _as_vec4(x)
    res = manifold_residual(x)
    scale = 1.0 + float(np.dot(x, x))
    if abs(res) > tol * scale:
        raise OffManifold(f"|<x,x> + 1| = {abs(res):.3e} exceeds tol={tol:.1e}")
    return x


def _bilinear_product(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """The bilinear group-product formula, with no membership checks."""
    x1, x2, x3, x4 = x
    y1, y2, y3, y4 = y
    return np.array(
        [
            x1 * y1 - x2 * y2 + x3 * y3 + x4 * y4,
            x2 * y1 + x1 * y2 + x4 * y3 - x3 * y4,
            x3 * y1 + x4 * y2 + x1 * y3 - x2 * y4,
            x4 * y1 - x3 * y2 + x2 * y3 + x1 * y4,
        ]
    )


def group_mul(p, q, tol: float = MANIFOLD_TOL) -> np.ndarray:
    """Group product of two points of the quadric."""
    p = require_on_manifold(p, tol)
    q = require_on_manifold(q, tol)
    return _bilinear_product(p, q)


def group_inverse(p, tol: float = MANIFOLD_TOL) -> np.ndarray:
    """Group inverse ``(x1, -x2, -x3, -x4)``."""
    p = require_on_manifold(p, tol)
    return np.array([p[0], -p[1], -p[2], -p[3]])


def left_translate_tangent(p, v, tol: float = MANIFOLD_TOL) -> np.ndarray:
    """Differential of left translation by ``p`` applied to ``v``.

    Because the group product is bilinear in the ambient coordinates, the
    differential of ``q -> p q`` is the product formula itself with ``v``
    in the second slot.
    """
    p = require_on_manifold(p, tol)
    v = _as_vec4(v)
    return _bilinear_product(p, v)


def frame_at(p, tol: float = MANIFOLD_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Frame ``(N, T, X, Y) = (x, xJ, xE1, xE2)`` at a point.

    ``N`` is the ambient position (normal to the quadric), ``T`` spans the
    timelike frame direction and ``X``, ``Y`` the spacelike ones; the Gram
    matrix of ``(N, T, X, Y)`` is diag(-1, -1, 1, 1).
    """
    p = require_on_manifold(p, tol)
    return p.copy(), p @ J, p @ E1, p @ E2


def decompose_in_frame(p, v, tol: float = MANIFOLD_TOL) -> FrameCoeffs:
    """Frame inner products ``(<v,T>, <v,X>, <v,Y>, <v,N>)`` at ``p``."""
    p = require_on_manifold(p, tol)
    v = _as_vec4(v)
    n, t, x1, y1 = frame_at(p, tol)
    return FrameCoeffs(
        alpha=minkowski_inner(v, t),
        beta=minkowski_inner(v, x1),
        gamma=minkowski_inner(v, y1),
        delta=minkowski_inner(v, n),
    )


def frame_reconstruct(p, coeffs: FrameCoeffs, tol: float = MANIFOLD_TOL) -> np.ndarray:
    """Rebuild the ambient vector with the given frame inner products."""
    n, t, x1, y1 = frame_at(p, tol)
    return (
        -coeffs.alpha * t + coeffs.beta * x1 + coeffs.gamma * y1 - coeffs.delta * n
    )


def require_tangent(p, v, tol: float = TANGENT_TOL) -> np.ndarray:
    """Return ``v`` after checking tangency ``<v, p> = 0`` at ``p``.

    The check is scaled by the magnitudes of ``p`` and ``v`` so it is
    meaningful far from the identity.
    """
    p = require_on_manifold(p)
    v = _as_vec4(v)
    scale = 1.0 + float(np.linalg.norm(p)) * float(np.linalg.norm(v))
    delta = minkowski_inner(v, p)
    if abs(delta) > tol * scale:
        raise NotTangent(f"|<v,x>| = {abs(delta):.3e} exceeds scaled tol")
    return v
