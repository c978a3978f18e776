"""Structure-algebra tests: matrix identities, frame fields, group law."""
from __future__ import annotations

import numpy as np
import pytest

from adsgeo import algebra
from adsgeo.errors import OffManifold, NotTangent


def random_point(rng: np.random.Generator) -> np.ndarray:
    """Random on-manifold point via the global parametrization."""
    a = rng.uniform(-np.pi, np.pi)
    b = rng.uniform(-np.pi, np.pi)
    th = rng.uniform(-2.0, 2.0)
    return np.array(
        [
            np.cos(a) * np.cosh(th),
            np.sin(a) * np.cosh(th),
            np.cos(b) * np.sinh(th),
            np.sin(b) * np.sinh(th),
        ]
    )


def test_generator_matrices_are_integer_valued():
    for m in (algebra.U, algebra.J, algebra.E1, algebra.E2):
        assert m.dtype.kind == "i"
        assert m.shape == (4, 4)


def test_matrix_identities_exact():
    """Squares, mixed products and commutators hold exactly over integers."""
    U, J, E1, E2 = algebra.U, algebra.J, algebra.E1, algebra.E2
    assert np.array_equal(J @ J, -U)
    assert np.array_equal(E1 @ E1, U)
    assert np.array_equal(E2 @ E2, U)
    assert np.array_equal(J @ E1, E2)
    assert np.array_equal(E1 @ J, -E2)
    assert np.array_equal(E2 @ E1, J)
    assert np.array_equal(E1 @ E2, -J)
    assert np.array_equal(J @ E2, -E1)
    assert np.array_equal(E2 @ J, E1)
    # commutators of the left-invariant frame: [T, X] = 2Y, [X, Y] = -2T,
    # [T, Y] = -2X, realized on the generator matrices
    assert np.array_equal(J @ E1 - E1 @ J, 2 * E2)
    assert np.array_equal(E2 @ E1 - E1 @ E2, 2 * J)
    assert np.array_equal(J @ E2 - E2 @ J, -2 * E1)


def test_identity_point_and_unit_matrix():
    assert np.array_equal(algebra.IDENTITY, np.array([1.0, 0.0, 0.0, 0.0]))
    assert np.array_equal(algebra.U, np.eye(4, dtype=int))


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_frame_gram_matrix(seed: int):
    """Gram matrix of (N, T, X, Y) is diag(-1, -1, 1, 1) at random points."""
    rng = np.random.default_rng(seed)
    target = np.diag([-1.0, -1.0, 1.0, 1.0])
    for _ in range(100):
        p = random_point(rng)
        frame = algebra.frame_at(p)
        gram = np.array(
            [
                [algebra.minkowski_inner(u, v) for v in frame]
                for u in frame
            ]
        )
        assert np.max(np.abs(gram - target)) < 1e-12


def test_manifold_residual_and_guard():
    assert algebra.manifold_residual(algebra.IDENTITY) == 0.0
    with pytest.raises(OffManifold):
        algebra.require_on_manifold([1.0, 0.0, 0.0, 0.5])
    # the guard returns the validated point as float ndarray
    p = algebra.require_on_manifold([1, 0, 0, 0])
    assert p.dtype == float


@pytest.mark.parametrize("seed", [3, 4, 5])
def test_group_law(seed: int):
    """Identity, inverse, associativity and closure of the product."""
    rng = np.random.default_rng(seed)
    p, q, r = (random_point(rng) for _ in range(3))
    e = algebra.IDENTITY
    assert np.allclose(algebra.group_mul(e, p), p, atol=1e-14)
    assert np.allclose(algebra.group_mul(p, e), p, atol=1e-14)
    assert np.allclose(
        algebra.group_mul(p, algebra.group_inverse(p)), e, atol=1e-12
    )
    lhs = algebra.group_mul(algebra.group_mul(p, q), r)
    rhs = algebra.group_mul(p, algebra.group_mul(q, r))
    assert np.allclose(lhs, rhs, atol=1e-12)
    assert algebra.manifold_residual(algebra.group_mul(p, q)) < 1e-12


def test_frame_is_left_translated_identity_frame():
    """x J, x E1, x E2 coincide with the group translation of T, X, Y at e."""
    rng = np.random.default_rng(7)
    p = random_point(rng)
    frame = algebra.frame_at(p)
    basis_at_e = (
        algebra.IDENTITY,
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.array([0.0, 0.0, 1.0, 0.0]),
        np.array([0.0, 0.0, 0.0, 1.0]),
    )
    for vec, v_e in zip(frame, basis_at_e):
        translated = algebra.left_translate_tangent(p, v_e)
        assert np.allclose(vec, translated, atol=1e-12)


@pytest.mark.parametrize("seed", [8, 9])
def test_decompose_reconstruct_roundtrip(seed: int):
    rng = np.random.default_rng(seed)
    p = random_point(rng)
    _, T, X, Y = algebra.frame_at(p)
    v = 0.3 * T - 1.1 * X + 0.7 * Y
    coeffs = algebra.decompose_in_frame(p, v)
    assert abs(coeffs.alpha - algebra.minkowski_inner(v, T)) < 1e-14
    assert abs(coeffs.delta) < 1e-12  # tangent vectors have no N component
    back = algebra.frame_reconstruct(p, coeffs)
    assert np.allclose(back, v, atol=1e-12)


def test_require_tangent_rejects_normal_component():
    p = algebra.IDENTITY
    with pytest.raises(NotTangent):
        algebra.require_tangent(p, np.array([1.0, 0.0, 0.0, 0.0]))
