"""Distribution membership, causal classification and curve functionals."""
from __future__ import annotations

import numpy as np
import pytest

from adsgeo import algebra, closedform, horizontality
from adsgeo.horizontality import Distribution, Trajectory
from adsgeo.errors import EmptyTrajectory, NotHorizontal

from test_algebra import random_point


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_residual_vanishes_iff_in_span(seed: int):
    rng = np.random.default_rng(seed)
    p = random_point(rng)
    _, T, X, Y = algebra.frame_at(p)
    v_tx = 0.4 * T - 0.9 * X
    v_xy = 0.4 * X - 0.9 * Y
    assert abs(horizontality.horizontality_residual(p, v_tx, Distribution.SPAN_TX)) < 1e-12
    assert abs(horizontality.horizontality_residual(p, v_xy, Distribution.SPAN_XY)) < 1e-12
    # a unit step in the complementary direction has residual of unit size
    assert abs(horizontality.horizontality_residual(p, Y, Distribution.SPAN_TX)) == pytest.approx(1.0, abs=1e-12)
    assert abs(horizontality.horizontality_residual(p, T, Distribution.SPAN_XY)) == pytest.approx(1.0, abs=1e-12)


def test_horizontal_coords_are_frame_pairings():
    """Coordinates are inner products <v, frame>, so v = -alpha T + beta X + ..."""
    rng = np.random.default_rng(3)
    p = random_point(rng)
    _, T, X, Y = algebra.frame_at(p)
    v = 0.7 * T + 0.2 * X - 1.3 * Y
    a, b = horizontality.horizontal_coords(p, v, Distribution.SPAN_TX)
    assert (a, b) == pytest.approx((-0.7, 0.2), abs=1e-12)  # <T, T> = -1
    b2, g = horizontality.horizontal_coords(p, v, Distribution.SPAN_XY)
    assert (b2, g) == pytest.approx((0.2, -1.3), abs=1e-12)


def test_contact_forms_annihilate_distribution():
    rng = np.random.default_rng(4)
    p = random_point(rng)
    _, T, X, Y = algebra.frame_at(p)
    assert abs(horizontality.contact_form_tx(p, 0.5 * T - 0.1 * X)) < 1e-12
    assert horizontality.contact_form_tx(p, Y) == pytest.approx(1.0, abs=1e-12)
    assert abs(horizontality.contact_form_xy(p, 0.5 * X - 0.1 * Y)) < 1e-12
    assert horizontality.contact_form_xy(p, T) == pytest.approx(1.0, abs=1e-12)


def test_classify_kinds_and_orientation():
    p = algebra.IDENTITY
    _, T, X, _ = algebra.frame_at(p)
    assert horizontality.classify(p, X).kind == "spacelike"
    cc = horizontality.classify(p, T)
    assert cc.kind == "timelike"
    # <T, T> = -1 < 0, so +T itself is future-directed
    assert cc.future_directed is True
    assert horizontality.classify(p, -T).future_directed is False
    lc = horizontality.classify(p, T + X)
    assert lc.kind == "lightlike"
    assert horizontality.classify(p, np.zeros(4)).kind == "spacelike"


def test_classify_rejects_non_tangent():
    from adsgeo.errors import NotTangent

    with pytest.raises(NotTangent):
        horizontality.classify(algebra.IDENTITY, np.array([1.0, 0.0, 0.0, 0.0]))


def test_curve_length_and_action_on_unit_speed_geodesic():
    """Unit-speed constant-coordinate geodesics have length = parameter range."""
    grid = np.linspace(0.0, 1.5, 301)
    spec = closedform.ConstGeodesicSpec(Distribution.SPAN_TX, "timelike", 0.7)
    t = closedform.sample_const_geodesic(spec, grid)
    assert horizontality.curve_length(t) == pytest.approx(1.5, abs=1e-10)
    # timelike: signed square norm is -1, so the energy is -range/2
    assert horizontality.action(t, Distribution.SPAN_TX) == pytest.approx(-0.75, abs=1e-10)

    spec = closedform.ConstGeodesicSpec(Distribution.SPAN_XY, "spacelike", 0.4)
    t = closedform.sample_const_geodesic(spec, grid)
    assert horizontality.curve_length(t) == pytest.approx(1.5, abs=1e-10)
    assert horizontality.action(t, Distribution.SPAN_XY) == pytest.approx(0.75, abs=1e-10)


def test_length_requires_samples():
    t = Trajectory(params=np.array([0.0]), points=algebra.IDENTITY[None, :])
    with pytest.raises(EmptyTrajectory):
        horizontality.curve_length(t)


@pytest.mark.parametrize("seed", [5, 6])
def test_translate_curve_preserves_scalars(seed: int):
    """Left translation preserves lengths, residuals and momentum pairings."""
    from adsgeo import hamiltonian

    rng = np.random.default_rng(seed)
    p = random_point(rng)
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), 0.25])
    cfg = hamiltonian.IntegratorConfig(step=1e-3, s_span=(0.0, 1.0), record_every=10)
    t = hamiltonian.integrate(
        hamiltonian.PhaseState(algebra.IDENTITY.astype(float), xi0),
        Distribution.SPAN_TX,
        cfg,
    )
    t2 = horizontality.translate_curve(p, t)
    assert np.max(np.abs([algebra.manifold_residual(x) for x in t2.points])) < 1e-10
    assert horizontality.curve_length(t2) == pytest.approx(
        horizontality.curve_length(t), abs=1e-10
    )
    # Hamiltonian value is a pairing of momenta with frame fields, hence invariant
    for k in (0, len(t) // 2, len(t) - 1):
        h_old = hamiltonian.hamiltonian_value(
            hamiltonian.PhaseState(t.points[k], t.momenta[k]), Distribution.SPAN_TX
        )
        h_new = hamiltonian.hamiltonian_value(
            hamiltonian.PhaseState(t2.points[k], t2.momenta[k]), Distribution.SPAN_TX
        )
        assert h_new == pytest.approx(h_old, abs=1e-12)


def test_require_horizontal_guard():
    p = algebra.IDENTITY
    _, T, X, Y = algebra.frame_at(p)
    v = horizontality.require_horizontal(p, 0.2 * T + 0.9 * X, Distribution.SPAN_TX)
    assert v.shape == (4,)
    with pytest.raises(NotHorizontal):
        horizontality.require_horizontal(p, Y, Distribution.SPAN_TX)


def test_trajectory_validation():
    from adsgeo.errors import OffManifold

    on_manifold = np.tile(algebra.IDENTITY.astype(float), (2, 1))
    with pytest.raises(ValueError):
        Trajectory(params=np.array([0.0, 1.0]), points=np.tile(on_manifold, (2, 1)))
    with pytest.raises(ValueError):
        Trajectory(
            params=np.array([0.0, 1.0]),
            points=on_manifold,
            velocities=np.zeros((2, 3)),
        )
    # construction rejects off-quadric points outright
    with pytest.raises(OffManifold):
        Trajectory(params=np.array([0.0, 1.0]), points=np.zeros((2, 4)))
