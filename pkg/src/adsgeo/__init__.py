"""Horizontal curves and geodesics on the 3-dimensional anti-de Sitter
quadric, viewed as a matrix group with two rank-2 invariant distributions.

The quadric {x : <x, x> = -1} in signature (-, -, +, +) carries the
left-invariant frame N = x, T = x J, X = x E1, Y = x E2.  The package
implements the frame algebra, horizontality analysis and causal
classification for the distributions span{T, X} (sub-Lorentzian) and
span{X, Y} (sub-Riemannian), closed-form geodesic families, numerical
normal Hamiltonian flows in ambient and chart coordinates, and explicit
constructions of horizontal curves joining prescribed endpoint pairs.
"""

from __future__ import annotations

from .algebra import (
    E1,
    E2,
    IDENTITY,
    J,
    U,
    FrameCoeffs,
    decompose_in_frame,
    frame_at,
    frame_reconstruct,
    group_inverse,
    group_mul,
    left_translate_tangent,
    manifold_residual,
    minkowski_inner,
    require_on_manifold,
)
from .charts import (
    GlobalChartPoint,
    SpacelikeChartPoint,
    SubRiemChartPoint,
    TimelikeChartPoint,
    cartesian_to_chart,
    cartesian_to_global_chart,
    chart_horizontal_coords,
    chart_horizontality_residual,
    chart_pushforward,
    chart_to_cartesian,
    chart_velocity_norm_sq,
)
from .closedform import (
    CartesianGeodesicSpec,
    ConstGeodesicSpec,
    ParametricGeodesicSpec,
    cartesian_geodesic_tx,
    cartesian_geodesic_xy,
    const_geodesic,
    const_geodesic_momentum,
    const_geodesic_velocity,
    first_integrals_tx,
    first_integrals_xy,
    parametric_chart_state,
    parametric_geodesic,
    parametric_initial_state,
    sample_cartesian_geodesic_tx,
    sample_cartesian_geodesic_xy,
    sample_const_geodesic,
    sample_parametric_geodesic,
    sample_vertical_line,
    vertical_line,
)
from .connectivity import (
    bridge_function,
    connect_tx,
    connect_tx_constant_psi,
    connect_xy,
    connect_xy_constant_theta,
    piecewise_timelike_tx,
)
from .errors import (
    AdsGeoError,
    BranchAmbiguity,
    CaseBoundary,
    ChartSingularity,
    DegenerateConfiguration,
    DiagnosticBreach,
    DomainError,
    EmptyTrajectory,
    IncompatiblePair,
    NormalizationError,
    NotHorizontal,
    NotTangent,
    OffManifold,
    OutOfDomain,
    StepFailure,
    ThetaSignLoss,
    UnsupportedCase,
)
from .hamiltonian import (
    ChartPhaseState,
    ChartTrajectory,
    IntegratorConfig,
    PhaseState,
    acceleration_decomposition,
    chart_hamiltonian_value,
    chart_phase_to_cartesian,
    chart_vector_field,
    euler_lagrange_residual,
    hamiltonian_value,
    integrate,
    integrate_chart,
    momentum_scalars,
    vector_field,
)
from .horizontality import (
    CausalClass,
    Distribution,
    Trajectory,
    action,
    classify,
    curve_length,
    horizontal_coords,
    horizontality_residual,
    translate_curve,
)
from .io import package_version, read_csv, read_json, write_csv, write_json

__version__ = package_version()

__all__ = [
    # algebra
    "U", "J", "E1", "E2", "IDENTITY", "FrameCoeffs",
    "minkowski_inner", "manifold_residual", "require_on_manifold",
    "group_mul", "group_inverse", "left_translate_tangent",
    "frame_at", "decompose_in_frame", "frame_reconstruct",
    # horizontality
    "Distribution", "CausalClass", "Trajectory",
    "horizontality_residual", "horizontal_coords", "classify",
    "curve_length", "action", "translate_curve",
    # charts
    "GlobalChartPoint", "TimelikeChartPoint", "SpacelikeChartPoint",
    "SubRiemChartPoint", "chart_to_cartesian", "chart_pushforward",
    "cartesian_to_chart", "cartesian_to_global_chart",
    "chart_horizontality_residual", "chart_horizontal_coords",
    "chart_velocity_norm_sq",
    # closed forms
    "ConstGeodesicSpec", "CartesianGeodesicSpec", "ParametricGeodesicSpec",
    "const_geodesic", "const_geodesic_velocity", "const_geodesic_momentum",
    "sample_const_geodesic", "vertical_line", "sample_vertical_line",
    "first_integrals_tx", "first_integrals_xy",
    "cartesian_geodesic_tx", "sample_cartesian_geodesic_tx",
    "cartesian_geodesic_xy", "sample_cartesian_geodesic_xy",
    "parametric_geodesic", "sample_parametric_geodesic",
    "parametric_initial_state", "parametric_chart_state",
    # connectivity
    "bridge_function", "connect_tx", "connect_tx_constant_psi",
    "connect_xy", "connect_xy_constant_theta", "piecewise_timelike_tx",
    # hamiltonian flows
    "PhaseState", "ChartPhaseState", "ChartTrajectory", "IntegratorConfig",
    "momentum_scalars", "hamiltonian_value", "vector_field", "integrate",
    "chart_hamiltonian_value", "chart_vector_field", "integrate_chart",
    "chart_phase_to_cartesian", "euler_lagrange_residual",
    "acceleration_decomposition",
    # io
    "write_csv", "read_csv", "write_json", "read_json", "package_version",
    # errors
    "AdsGeoError", "OffManifold", "NotTangent", "NotHorizontal",
    "EmptyTrajectory", "OutOfDomain", "BranchAmbiguity",
    "DegenerateConfiguration", "ThetaSignLoss", "IncompatiblePair",
    "DomainError", "UnsupportedCase", "NormalizationError", "CaseBoundary",
    "ChartSingularity", "StepFailure", "DiagnosticBreach",
    "__version__",
]
