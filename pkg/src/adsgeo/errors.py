"""Typed exceptions raised by the geometry and integration routines."""

from __future__ import annotations


class AdsGeoError(Exception):
    """Base class for all package-specific errors."""


class OffManifold(AdsGeoError):
    """A point does not satisfy the quadric constraint within tolerance."""


class NotTangent(AdsGeoError):
    """A vector is not tangent to the quadric at the given base point."""


class NotHorizontal(AdsGeoError):
    """A velocity has a non-negligible component outside the distribution."""


class EmptyTrajectory(AdsGeoError):
    """A trajectory has too few samples for the requested operation."""


class OutOfDomain(AdsGeoError):
    """A chart coordinate or parameter leaves the chart's domain."""


class BranchAmbiguity(AdsGeoError):
    """An inverse-chart branch cannot be resolved for the given input."""


class DegenerateConfiguration(AdsGeoError):
    """Endpoint data admits no curve within the connecting family."""


class ThetaSignLoss(AdsGeoError):
    """The radial coordinate would have to change sign, which the
    connecting construction cannot represent."""


class IncompatiblePair(AdsGeoError):
    """Endpoints violate a compatibility relation required by a
    special-form connecting curve."""


class DomainError(AdsGeoError):
    """An intermediate quantity leaves the domain of an inverse function."""


class UnsupportedCase(AdsGeoError):
    """Parameters select a solution family that has no implemented
    closed form."""


class NormalizationError(AdsGeoError):
    """First integrals violate the normalization assumed by a closed form."""


class CaseBoundary(AdsGeoError):
    """Parameters sit exactly on the boundary between solution cases.

    The closed-form evaluators resolve near-boundary parameters to the
    degenerate case themselves; this error type exists for callers that
    want to detect the boundary explicitly.
    """


class ChartSingularity(AdsGeoError):
    """A chart Hamiltonian flow entered the singular locus of the chart."""


class StepFailure(AdsGeoError):
    """The adaptive integrator failed to reach the end of the interval."""


class DiagnosticBreach(AdsGeoError):
    """A monitored conserved quantity drifted beyond the configured bound."""
