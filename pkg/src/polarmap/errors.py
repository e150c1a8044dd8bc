"""Exception types shared across the package."""


class GeometryError(Exception):
    """Base class for all polarmap errors."""


class ContractViolation(GeometryError):
    """Input violates a documented precondition (dimension, symmetry, ...)."""


class DomainError(GeometryError):
    """Evaluation requested outside the valid domain of a map."""


class SingularMetricError(GeometryError):
    """A metric or conformal factor degenerated where it must not."""


class SingularPointError(GeometryError):
    """Operation requested at a point where the construction is singular."""


class FrameError(GeometryError):
    """Normal-frame construction failed or lost sign continuity."""


class DegenerateSurfaceError(GeometryError):
    """Surface data degenerates identically (E == 0, constant map, ...)."""


class ConstructionError(GeometryError):
    """A builder rejected its input data (wrong target, failed probe check)."""


class InvalidSupportError(ConstructionError):
    """Support function fails its Helmholtz identity on the probe grid."""


class ConditioningError(GeometryError):
    """Point too close to a geodesic/umbilic set for a stable frame."""
