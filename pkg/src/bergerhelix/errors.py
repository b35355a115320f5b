"""Exception types shared across the package."""


class GeometryError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotOnSphere(GeometryError):
    """Point fails the unit-sphere membership test."""


class NotTangent(GeometryError):
    """Vector is not tangent to the sphere at the given base point."""


class IndexOutOfRange(GeometryError):
    """Frame index outside {1, 2, 3}."""


class InvalidAngle(GeometryError):
    """Angle parameter outside the admissible open interval."""


class NearPole(GeometryError):
    """Evaluation too close to a pole of tan; the field blows up."""


class OutOfDomain(GeometryError):
    """Parameter outside the declared (u, v) or profile domain."""


class DegenerateXi1(GeometryError):
    """sin(xi1) vanishes somewhere, so xi3 cannot be derived by quadrature."""


class DegenerateTangentPlane(GeometryError):
    """F_u and F_v are (numerically) linearly dependent at the sample."""


class BadOrder(GeometryError):
    """Unsupported derivative order."""


class SingularMetric(GeometryError):
    """First fundamental form is singular at the evaluation point."""


class AtPole(GeometryError):
    """Stereographic projection evaluated at its pole."""


class EmptyGrid(GeometryError):
    """Mesh export requested for an empty grid."""


class ConfigError(GeometryError):
    """Malformed profile or run configuration."""
