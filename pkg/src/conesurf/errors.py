"""Exception hierarchy.

Every error carries a short ``code`` (its class name) and the process exit
status the CLI should use: 2 for validation/domain problems, 3 for numeric or
geometric failures.
"""


class ConeSurfError(ValueError):
    exit_status = 2

    @property
    def code(self) -> str:
        return type(self).__name__


# -- triangulation combinatorics ------------------------------------------

class TriangulationError(ConeSurfError):
    pass


class OrientabilityError(TriangulationError):
    pass


class EulerError(TriangulationError):
    pass


class DegenerateError(TriangulationError):
    pass


class UnflippableError(TriangulationError):
    pass


# -- curves ---------------------------------------------------------------

class CurveError(ConeSurfError):
    pass


class EmptyCurveError(CurveError):
    pass


class AdjacencyError(CurveError):
    pass


# -- coordinates ------------------------------------------------------------

class AdmissibilityError(ConeSurfError):
    """Edge weights violate a strict triangle inequality (or positivity)."""

    def __init__(self, message, face=None, slack=None):
        super().__init__(message)
        self.face = face
        self.slack = slack


class BalanceError(ConeSurfError):
    pass


class PositivityError(ConeSurfError):
    pass


class DomainError(ConeSurfError):
    pass


# -- geometric failures (exit 3) -----------------------------------------------

class GeometricError(ConeSurfError):
    exit_status = 3


class GeodesicFlipError(GeometricError):
    def __init__(self, message, angle_sum=None):
        super().__init__(message)
        self.angle_sum = angle_sum


class EllipticHolonomyError(GeometricError):
    pass


class UnrealizedGeodesicError(EllipticHolonomyError):
    """Hyperbolic holonomy whose axis leaves the developed face chain."""


class ParabolicClassError(GeometricError):
    pass


class ConeAngleWarning(UserWarning):
    """Some cone angle is >= pi; closed geodesics may fail to be smooth."""
