"""Error hierarchy shared by the geometry library and the command line.

Each error carries the process exit code the CLI returns for it.
"""


class InellipseError(Exception):
    exit_code = 2


class MalformedInputError(InellipseError):
    """Quadrilateral document or inline vertex list could not be read."""
    exit_code = 2


class InvalidConfigError(InellipseError):
    """Fuzz configuration or tolerance setting is out of range."""
    exit_code = 2


class NonConvexQuadrilateralError(InellipseError):
    exit_code = 3


class CollinearPointsError(NonConvexQuadrilateralError):
    exit_code = 3


class ParallelogramError(InellipseError):
    """The inscribed family is only parametrized for non-parallelograms."""
    exit_code = 4


class OutputWriteError(InellipseError):
    exit_code = 5


class NotAnEllipseError(InellipseError):
    pass


class DegenerateLineError(InellipseError):
    pass


class SingularMapError(InellipseError):
    pass


class ParameterOutOfRangeError(InellipseError):
    pass


class InvalidNormalizedQuadError(InellipseError):
    pass
