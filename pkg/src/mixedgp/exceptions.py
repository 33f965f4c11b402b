"""Exception hierarchy shared by the numerical layers."""


class GeometricPhaseError(Exception):
    """Base class for every error raised by :mod:`mixedgp`."""


class NotHermitian(GeometricPhaseError, ValueError):
    pass


class NoConvergence(GeometricPhaseError, ArithmeticError):
    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class DomainError(GeometricPhaseError, ValueError):
    """A spectral function was evaluated outside its domain."""


class NotPSD(GeometricPhaseError, ValueError):
    pass


class NotOrthonormal(GeometricPhaseError, ValueError):
    pass


class InvalidDensityOperator(GeometricPhaseError, ValueError):
    pass


class NodalPoint(GeometricPhaseError, ArithmeticError):
    """The trace inside the phase map vanished, so the phase is undefined.

    The raw modulus is kept on the exception so callers can still report it.
    """

    def __init__(self, message, magnitude):
        super().__init__(message)
        self.magnitude = magnitude


class StepCountTooSmall(GeometricPhaseError, ValueError):
    pass


class NonAntiHermitianGenerator(GeometricPhaseError, ValueError):
    pass


class IndexOutOfRange(GeometricPhaseError, IndexError):
    pass


class DegenerateParameters(GeometricPhaseError, ValueError):
    pass
