"""Exception hierarchy shared by all modules."""


class DiracError(ValueError):
    """Base class for domain errors raised by skdirac."""


class DimensionError(DiracError):
    pass


class NonFiniteError(DiracError):
    pass


class NotHermitianError(DiracError):
    pass


class NotPositiveDefiniteError(DiracError):
    pass


class SylvesterSingularError(DiracError):
    """The Sylvester operator X -> AX + XB is (numerically) singular."""


class RiccatiError(DiracError):
    pass


class PoleError(DiracError):
    """Evaluation point lies on (or too close to) a pole."""


class PreconditionError(DiracError):
    pass


class ConsistencyError(DiracError):
    """Two routes that must agree in exact arithmetic disagree numerically."""


class ConvergenceError(DiracError):
    pass
