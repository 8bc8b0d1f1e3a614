"""Exception hierarchy shared by every module."""


class AlgebraError(Exception):
    """Base class for all errors raised by approxreg."""


class DimensionError(AlgebraError):
    """Objects with incompatible variable counts or ranks were combined."""


class RingMismatchError(AlgebraError):
    """Operands live in different rings or ambient modules."""


class NotHomogeneousError(AlgebraError):
    pass


class DegreeUndefinedError(AlgebraError):
    pass


class ZeroDivisorInputError(AlgebraError):
    """Colon/saturation by the zero ideal, or a zero linear form."""


class NotMinimalError(AlgebraError):
    pass


class NotFiniteLengthError(AlgebraError):
    pass


class NotFilterRegularError(AlgebraError):
    pass


class GenericityError(AlgebraError):
    """Random sampling failed to produce a certified generic object."""


class NoBoundError(AlgebraError):
    """The hypotheses of a regularity theorem cannot be met."""


class CapExceededError(AlgebraError):
    """A combinatorial enumeration was refused because it is too large."""


class ConfigurationError(AlgebraError):
    pass


class ConsistencyError(AlgebraError):
    """Two independent computations of the same quantity disagree."""
