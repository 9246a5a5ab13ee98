"""Exception hierarchy shared by every module of the package."""


class DdpError(Exception):
    """Base class for all errors raised by ddpgroups."""


class InvalidDescriptor(DdpError, ValueError):
    pass


class OrderLimitExceeded(DdpError, ValueError):
    pass


class NonGroup(DdpError, ValueError):
    pass


class NotNormal(DdpError, ValueError):
    pass


class LengthMismatch(DdpError, ValueError):
    pass


class NotAbelian(DdpError, ValueError):
    pass


class NotPermutation(DdpError, ValueError):
    pass


class NotDdp(DdpError, ValueError):
    """A sequence expected to be DDP failed verification."""


class EvenModulus(DdpError, ValueError):
    pass


class BadExponent(DdpError, ValueError):
    pass


class NotAUnit(DdpError, ValueError):
    pass


class NoDdpExists(DdpError):
    pass


class PreconditionFailed(DdpError):
    pass


class BadChoice(DdpError, ValueError):
    pass


class PlanUnavailable(DdpError):
    pass


class ConjugatorNotFound(DdpError):
    pass


class InternalAssertionFailed(DdpError, AssertionError):
    pass


class NotNilpotent(DdpError, ValueError):
    pass


class NotOddOrder(DdpError, ValueError):
    pass


class GeneratorConditionFailed(DdpError, ValueError):
    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s


class BadPrime(DdpError, ValueError):
    pass


class SearchTimeout(DdpError):
    """Raised when a search exhausts its wall-clock budget.

    ``partial`` holds the non-final count and node total reached so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
