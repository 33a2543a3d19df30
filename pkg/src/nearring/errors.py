"""Exception types raised across the package."""


class NearringError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(NearringError, ValueError):
    """An argument violates an operation's precondition."""


# fields
class NotPrime(InvalidInput):
    pass


class ReducibleModulus(InvalidInput):
    pass


class NoSuchOrder(InvalidInput):
    """The field has no element of the requested multiplicative order."""


class ZeroElement(InvalidInput):
    pass


# cyclotomic
class NotCoprime(InvalidInput):
    pass


class ZeroPolynomial(InvalidInput):
    pass


class NonRationalProduct(NearringError, ArithmeticError):
    """A product of all Galois conjugates was not a rational number.

    This signals an internal inconsistency and should never be raised.
    """


# overlaps / designs
class TrivialInput(InvalidInput):
    pass


class NotNormalizable(NearringError):
    """No member of the orbit satisfies 0 < i < j <= s < t <= k/2."""


class OddK(InvalidInput):
    pass


class NotCircular(InvalidInput):
    pass


class KNotDividingQMinus1(NoSuchOrder):
    pass


class ZeroInput(InvalidInput):
    pass


class ZeroRadius(ZeroInput):
    pass


class NonPalindromic(InvalidInput):
    pass


# primes
class WorkLimitExceeded(NearringError):
    """A computation would exceed the configured work guard."""
