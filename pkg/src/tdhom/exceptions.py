"""Exception types raised across the package."""


class TdhomError(Exception):
    """Base class for all errors raised by tdhom."""


class InputError(TdhomError, ValueError):
    """Malformed or out-of-range input (bad vertex ids, pins, tuples...)."""


class CapacityError(TdhomError):
    """An input exceeds a configured brute-force bound."""


class NotASubtreeError(InputError):
    """A vertex set has no unique minimal element in a tree order."""


class ConstructionError(TdhomError, RuntimeError):
    """A self-verifying construction failed its own checks."""
