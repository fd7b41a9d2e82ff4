"""Exception hierarchy shared by every module."""


class BelGameError(Exception):
    """Base class for all errors raised by belgames."""


class ValidationError(BelGameError, ValueError):
    """Malformed input: wrong dimensions, invalid masses, bad documents."""


class PreconditionError(BelGameError, ValueError):
    """Input is well formed but an operation's precondition does not hold."""


class UnsupportedConfigurationError(PreconditionError):
    """The game's prior configuration is outside what the operation decides.

    Raised, for instance, when a common prior is required but players hold
    distinct priors, or when a probabilistic prior is required but the
    common prior is a general belief function.
    """
