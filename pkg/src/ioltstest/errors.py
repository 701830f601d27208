"""Exception types shared across the toolkit."""


class IoltsTestError(Exception):
    """Base class for all toolkit errors."""


class FormatError(IoltsTestError):
    """A model, suite, or regex artifact violates its format or an invariant."""


class AlphabetMismatchError(IoltsTestError):
    """Two artifacts that must share an alphabet do not."""
