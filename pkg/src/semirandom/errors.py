"""Exception hierarchy shared by all modules."""


class SemiRandomError(Exception):
    """Base class for every error raised by this package."""


class InvalidSizeError(SemiRandomError, ValueError):
    pass


class InvalidVertexError(SemiRandomError, ValueError):
    pass


class StrategyFault(SemiRandomError):
    """A strategy returned a circle outside [n] or otherwise broke its contract."""


class VariantError(SemiRandomError, ValueError):
    pass


class NotConnectedError(SemiRandomError, ValueError):
    pass


class PreconditionError(SemiRandomError, ValueError):
    pass


class InvalidArgumentError(SemiRandomError, ValueError):
    pass


class PatternFormatError(SemiRandomError, ValueError):
    pass


class PatternTooLargeError(SemiRandomError, ValueError):
    pass


class UnsupportedConstantError(SemiRandomError, ValueError):
    pass
