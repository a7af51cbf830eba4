"""Exception types raised by the library."""


class HardyBidiscError(Exception):
    """Base class for library errors."""


class DegenerateArcError(HardyBidiscError, ValueError):
    """An arc of zero length, or a tent with an invalid half-width."""


class DivergenceError(HardyBidiscError, ValueError):
    """Boundary evaluation requested for a symbol without a summable tail."""


class WindowTooSmallError(HardyBidiscError, ValueError):
    """A Hankel window misses frequencies an exact symbol can reach."""


class HypothesisError(HardyBidiscError, ValueError):
    """Inputs violate the standing hypotheses of a checker."""


class SymbolFormatError(HardyBidiscError, ValueError):
    """Malformed symbol, matrix or config file."""
