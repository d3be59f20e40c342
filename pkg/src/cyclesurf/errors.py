"""Exception hierarchy shared by all modules."""


class CycleSurfError(Exception):
    """Base class for every error raised by this package."""


class SumMismatch(CycleSurfError, ValueError):
    pass


class NonPositiveEntry(CycleSurfError, ValueError):
    pass


class NotAUnit(CycleSurfError, ValueError):
    pass


class MixedModulus(CycleSurfError, ValueError):
    pass


class WrongDimension(CycleSurfError, ValueError):
    pass


class NotPure2Complex(CycleSurfError, ValueError):
    pass


class VertexNotPresent(CycleSurfError, KeyError):
    pass


class NotPseudomanifold(CycleSurfError, ValueError):
    pass


class NotASurface(CycleSurfError, ValueError):
    """Raised when some vertex link is neither a single cycle nor a single path.

    ``vertex`` and ``link`` identify the offending star when known.
    """

    def __init__(self, message, vertex=None, link=None):
        super().__init__(message)
        self.vertex = vertex
        self.link = link


class KTooSmall(CycleSurfError, ValueError):
    pass


class BadResidue(CycleSurfError, ValueError):
    pass


class UnknownSeries(CycleSurfError, ValueError):
    pass


class ParseError(CycleSurfError, ValueError):
    pass
