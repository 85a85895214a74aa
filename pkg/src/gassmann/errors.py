class GassmannError(Exception):
    """Base class for every error raised by the package."""


class InputError(GassmannError, ValueError):
    pass


class BoundExceeded(GassmannError):
    """A configured size guard was hit."""


class ClosureBoundExceeded(BoundExceeded):
    pass


class SizeBound(BoundExceeded):
    pass


class DegreeMismatch(InputError):
    pass


class NotASubgroup(InputError):
    pass


class OrderMismatch(InputError):
    pass


class NotEquivalent(GassmannError):
    pass


class SearchExhausted(GassmannError):
    pass


class Singular(GassmannError):
    pass


class NotInvariant(GassmannError):
    pass


class NotBalanced(GassmannError):
    pass


class NotFree(GassmannError):
    def __init__(self, message, simplex=None, element=None):
        super().__init__(message)
        self.simplex = simplex
        self.element = element


class RankMismatch(InputError):
    pass


class BadComplexStructure(InputError):
    pass
