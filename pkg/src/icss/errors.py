"""Exception types shared across the package."""


class IcssError(Exception):
    """Base class for all package-specific errors."""


class InvalidSimplex(IcssError):
    pass


class DegreeOutOfRange(IcssError):
    pass


class ComplexMismatch(IcssError):
    pass


class InvalidMultiplicity(IcssError):
    pass


class InvalidIndex(IcssError):
    pass


class NotAlternating(IcssError):
    pass


class NotAComplex(IcssError):
    pass


class NotASubgroup(IcssError):
    pass


class TruncationInsufficient(IcssError):
    pass


class ParseError(IcssError):
    pass


class UnknownFixture(IcssError):
    pass
