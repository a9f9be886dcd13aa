"""Exception hierarchy shared by all oscrep modules."""


class OscrepError(ValueError):
    pass


class DomainError(OscrepError):
    """A power q**x or b**x is undefined over the reals (negative base, non-integer x)."""


class PreconditionError(OscrepError):
    pass


class NonUnitarizableError(OscrepError):
    pass


class DimensionMismatchError(OscrepError):
    pass


class UnknownAlgebraError(OscrepError):
    pass


class RegimeError(OscrepError):
    """The requested q value falls outside every tabulated regime."""


class ParseError(OscrepError):
    pass
