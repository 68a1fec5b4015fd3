"""Exception hierarchy shared by all modules."""


class NcsfError(Exception):
    """Base class for every error raised by the package."""


class ZeroDenominator(NcsfError, ZeroDivisionError):
    pass


class PoleAtLimit(NcsfError):
    pass


class NotFiner(NcsfError, ValueError):
    pass


class WeightMismatch(NcsfError, ValueError):
    pass


class DegreeCapError(NcsfError, ValueError):
    pass


class SingularMatrix(NcsfError):
    pass


class ConventionMismatch(NcsfError):
    pass
