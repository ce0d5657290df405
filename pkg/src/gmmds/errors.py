"""Exception hierarchy shared by every module."""


class GmmdsError(Exception):
    """Base class for all package errors."""


class MalformedInput(GmmdsError, ValueError):
    """Input is structurally invalid (bad JSON, wrong shapes, bad indices)."""


class Refused(GmmdsError):
    """A check was refused because it exceeds a configured budget or cap."""


# gf
class NonPrimeP(MalformedInput):
    pass


class ReducibleModulus(MalformedInput):
    pass


class DegreeMismatch(MalformedInput):
    pass


class ZeroToNegativePower(GmmdsError, ZeroDivisionError):
    pass


# exactla
class NonSquare(MalformedInput):
    pass


class RankDeficient(GmmdsError, ValueError):
    pass


class IndexOutOfRange(MalformedInput, IndexError):
    pass


# patterns
class ImproperConfig(GmmdsError, ValueError):
    pass


class NoMutationExists(GmmdsError, RuntimeError):
    pass


class PreconditionFailed(GmmdsError, ValueError):
    pass


class NotGeneric(GmmdsError, ValueError):
    pass


class CompletionFailed(GmmdsError, RuntimeError):
    pass


# codes
class DuplicatePoints(MalformedInput):
    pass


class DimensionMismatch(MalformedInput):
    pass


class LinearlyDependentFamily(MalformedInput):
    pass


class ZeroAlphaInLinearizedRS(MalformedInput):
    pass


class TooLarge(Refused):
    pass


class BudgetExhausted(Refused):
    pass


class TooFewColumns(MalformedInput):
    pass


# mdsb / listdec / tensor / reduce
class NotMdsb1(GmmdsError, ValueError):
    pass


class BadParams(MalformedInput):
    pass


class Incompatible(MalformedInput):
    pass


class DependentInput(GmmdsError, ValueError):
    pass


class NTooSmall(GmmdsError, ValueError):
    pass
