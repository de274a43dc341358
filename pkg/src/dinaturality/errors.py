"""Exception hierarchy shared by every module of the package."""


class DinatError(ValueError):
    """Base class for all errors raised by :mod:`dinaturality`."""


class ZeroVars(DinatError):
    pass


class OutOfRangeIndex(DinatError):
    pass


class ArityMismatch(DinatError):
    pass


class VarIndexOutOfRange(DinatError):
    pass


class InvalidNet(DinatError):
    """A Petri net violates FBCF, self-loop or disjointness constraints."""


class NotEnabled(DinatError):
    pass


class WrongLabel(DinatError):
    pass


class Cyclic(DinatError):
    """Raised when a firing sequence is requested for a net with a cycle.

    ``cycle`` holds the offending closed path as a list of vertex ids.
    """

    def __init__(self, message, cycle=()):
        super().__init__(message)
        self.cycle = list(cycle)


class StateSpaceExceeded(DinatError):
    pass


class InvalidCospan(DinatError):
    pass


class SizeLimitExceeded(DinatError):
    pass


class InvalidSignature(DinatError):
    pass


class InterfaceMismatch(DinatError):
    pass


class PsiNotDinaturalAtI(DinatError):
    pass


class ComponentCyclic(Cyclic):
    pass


class MissingDinaturality(DinatError):
    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = list(missing)


class BudgetExceeded(DinatError):
    pass


class ShapeMismatch(DinatError):
    pass


class IndexOutOfRange(DinatError):
    pass
