"""Exception hierarchy for the polyadic engine."""


class PolyadicError(Exception):
    """Base class for all engine errors."""


class ArityMismatch(PolyadicError, ValueError):
    pass


class DomainViolation(PolyadicError, ValueError):
    pass


class PositionOverlap(PolyadicError, ValueError):
    pass


class InvalidParams(PolyadicError, ValueError):
    pass


class SweepBudgetExceeded(PolyadicError):
    def __init__(self, needed, budget, what="sweep"):
        super().__init__(f"{what} needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NotQuerable(PolyadicError):
    pass


class NonUnique(PolyadicError):
    pass


class NoSolution(PolyadicError):
    pass


class NotAGroup(PolyadicError):
    pass


class IdentityLawFailed(PolyadicError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoInverse(PolyadicError):
    pass


class InconsistentDecomposition(PolyadicError):
    pass


class HypothesisFailed(PolyadicError):
    def __init__(self, which, witness=None):
        super().__init__(f"hypothesis {which} failed, witness={witness!r}")
        self.which = which
        self.witness = witness


class ConstructionNotGroup(PolyadicError):
    """Reverse construction produced a non-group although its hypotheses held."""


class QMismatch(PolyadicError, ValueError):
    pass


class TheoremViolation(PolyadicError):
    """Binary law and both compatibility conditions held but the n-ary law did not."""
