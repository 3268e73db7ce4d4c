"""
Domain errors. Every error raised by the library derives from SynthesisError;
the command line reports them by class name.
"""


class SynthesisError(Exception):
    @property
    def name(self):
        return type(self).__name__


class ConfigError(SynthesisError):
    pass


class ParseError(SynthesisError):
    pass


class UnknownSystem(SynthesisError):
    pass


# forms
class IllFormed(SynthesisError):
    pass


class UnknownSymbol(SynthesisError):
    pass


# relations
class StratificationError(SynthesisError):
    pass


class NotASubrelation(SynthesisError):
    pass


class SymbolClash(SynthesisError):
    pass


# foundation
class ClosednessViolation(SynthesisError):
    pass


class NoSuccessor(SynthesisError):
    pass


class NotEnumerable(SynthesisError):
    pass


class DepthMismatch(SynthesisError):
    pass


class NotOnChain(SynthesisError):
    pass


# reals
class OutOfRange(SynthesisError):
    pass


# constituents
class UnboundVariable(SynthesisError):
    pass


class ArityMismatch(SynthesisError):
    pass


class DepthZero(SynthesisError):
    pass


# modal_topology
class UnknownAtom(SynthesisError):
    pass


class MeetUndefined(SynthesisError):
    pass


class NotAPartialOrder(SynthesisError):
    pass


class CorrespondenceViolation(SynthesisError):
    """A frame contradicts a correspondence the checker asserts; an internal error."""


# budgets
class BudgetExceeded(SynthesisError):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class DepthBudgetExceeded(BudgetExceeded):
    pass


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class SizeBudgetExceeded(BudgetExceeded):
    pass
