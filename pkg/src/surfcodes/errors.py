"""Exception hierarchy shared by all modules."""


class SurfcodesError(Exception):
    """Base class for every error raised by this package."""


# finite fields
class NotPrime(SurfcodesError, ValueError):
    pass


class NotIrreducible(SurfcodesError, ValueError):
    pass


class TooLarge(SurfcodesError, ValueError):
    """An enumeration or field size exceeds what is feasible at desk scale."""


class MixedFields(SurfcodesError, TypeError):
    pass


class DivisionByZero(SurfcodesError, ZeroDivisionError):
    pass


# geometry / codes
class ArityMismatch(SurfcodesError, ValueError):
    pass


class EmptySupport(SurfcodesError, ValueError):
    pass


class BudgetExceeded(SurfcodesError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"enumeration of {needed} codeword classes exceeds budget {budget}")
        self.needed = needed
        self.budget = budget


class LengthMismatch(SurfcodesError, ValueError):
    pass


# invariants / bounds
class NonIntegralGenus(SurfcodesError, ValueError):
    pass


class NonIntegral(SurfcodesError, ValueError):
    pass


class InvalidGenera(SurfcodesError, ValueError):
    pass


class NegativeDefect(SurfcodesError, ValueError):
    pass


class NegativeParameter(SurfcodesError, ValueError):
    pass


class HypothesisMissing(SurfcodesError, ValueError):
    """A bound was requested whose hypotheses are absent or inconsistent."""


class EllTooSmall(SurfcodesError, ValueError):
    pass


class FormatError(SurfcodesError, ValueError):
    """Malformed text input (field header, polynomial file, matrix file)."""
