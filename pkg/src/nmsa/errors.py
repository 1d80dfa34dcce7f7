"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: ``ValidationError``/``ParseError`` -> 2,
``ResourceCapExceeded``/``BudgetExceeded`` -> 3, ``UnsupportedCombination`` -> 4.
"""


class NMSAError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(NMSAError, ValueError):
    """Input violates a structural invariant."""


class ParseError(NMSAError, ValueError):
    """A file or flag could not be parsed."""


class UnequalRowLengths(ValidationError):
    pass


class AllGapColumn(ValidationError):
    def __init__(self, column):
        # column is 1-based in messages
        super().__init__(f"column {column} contains only gaps")
        self.column = column


class RowMismatchesSequence(ValidationError):
    pass


class EmptyIndexSet(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class BitExceedsIndex(ValidationError):
    pass


class BitSumMismatch(ValidationError):
    pass


class ZeroColumn(ValidationError):
    pass


class WrongRowCount(ValidationError):
    pass


class ArityMismatch(ValidationError):
    pass


class AlphabetMismatch(ValidationError):
    pass


class NonPositiveScale(ValidationError):
    pass


class LengthVectorOutOfRange(ValidationError):
    pass


class IncoherentStar(ValidationError):
    pass


class UnsupportedCombination(NMSAError):
    pass


class ResourceCapExceeded(NMSAError):
    """Estimated table size exceeds the configured cap; raised before allocation."""

    def __init__(self, estimate, cap, what="cells"):
        super().__init__(f"estimated {estimate} {what} exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


class BudgetExceeded(ResourceCapExceeded):
    def __init__(self, estimate, cap):
        super().__init__(estimate, cap, what="alignments")
