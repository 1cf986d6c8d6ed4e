"""Exception hierarchy shared by every module of the package."""


class BmError(Exception):
    """Base class for all package errors."""


class TableError(BmError):
    """A Cayley table could not be parsed or failed validation."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NonSquare(TableError):
    pass


class OutOfRange(TableError):
    pass


class NotLatin(TableError):
    """A row or column repeats an entry.

    ``axis`` is ``"row"`` or ``"column"`` and ``index`` is the offending
    row/column (0-based).
    """

    def __init__(self, axis, index, line=None):
        self.axis = axis
        self.index = index
        super().__init__(f"not a Latin square: repeated entry in {axis} {index}", line)


class GroupTooLarge(BmError):
    pass


class SearchBudgetExceeded(BmError):
    pass


class BudgetExceeded(BmError):
    pass


class DualUndefined(BmError):
    pass


class InternalInconsistency(BmError):
    pass


class NotUnit(BmError):
    pass


class NotAComplex(BmError):
    def __init__(self, row, col, value):
        self.row, self.col, self.value = row, col, value
        super().__init__(f"d2*d3 has nonzero entry {value} at ({row}, {col})")


class TranscriptionMismatch(BmError):
    pass


class NotInKernel(BmError):
    pass


class FormulaSyntaxError(BmError):
    pass
