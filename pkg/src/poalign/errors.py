"""Exception hierarchy.

Everything raised on purpose derives from :class:`PoalignError`.  Search and
state-space limits share :class:`BudgetExceeded` so the CLI can map them to a
single exit code.
"""


class PoalignError(Exception):
    pass


class CycleError(PoalignError):
    """The given relation pairs close into a cycle."""

    def __init__(self, message, cycle=()):
        super().__init__(message)
        self.cycle = tuple(cycle)


class ElementIndexError(PoalignError, IndexError):
    pass


class AntichainError(PoalignError):
    pass


class BudgetExceeded(PoalignError):
    pass


class StateSpaceExceeded(BudgetExceeded):
    pass


class SearchBudgetExceeded(BudgetExceeded):
    pass


class CapExceeded(BudgetExceeded):
    pass


class NoOrderExists(PoalignError):
    """No strict partial order on the columns is compatible with the rows.

    ``cycle`` is a list of ``(column, column, row, elem, elem)`` steps; every
    step says that ``elem`` precedes ``elem`` in ``row`` and therefore the first
    column is forced below the second.
    """

    def __init__(self, message, cycle=(), cross=None):
        super().__init__(message)
        self.cycle = list(cycle)
        self.cross = cross


class RowNotTotal(PoalignError):
    pass


class EmptyRowSet(PoalignError):
    pass


class InvalidPartition(PoalignError):
    pass


class InconsistentCorrespondence(PoalignError):
    pass


class BlockOrderUnsatisfiable(PoalignError):
    pass


class MiddleMismatch(PoalignError):
    pass


class NotPairwise(PoalignError):
    pass


class PropertyViolation(PoalignError):
    def __init__(self, prop, witness):
        super().__init__(f"relation violates ({prop}): {witness}")
        self.prop = prop
        self.witness = witness


class ParseError(PoalignError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
