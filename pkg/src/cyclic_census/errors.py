"""Exception hierarchy shared by every module of the package."""


class CensusError(Exception):
    """Base class for all errors raised by cyclic_census."""


class InvalidSpec(CensusError, ValueError):
    """A group specification violates its arithmetic constraints."""


class CayleyParseError(InvalidSpec):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class SpecSyntaxError(InvalidSpec):
    """Raised by the spec grammar; ``column`` is 1-based."""

    def __init__(self, message, text, column):
        self.text = text
        self.column = column
        super().__init__(f"column {column}: {message}\n  {text}\n  {' ' * (column - 1)}^")


class OrderCap(CensusError):
    """The requested computation exceeds a configured order/size cap."""


class NotSubgroup(CensusError, ValueError):
    pass


class NotNormal(CensusError, ValueError):
    pass


class NotProperSubgroup(CensusError, ValueError):
    pass


class NotCovering(CensusError, ValueError):
    pass


class NotPGroup(CensusError, ValueError):
    pass


class IsCyclic(CensusError, ValueError):
    pass


class SplitFailed(CensusError):
    """A detected central cyclic Sylow subgroup had no p'-complement.

    This only happens if the detection criterion is violated, i.e. an engine bug.
    """


class NotComposite(CensusError, ValueError):
    pass


class TooSmall(CensusError, ValueError):
    pass
