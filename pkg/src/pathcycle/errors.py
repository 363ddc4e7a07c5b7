"""Exception hierarchy shared by every module of the package."""


class PathCycleError(Exception):
    """Base class for all errors raised by :mod:`pathcycle`."""


class ParseError(PathCycleError, ValueError):
    pass


class DuplicateLabel(ParseError):
    pass


class LabelNotPresent(PathCycleError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return str(self.args[0]) if self.args else ""


class LabelClash(PathCycleError, ValueError):
    pass


class NotATubing(PathCycleError, ValueError):
    pass


class NotConnected(PathCycleError, ValueError):
    pass


class NotAPath(PathCycleError, ValueError):
    pass


class NotACycle(PathCycleError, ValueError):
    pass


class HostNotCycle(NotACycle):
    pass


class InvalidMultiset(PathCycleError, ValueError):
    pass


class NotAClosure(PathCycleError, ValueError):
    pass


class OrderMismatch(PathCycleError, ValueError):
    pass


class OrderExceeded(PathCycleError, ValueError):
    pass


class VertexSelectionError(PathCycleError, RuntimeError):
    """A tubing-derived vertex failed its uniqueness verification."""
