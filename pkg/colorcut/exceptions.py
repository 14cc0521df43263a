from typing import List, NamedTuple, Optional, Sequence


class Violation(NamedTuple):
    """A single broken instance invariant.

    ``edge_index`` points into the graph's edge list when the violation is
    attached to one edge, otherwise it is ``None``.
    """

    kind: str
    message: str
    edge_index: Optional[int] = None

    def __str__(self):
        return self.message


class ColorCutError(Exception):
    """Base class of every error raised by colorcut."""


class InvalidInstanceError(ColorCutError, ValueError):
    """
    Raised when a graph breaks one or more instance invariants.

    Attributes
    ----------
    violations: list of Violation
        Everything that is wrong with the instance, in detection order.
    """

    def __init__(self, violations: Sequence[Violation], message: Optional[str] = None):
        self.violations: List[Violation] = list(violations)
        if message is None:
            message = "; ".join(v.message for v in self.violations) or "invalid instance"
        super().__init__(message)

    @property
    def kinds(self) -> List[str]:
        return [v.kind for v in self.violations]


class InstanceFormatError(InvalidInstanceError):
    """Raised by the instance parser, always tied to one line of the input."""

    def __init__(self, line: int, kind: str, reason: str):
        self.line = line
        self.kind = kind
        self.reason = reason
        super().__init__([Violation(kind, reason)], f"line {line}: {reason}")


class InfeasibleSolutionError(ColorCutError, ValueError):
    """Raised when an operation needs a disconnected color set and got a connected one."""
