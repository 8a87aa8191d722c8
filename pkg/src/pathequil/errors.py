"""Exception hierarchy shared by every module."""


class PathEquilError(Exception):
    """Base class for all library errors."""


class EmptyPeriod(PathEquilError, ValueError):
    pass


class ParseError(PathEquilError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnrankedLabel(PathEquilError, KeyError):
    def __str__(self) -> str:
        return f"label {self.args[0]!r} has no rank"


class ZeroOutdegree(PathEquilError, ValueError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} has no outgoing arc")


class DuplicateArc(PathEquilError, ValueError):
    def __init__(self, source, target):
        self.arc = (source, target)
        super().__init__(f"more than one arc from {source!r} to {target!r}")


class MissingLabel(PathEquilError, ValueError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"node {node!r} carries no label")


class DummyLabelClash(PathEquilError, ValueError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"dummy label {label!r} already occurs in the graph")


class InvalidWalk(PathEquilError, ValueError):
    pass


class InvalidStrategy(PathEquilError, ValueError):
    pass


class PathBudgetExceeded(PathEquilError, RuntimeError):
    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"more than {budget} paths enumerated; raise the budget")


class StrategySpaceTooLarge(PathEquilError, RuntimeError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} strategies exceed the cap of {cap}")


class CyclicPreference(PathEquilError, RuntimeError):
    """No maximal continuation strictly above the current one exists."""

    def __init__(self, walk, candidates=()):
        self.walk = tuple(walk)
        self.candidates = tuple(candidates)
        super().__init__(
            f"no maximal continuation improves on the current one after walk {self.walk!r}"
        )


class InvalidTarget(PathEquilError, ValueError):
    pass


class NotTotalOnSample(PathEquilError, ValueError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"policy does not compare {pair[0]!r} and {pair[1]!r}")
