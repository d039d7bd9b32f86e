"""Exception types raised by seedcluster."""


class InputError(ValueError):
    """Invalid graph, node id, seed specification or parameter."""


class ParseError(InputError):
    """Malformed line in a graph, seed or node-list file."""

    def __init__(self, message, path=None, lineno=None):
        where = ""
        if path is not None:
            where = f"{path}:"
        if lineno is not None:
            where += f"{lineno}:"
        super().__init__(f"{where} {message}" if where else message)
        self.path = path
        self.lineno = lineno


class InfeasibleSpecError(InputError):
    """The seed set has no positive overlap with itself, so no descent can start."""


class UndefinedConductanceError(ValueError):
    """Conductance requested for the empty set or the full node set."""


class BoundUndefinedError(ValueError):
    """Improvement constant requested outside the range where it is finite."""


class ContractError(RuntimeError):
    """An operation was called on state that violates its precondition."""
