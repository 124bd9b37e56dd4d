"""Exception hierarchy shared by all orbnet modules."""


class OrbnetError(Exception):
    """Base class for orbnet errors."""


class DomainError(OrbnetError):
    """An argument violates a documented precondition (exit code 1 in the CLI)."""


class MapSyntaxError(DomainError):
    """A map-spec string does not match the grammar.

    ``position`` is the 0-based character offset where parsing diverged
    from every production.
    """

    def __init__(self, text: str, position: int, reason: str = ""):
        self.text = text
        self.position = position
        detail = f": {reason}" if reason else ""
        super().__init__(f"syntax error at position {position} in {text!r}{detail}")


class PrecisionError(DomainError):
    """A floor-power evaluation would leave the exactly representable float range."""


class UndefinedMetricError(OrbnetError):
    """The requested quantity is undefined for this graph (e.g. lambda at nu = 0)."""


class BudgetError(OrbnetError):
    """A configured resource budget (clique nodes, recursion, matrix size) was exceeded."""
