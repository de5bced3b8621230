"""Exception types shared across the package."""


class RashomonTreesError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RashomonTreesError):
    """Input data or configuration violates a documented requirement."""


class SchemaError(RashomonTreesError):
    """A file's structure is malformed (headers, empty file, bad columns)."""


class DimensionError(RashomonTreesError):
    """A sample's width does not match the expected number of conditions."""


class BudgetExceeded(RashomonTreesError):
    """Search state space exceeded the configured node budget."""

    def __init__(self, explored: int, budget: int):
        super().__init__(
            f"enumeration explored {explored} subtrees, exceeding the node "
            f"budget of {budget}; raise node_budget or lower depth_cap"
        )
        self.explored = explored
        self.budget = budget


class OracleScopeError(RashomonTreesError):
    """Problem size is outside the exhaustive oracle's hard limits."""


class EmptySetError(RashomonTreesError):
    pass


class PrefixNotFound(RashomonTreesError):
    pass


class UnknownTreeId(RashomonTreesError):
    pass


class UnknownFeature(RashomonTreesError):
    pass


class InvalidDepth(RashomonTreesError):
    pass


class UnsupportedVersion(RashomonTreesError):
    pass


class EmptyStoreError(RashomonTreesError):
    pass
