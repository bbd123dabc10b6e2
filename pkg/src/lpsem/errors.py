"""Exception types shared across modules."""


class CapExceededError(ValueError):
    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} has {size} atoms, above the cap of {cap}")
        self.size = size
        self.cap = cap


class DomainMismatchError(ValueError):
    """Level mapping domain differs from what the condition requires."""


class NotTotalError(ValueError):
    pass


class NotStableError(ValueError):
    pass


class InternalError(AssertionError):
    """An invariant that must always hold was violated; this is a bug."""
