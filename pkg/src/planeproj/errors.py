class PreconditionError(ValueError):
    """An operation was called outside the hypotheses it is defined for."""


class FalsificationError(AssertionError):
    """A proved statement failed on a concrete instance.

    This is always a library bug; ``dump`` carries a reproducible description
    of the instance.
    """

    def __init__(self, message: str, dump: dict | None = None):
        super().__init__(message)
        self.dump = dump or {}
