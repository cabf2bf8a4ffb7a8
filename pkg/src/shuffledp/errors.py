"""Exception types shared across the package."""


class ShuffleDpError(Exception):
    """Base class for errors raised by this package."""


class ResourceLimitError(ShuffleDpError):
    """A requested computation exceeds a configured size cap.

    Raised instead of silently truncating: the caller asked for a
    combinatorial evaluation whose term count would blow past the cap,
    and the right fix is either a smaller order or an explicit cap
    override, never a partial sum.
    """

    def __init__(self, message: str, *, cap: int | None = None) -> None:
        super().__init__(message)
        self.cap = cap


class BoundNotApplicableError(ShuffleDpError):
    """A closed-form privacy bound's preconditions do not hold.

    The clones-style shuffle bound is only valid in a bounded
    local-epsilon regime; outside it there is no honest number to
    return.
    """
