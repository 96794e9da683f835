class CapacityError(ValueError):
    """Raised when an input exceeds a configured size bound."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed; points at an enumeration bug."""


class UnsupportedPrimeError(ValueError):
    """The prime is outside the range where the classification applies.

    For p = 3 and p = 7 the counts are known constants (96 and 91) taken from
    the literature; they are reported, never computed.
    """

    KNOWN_COUNTS = {3: 96, 7: 91}

    def __init__(self, p: int, reason: str | None = None):
        self.p = p
        if reason is None:
            if p in self.KNOWN_COUNTS:
                reason = (
                    f"p={p} is not covered: a group of order 8p need not be a "
                    f"semidirect product of its Sylow subgroups here. The known "
                    f"number of left braces of size {8 * p} is "
                    f"{self.KNOWN_COUNTS[p]} (documented constant, not computed)."
                )
            else:
                reason = f"p={p} must be an odd prime"
        super().__init__(reason)
