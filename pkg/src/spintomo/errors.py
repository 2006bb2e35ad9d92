"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary domain errors (bad shapes, invalid
parameters).  The classes below exist where callers need to distinguish the
failure mode programmatically, e.g. for CLI exit codes.
"""


class InformationallyIncompleteError(ValueError):
    """Frame set does not determine the state; carries the numerical rank."""

    def __init__(self, rank: int, needed: int):
        self.rank = rank
        self.needed = needed
        super().__init__(
            f"informationally incomplete frame set: rank {rank} < {needed}"
        )


class InvalidChannelError(ValueError):
    """Kraus operators violate the completeness relation."""


class ZeroProbabilityError(ValueError):
    """Measurement outcome has (numerically) zero probability."""


class DegeneratePointError(ValueError):
    """Geometric check is undefined at this point (division by zero case)."""
