"""Exception types raised by the simulator."""


class IonCavityError(Exception):
    """Base class for all package errors."""


class TruncationError(IonCavityError, ValueError):
    """A Fock-space cutoff is too small for the requested state.

    Attributes
    ----------
    deficit : float
        Norm missing from the truncated expansion (``1 - sum |c_m|^2``).
    """

    def __init__(self, message, deficit=float("nan")):
        super().__init__(message)
        self.deficit = deficit


class BlockAmbiguityError(IonCavityError, ValueError):
    """A populated basis state cannot be placed in a closed four-level block."""


class PreconditionError(IonCavityError, ValueError):
    pass


class DimensionMismatchError(IonCavityError, ValueError):
    pass
