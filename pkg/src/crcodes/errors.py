"""Exception types shared across the package."""


class CrcodesError(Exception):
    """Base class for all package-specific errors."""


class CapacityError(CrcodesError):
    """A full-space operation would exceed the configured vertex cap."""


class FieldRequiredError(CrcodesError):
    """Operation needs GF(q) arithmetic but the alphabet is only a cyclic group."""


class NotAdditiveError(CrcodesError):
    """Operation needs a code closed under subtraction."""


class UndefinedMinimumDistanceError(CrcodesError):
    """Minimum distance requested for a code with fewer than two words."""


class SpectrumError(CrcodesError):
    """Eigenvalue scan found fewer integer roots than the matrix order requires."""


class DisconnectedGraphError(CrcodesError):
    """Distance-regularity certification needs a connected graph."""


class TheoremViolationError(CrcodesError):
    """An internally certified structure contradicts a property it must satisfy.

    Raising this always indicates an implementation bug (or corrupted input),
    never a mathematical discovery; the attached witness makes it replayable.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DigestMismatchError(CrcodesError):
    """A stored record's digest does not match its reconstructed content."""


class CodeSpecError(CrcodesError):
    """A code-spec JSON document is malformed or inconsistent."""
