"""Exception hierarchy shared by all trusslab modules."""

from __future__ import annotations


class TrussLabError(Exception):
    """Base class for all trusslab errors."""


class InputError(TrussLabError):
    """Malformed input data (bad JSON shape, out-of-range entries, unknown kind)."""


class GroupValidationError(TrussLabError):
    """A Cayley table failed a group axiom; ``witness`` locates the violation."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotLatinSquare(GroupValidationError):
    pass


class NotAssociative(GroupValidationError):
    pass


class NoIdentityAtZero(GroupValidationError):
    pass


class CarrierMismatch(TrussLabError):
    """Operands live on different carrier groups."""


class GroupMismatch(TrussLabError):
    """Structures compared across distinct carrier groups."""


class MissingComponent(TrussLabError):
    """An algebra object lacks a component its kind requires."""


class NotVerified(TrussLabError):
    """Operation requires an object that already passed check()."""


class VerificationFailed(TrussLabError):
    """check() found a failing axiom; ``report`` is the first failing LawReport."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class NotIdempotent(TrussLabError):
    pass


class NotEndomorphism(TrussLabError):
    pass


class SigmaNotIdempotentEndo(TrussLabError):
    """The unary map must be an idempotent group endomorphism here."""


class SigmaDoesNotFixZero(TrussLabError):
    pass


class DotNotDistributive(TrussLabError):
    pass


class DotNotColumnConstant(TrussLabError):
    """The second operation must depend only on its second argument."""


class HypothesisFailed(TrussLabError):
    """A named transform hypothesis does not hold; ``flag`` says which one."""

    def __init__(self, flag: str, message: str = ""):
        super().__init__(message or f"hypothesis failed: {flag}")
        self.flag = flag


class NotInterchange(TrussLabError):
    pass


class NotAnIdeal(TrussLabError):
    pass


class PreconditionFailed(TrussLabError):
    pass


class CarrierTooLarge(TrussLabError):
    """Requested exhaustive computation exceeds the configured size cap."""
