"""Shared exception types.

Enumeration routines never truncate silently: when a cap is hit they raise
CapExceeded so the caller can either raise the cap or pick a smaller input.
"""


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap of {cap}; raise the cap explicitly if intended")
        self.what = what
        self.cap = cap


class InvalidSubgroup(ValueError):
    """A purported subgroup failed a structural precondition (closure, normality, containment)."""


class VerificationInconsistency(RuntimeError):
    """Two supposedly equivalent computations disagreed; indicates an internal bug."""
