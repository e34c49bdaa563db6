"""Exception taxonomy shared across the toolkit.

Resource stops (caps, budgets) are kept distinct from mathematical
negatives and from malformed input so callers can react differently.
"""


class TilekitError(Exception):
    """Base class for all toolkit errors."""


class InputError(TilekitError):
    """Malformed or out-of-contract input."""


class KindMismatchError(InputError):
    """An element does not belong to the group it was used with."""


class CapExceededError(TilekitError):
    """An enumeration would exceed the configured element cap."""


class BudgetExhaustedError(TilekitError):
    """A search ran out of its node/candidate budget before finishing."""


class UndecidedAtCapError(TilekitError):
    """A decision procedure hit its configured bound without a verdict.

    Distinct from a budget stop: the bound is a correctness bound, not a
    convenience limit, so no verdict of any kind can be reported.
    """


class ConstructionInvariantError(TilekitError):
    """A certified construction violated one of its own invariants."""
