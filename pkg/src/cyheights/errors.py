"""Exception taxonomy shared across the package.

The CLI maps these onto its exit-code contract: invalid input exits 2,
budget or precision exhaustion exits 3, and a failed theorem check
(computed values disagreeing with a prediction) exits 1.
"""


class InputError(ValueError):
    """The caller supplied arguments outside an operation's domain."""


class BudgetError(RuntimeError):
    """A configured size or enumeration budget would be exceeded.

    The message always names the budget so scripts can tell which knob
    to raise.
    """


class PrecisionError(RuntimeError):
    """A p-adic valuation stayed a lower bound after all allowed retries."""


class InternalCheckError(RuntimeError):
    """An exactness assertion failed; this signals a bug, not bad input."""
