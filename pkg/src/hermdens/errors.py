"""Shared exception types.

BudgetError subclasses ValueError so existing guard call sites keep their
contract; the command line layer tells the two apart for exit codes.
"""


class BudgetError(ValueError):
    """A brute-force request exceeds the built-in safety budget."""
