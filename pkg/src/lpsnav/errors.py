"""Exception taxonomy shared by the library and the CLI exit-code mapping."""

from __future__ import annotations


class ParameterError(ValueError):
    """Invalid mathematical parameters (bad prime pair, off-graph vertex, ...)."""


class InfeasibleCongruence(ParameterError):
    """The linear congruence defining an instance has no solutions."""


class BudgetExhausted(RuntimeError):
    """A search or factoring budget ran out before the task was decided."""


class HMaxExceeded(BudgetExhausted):
    """No path was certified up to the configured height cap."""
