"""Size guards for exhaustive computations.

Everything in this package enumerates something (points, frequencies,
subspaces).  The budgets below keep a desk-scale run from accidentally
requesting an astronomically large sweep; callers can always pass a
larger budget explicitly, or ``None`` to disable the check.
"""

DEFAULT_POINT_BUDGET = 100_000      # max p^n for dense point/frequency tables
DEFAULT_SUBSPACE_BUDGET = 200_000   # max |G(n,k)| for Grassmannian enumeration


class BudgetError(Exception):
    """A requested enumeration exceeds the configured budget."""


def check_budget(value: int, budget, what: str) -> None:
    if budget is not None and value > budget:
        raise BudgetError(f"{what} = {value} exceeds budget {budget}")
