"""Scan-budget guard.

Operations that walk O(X), O(Q^2 B) or O(M N) grids estimate their work in
elementary steps and refuse to start past the budget.  The default is generous
for desk scale; override with the MISSINGDIGIT_BUDGET environment variable.
"""

import os

from .errors import BudgetError

DEFAULT_BUDGET = 200_000_000


def budget_limit() -> int:
    raw = os.environ.get("MISSINGDIGIT_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise BudgetError(f"MISSINGDIGIT_BUDGET is not a number: {raw!r}")


def check_budget(steps: float, what: str) -> None:
    limit = budget_limit()
    if steps > limit:
        raise BudgetError(f"{what} needs ~{steps:.3g} steps, budget is {limit}")
