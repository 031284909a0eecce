class BudgetExceeded(RuntimeError):
    """An instance is too large for a configured budget.

    This is never a negative answer; callers must treat it as "unknown".
    """
