"""Dense truth tables for monotone formulas.

Used as an oracle independent of the term-expansion code in
:mod:`readk.sop`: the table is evaluated directly from the tree, and the
minterms are recovered as the minimal true points.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .formula import Const, Formula, Sum, Var, natural_key

MAX_TABLE_VARIABLES = 24


def _check(nvars: int, max_vars: int) -> None:
    if nvars > max_vars:
        raise BudgetExceeded(f"truth table over {nvars} variables exceeds the budget of {max_vars}")


def variable_order(*formulas: Formula) -> tuple[str, ...]:
    names = set()
    for f in formulas:
        names |= f.variables
    return tuple(sorted(names, key=natural_key))


def truth_table(f: Formula, variables: Sequence[str] | None = None,
                max_vars: int = MAX_TABLE_VARIABLES) -> np.ndarray:
    """Boolean array of length ``2**len(variables)``.

    Bit ``i`` of the row index is the value of ``variables[i]``.
    """
    if variables is None:
        variables = variable_order(f)
    variables = tuple(variables)
    missing = f.variables - set(variables)
    if missing:
        raise ValueError(f"variables {sorted(missing)} not in the variable order")
    n = len(variables)
    _check(n, max_vars)
    idx = np.arange(1 << n, dtype=np.int64)
    columns = {v: ((idx >> i) & 1).astype(bool) for i, v in enumerate(variables)}

    def ev(g: Formula) -> np.ndarray:
        if isinstance(g, Var):
            return columns[g.name]
        if isinstance(g, Const):
            return np.full(1 << n, g.value)
        parts = [ev(c) for c in g.children]
        op = np.logical_or if isinstance(g, Sum) else np.logical_and
        return op.reduce(parts)

    return ev(f)


def minimal_true_points(table: np.ndarray, variables: Sequence[str]) -> set[frozenset[str]]:
    """Minimal true points of a monotone truth table, as variable sets."""
    variables = tuple(variables)
    n = len(variables)
    if table.shape != (1 << n,):
        raise ValueError("table length does not match the variable count")
    idx = np.arange(1 << n, dtype=np.int64)
    minimal = table.copy()
    for i in range(n):
        has = (idx >> i) & 1 == 1
        below = table[idx[has] ^ (1 << i)]
        minimal[has] &= ~below
    return {frozenset(v for i, v in enumerate(variables) if p >> i & 1)
            for p in np.flatnonzero(minimal).tolist()}


def tables_equal(f: Formula, g: Formula, max_vars: int = MAX_TABLE_VARIABLES) -> bool:
    order = variable_order(f, g)
    return bool(np.array_equal(truth_table(f, order, max_vars), truth_table(g, order, max_vars)))
