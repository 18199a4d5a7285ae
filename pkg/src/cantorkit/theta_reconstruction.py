"""Recover every truth table of a homeomorphism Theta from its first table
and the conjugate Phi = Theta^-1 . S* . Theta.

Since Theta . Phi = S* . Theta, output n+1 of Theta is output n of Theta
read through Phi, so table n+1 is table n with Phi substituted into it.
"""

from __future__ import annotations

from typing import Literal

from .core_bits import Window
from .tt_algebra import (
    DEFAULT_MAX_USE,
    HomeoPair,
    OutputTable,
    TruthTableFunctional,
    shift,
    substitute,
    tables_equivalent,
    tt_compose,
)


def reconstruct_tables(
    phi: TruthTableFunctional,
    table0: OutputTable,
    upto: int,
    max_use: int = DEFAULT_MAX_USE,
) -> list[OutputTable]:
    tables = [table0]
    while len(tables) < upto:
        tables.append(substitute(tables[-1], phi, max_use))
    return tables[:upto]


def conjugate_shift(
    theta: HomeoPair,
    upto: int,
    direction: Literal["backward", "forward"] = "backward",
) -> TruthTableFunctional:
    """Theta^-1 . S* . Theta ("backward") or Theta . S* . Theta^-1 ("forward")."""
    first, last = theta.forward, theta.backward
    if direction == "forward":
        first, last = last, first
    elif direction != "backward":
        raise ValueError(f"direction must be 'backward' or 'forward', not {direction!r}")
    return tt_compose(last, tt_compose(shift(), first, 0), upto)


def verify_conjugacy(theta: HomeoPair, phi: TruthTableFunctional, w: Window) -> bool:
    """Theta . Phi and S* . Theta agree on every output below ``w.limit``."""
    lhs = tt_compose(theta.forward, phi, w.limit)
    rhs = tt_compose(shift(), theta.forward, w.limit)
    return all(tables_equivalent(lhs.table(n), rhs.table(n)) for n in range(w.limit))
