"""Choquet expectation of state-indexed random variables."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError, ValidationError
from .exactlp import as_vector
from .setfunc import Kind, MassFunction, classify, ground_size, members, zeta


def _table(nu) -> tuple[Fraction, ...]:
    return as_vector(getattr(nu, "values", nu))


def decreasing_order(x: Sequence) -> list[int]:
    """State indices sorted by nonincreasing value, ties by index."""
    return sorted(range(len(x)), key=lambda j: (-x[j], j))


def choquet_integral(nu, x: Sequence, order: Sequence[int] | None = None) -> Fraction:
    """Choquet integral of ``x`` with respect to the capacity ``nu``.

    ``order`` optionally fixes the nonincreasing rearrangement; any order
    consistent with the values gives the same result.
    """
    table = _table(nu)
    d = ground_size(table)
    x = as_vector(x)
    if len(x) != d:
        raise ValidationError(f"random variable has {len(x)} entries for {d} states")
    if order is None:
        order = decreasing_order(x)
    else:
        order = list(order)
        if sorted(order) != list(range(d)):
            raise ValidationError(f"{order} is not a permutation of the states")
        if any(x[order[i]] < x[order[i + 1]] for i in range(d - 1)):
            raise ValidationError("order does not sort the variable nonincreasingly")
    total = Fraction(0)
    level = 0
    for i, j in enumerate(order):
        level |= 1 << j
        nxt = x[order[i + 1]] if i + 1 < d else 0
        total += (x[j] - nxt) * table[level]
    return total


def choquet_via_mass(m: MassFunction, x: Sequence) -> Fraction:
    """Sum over focal sets of mass times the minimum of ``x`` on the set."""
    x = as_vector(x)
    if len(x) != m.d:
        raise ValidationError(f"random variable has {len(x)} entries for {m.d} states")
    total = Fraction(0)
    for a, w in enumerate(m.values):
        if w:
            total += w * min(x[j] for j in members(a))
    return total


def expectation(p, x: Sequence) -> Fraction:
    """Ordinary expectation under a probability capacity or mass."""
    if isinstance(p, MassFunction):
        if not p.is_probability:
            raise PreconditionError("expectation requires a probability")
        table = zeta(p.values)
    else:
        table = _table(p)
        if classify(table) is not Kind.PROBABILITY:
            raise PreconditionError("expectation requires a probability")
    x = as_vector(x)
    probs = [table[1 << j] for j in range(len(x))]
    value = sum((pj * xj for pj, xj in zip(probs, x)), Fraction(0))
    assert value == choquet_integral(table, x)
    return value
