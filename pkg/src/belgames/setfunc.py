"""
Set functions on a finite state space: capacities, mass functions, belief
and plausibility functions.

Subsets of the state space are bitmasks with the first state as the lowest
bit, and a set function is a dense tuple of ``2**d`` Fractions indexed by
mask.  Mass and belief tables are always exact.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ValidationError
from .exactlp import as_fraction, as_vector


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def members(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def submasks(mask: int):
    """All submasks of ``mask`` including 0, in decreasing order."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def ground_size(table: Sequence) -> int:
    d = len(table).bit_length() - 1
    if d < 0 or len(table) != 1 << d:
        raise ValidationError(f"set function table has length {len(table)}, not a power of two")
    return d


@dataclass(frozen=True)
class StateSpace:
    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        if not labels:
            raise ValidationError("state space needs at least one state")
        if len(set(labels)) != len(labels):
            raise ValidationError(f"state labels must be distinct: {labels}")
        object.__setattr__(self, "labels", labels)

    @classmethod
    def of_size(cls, d: int) -> StateSpace:
        return cls(tuple(f"w{j + 1}" for j in range(d)))

    @property
    def d(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.d) - 1

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.labels.index(str(lab))
            except ValueError:
                raise ValidationError(f"unknown state {lab!r}") from None
        return m

    def subset(self, mask: int) -> list[str]:
        return [self.labels[i] for i in members(mask)]


# -- transforms -------------------------------------------------------------

def zeta(m: Sequence) -> tuple[Fraction, ...]:
    """``f(A) = sum of m(B) over B subset of A`` (fast subset-sum transform)."""
    d = ground_size(m)
    f = list(as_vector(m))
    for i in range(d):
        bit = 1 << i
        for a in range(len(f)):
            if a & bit:
                f[a] += f[a ^ bit]
    return tuple(f)


def mobius_inverse(f: Sequence) -> tuple[Fraction, ...]:
    """Inverse of :func:`zeta`; values may be negative for general capacities."""
    d = ground_size(f)
    m = list(as_vector(f))
    for i in range(d):
        bit = 1 << i
        for a in range(len(m)):
            if a & bit:
                m[a] -= m[a ^ bit]
    return tuple(m)


# -- typed set functions ----------------------------------------------------

def _check_mass(values: Sequence[Fraction]) -> None:
    if values[0] != 0:
        raise ValidationError("mass of the empty set must be 0")
    neg = [a for a, v in enumerate(values) if v < 0]
    if neg:
        raise ValidationError(f"mass must be nonnegative (negative at subset mask {neg[0]})")
    total = sum(values, Fraction(0))
    if total != 1:
        raise ValidationError(f"mass must sum to 1 (got {total})")


@dataclass(frozen=True)
class MassFunction:
    """Nonnegative normalized mass over the subsets of the state space."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = as_vector(self.values)
        ground_size(vals)
        _check_mass(vals)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_dict(cls, d: int, masses: dict) -> MassFunction:
        table = [Fraction(0)] * (1 << d)
        for mask, v in masses.items():
            if not 0 <= mask < 1 << d:
                raise ValidationError(f"subset mask {mask} outside a {d}-state space")
            table[mask] += as_fraction(v)
        return cls(tuple(table))

    @classmethod
    def probability(cls, probs: Sequence) -> MassFunction:
        probs = as_vector(probs)
        return cls.from_dict(len(probs), {1 << j: p for j, p in enumerate(probs)})

    @classmethod
    def vacuous(cls, d: int) -> MassFunction:
        return cls.from_dict(d, {(1 << d) - 1: 1})

    @property
    def d(self) -> int:
        return ground_size(self.values)

    def __getitem__(self, mask: int) -> Fraction:
        return self.values[mask]

    @property
    def covers(self) -> bool:
        """True iff the focal elements cover the whole state space."""
        union = 0
        for a in focal_elements(self):
            union |= a
        return union == (1 << self.d) - 1

    @property
    def is_probability(self) -> bool:
        return all(v == 0 for a, v in enumerate(self.values) if popcount(a) > 1)

    def singleton_masses(self) -> tuple[Fraction, ...]:
        return tuple(self.values[1 << j] for j in range(self.d))


@dataclass(frozen=True)
class Capacity:
    """Normalized monotone set function."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = as_vector(self.values)
        ground_size(vals)
        problem = capacity_problem(vals)
        if problem:
            raise ValidationError(problem)
        object.__setattr__(self, "values", vals)

    @property
    def d(self) -> int:
        return ground_size(self.values)

    def __getitem__(self, mask: int) -> Fraction:
        return self.values[mask]

    def dual(self) -> Capacity:
        full = len(self.values) - 1
        return Capacity(tuple(1 - self.values[full ^ a] for a in range(len(self.values))))


@dataclass(frozen=True)
class BeliefFunction:
    capacity: Capacity
    mass: MassFunction

    def __post_init__(self):
        if zeta(self.mass.values) != self.capacity.values:
            raise ValidationError("belief values are not the zeta transform of the mass")

    @property
    def values(self) -> tuple[Fraction, ...]:
        return self.capacity.values

    @property
    def d(self) -> int:
        return self.mass.d

    def __getitem__(self, mask: int) -> Fraction:
        return self.capacity.values[mask]


def capacity_problem(values: Sequence[Fraction]) -> str | None:
    """Reason ``values`` is not a capacity, or ``None``."""
    if values[0] != 0:
        return "capacity must vanish on the empty set"
    if values[-1] != 1:
        return "capacity must equal 1 on the whole state space"
    d = ground_size(values)
    for a in range(len(values)):
        for i in range(d):
            if not a >> i & 1 and values[a] > values[a | 1 << i]:
                return f"capacity is not monotone (mask {a} vs {a | 1 << i})"
    return None


def belief_from_mass(m: MassFunction | Sequence) -> BeliefFunction:
    if not isinstance(m, MassFunction):
        m = MassFunction(tuple(m))
    return BeliefFunction(Capacity(zeta(m.values)), m)


def belief_from_capacity(values: Sequence) -> BeliefFunction:
    """Belief function with the given values; rejects non-belief capacities."""
    cap = Capacity(tuple(values))
    m = mobius_inverse(cap.values)
    if any(x < 0 for x in m):
        raise ValidationError("capacity is not a belief function (negative Mobius mass)")
    return BeliefFunction(cap, MassFunction(m))


def plausibility(b: BeliefFunction) -> Capacity:
    """Dual capacity ``1 - belief(complement)``, cross-checked against the mass formula."""
    via_dual = b.capacity.dual()
    mv = b.mass.values
    via_mass = tuple(
        sum((mv[e] for e in range(len(mv)) if e & a), Fraction(0)) for a in range(len(mv)))
    if via_dual.values != via_mass:
        raise AssertionError("plausibility formulas disagree")
    return via_dual


class Kind(enum.Enum):
    NOT_CAPACITY = "not-capacity"
    CAPACITY_ONLY = "capacity"
    BELIEF = "belief"
    PROBABILITY = "probability"


def classify(f: Sequence) -> Kind:
    vals = as_vector(getattr(f, "values", f))
    if capacity_problem(vals):
        return Kind.NOT_CAPACITY
    m = mobius_inverse(vals)
    if any(x < 0 for x in m):
        return Kind.CAPACITY_ONLY
    if all(x == 0 for a, x in enumerate(m) if popcount(a) > 1):
        return Kind.PROBABILITY
    return Kind.BELIEF


def focal_elements(m: MassFunction) -> list[int]:
    """Masks with strictly positive mass, ascending; ``m.covers`` gives the cover flag."""
    return [a for a, v in enumerate(m.values) if v > 0]
