"""
Exact rational linear algebra and linear programming.

Everything here works on ``fractions.Fraction`` and never touches floating
point.  Linear programs are solved with a two-phase tableau simplex using
Bland's rule, so results are deterministic and termination is guaranteed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import PreconditionError, ValidationError

LE, EQ, GE = "<=", "=", ">="
RELATIONS = (LE, EQ, GE)


def as_fraction(value) -> Fraction:
    if type(value) is Fraction:
        return value
    if isinstance(value, float):
        raise ValidationError(f"refusing floating-point value {value!r}; use an exact rational")
    return Fraction(value)


def as_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(v) for v in values)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValidationError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", as_vector(self.coeffs))
        object.__setattr__(self, "rhs", as_fraction(self.rhs))

    def slack(self, point: Sequence) -> Fraction:
        """Signed slack; nonnegative iff satisfied (zero required for '=')."""
        lhs = dot(self.coeffs, point)
        if self.relation == GE:
            return lhs - self.rhs
        return self.rhs - lhs

    def satisfied_by(self, point: Sequence) -> bool:
        s = self.slack(point)
        return s == 0 if self.relation == EQ else s >= 0

    def is_tight(self, point: Sequence) -> bool:
        return dot(self.coeffs, point) == self.rhs


def _coerce_constraint(c) -> Constraint:
    if isinstance(c, Constraint):
        return c
    coeffs, relation, rhs = c
    return Constraint(tuple(coeffs), relation, rhs)


@dataclass(frozen=True)
class LinearProgram:
    """Maximize ``objective . x`` over free variables ``x`` subject to constraints.

    Constraints may be given as ``Constraint`` objects or plain
    ``(coeffs, relation, rhs)`` triples with relation in ``"<=", "=", ">="``.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...] = ()
    num_vars: int | None = None

    def __post_init__(self):
        obj = as_vector(self.objective)
        cons = tuple(_coerce_constraint(c) for c in self.constraints)
        k = len(obj) if self.num_vars is None else self.num_vars
        if len(obj) != k:
            raise ValidationError(f"objective has length {len(obj)}, expected {k} variables")
        for i, c in enumerate(cons):
            if len(c.coeffs) != k:
                raise ValidationError(
                    f"constraint {i} has {len(c.coeffs)} coefficients, expected {k}")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "num_vars", k)


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPOutcome:
    status: LPStatus
    value: Fraction | None = None
    point: tuple[Fraction, ...] | None = field(default=None)

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    """Dense simplex tableau ``rows[i] = [a_i1 .. a_in | b_i]`` with an objective row.

    The objective row stores ``-c_j`` reduced costs for maximization, so a
    column may enter while its entry is negative.
    """

    def __init__(self, rows, basis, ncols):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.obj = [Fraction(0)] * (ncols + 1)

    def set_objective(self, costs):
        obj = [-c for c in costs] + [Fraction(0)]
        for r, b in zip(self.rows, self.basis):
            cb = costs[b]
            if cb:
                for j, a in enumerate(r):
                    if a:
                        obj[j] += cb * a
        self.obj = obj

    def pivot(self, r, col):
        prow = self.rows[r]
        piv = prow[col]
        if piv != 1:
            prow = [a / piv for a in prow]
            self.rows[r] = prow
        nz = [j for j, a in enumerate(prow) if a]
        for i, row in enumerate(self.rows):
            if i == r:
                continue
            f = row[col]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        f = self.obj[col]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = col

    def run(self, allowed):
        """Bland's rule iterations; returns False when unbounded."""
        while True:
            col = next((j for j in range(self.ncols) if allowed[j] and self.obj[j] < 0), None)
            if col is None:
                return True
            best = None
            for i, row in enumerate(self.rows):
                a = row[col]
                if a > 0:
                    ratio = row[-1] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return False
            self.pivot(best[1], col)


def solve_lp(lp: LinearProgram) -> LPOutcome:
    """Solve ``lp`` exactly.

    Free variables are split as ``x = p - q`` with ``p, q >= 0``; each
    inequality gets one slack column.  Phase one minimizes the artificial
    sum, phase two the (negated) objective.
    """
    k = lp.num_vars
    nslack = sum(1 for c in lp.constraints if c.relation != EQ)
    nstruct = 2 * k + nslack

    rows, basis, needs_art = [], [], []
    s = 2 * k
    for c in lp.constraints:
        row = [Fraction(0)] * nstruct
        for j, a in enumerate(c.coeffs):
            if a:
                row[j] = a
                row[k + j] = -a
        rhs = c.rhs
        slack_col = None
        if c.relation != EQ:
            slack_col = s
            row[s] = Fraction(1) if c.relation == LE else Fraction(-1)
            s += 1
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        row.append(rhs)
        rows.append(row)
        if slack_col is not None and row[slack_col] == 1:
            basis.append(slack_col)
            needs_art.append(False)
        else:
            basis.append(None)
            needs_art.append(True)

    nart = sum(needs_art)
    ncols = nstruct + nart
    art = nstruct
    for i, row in enumerate(rows):
        rhs = row.pop()
        row.extend([Fraction(0)] * nart)
        if needs_art[i]:
            row[art] = Fraction(1)
            basis[i] = art
            art += 1
        row.append(rhs)

    tab = _Tableau(rows, basis, ncols)
    if nart:
        tab.set_objective([Fraction(0)] * nstruct + [Fraction(-1)] * nart)
        tab.run([True] * ncols)
        if tab.obj[-1] < 0:
            return LPOutcome(LPStatus.INFEASIBLE)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(tab.rows):
            if tab.basis[i] >= nstruct:
                col = next((j for j in range(nstruct) if tab.rows[i][j] != 0), None)
                if col is None:
                    del tab.rows[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col)
            i += 1

    costs = list(lp.objective) + [-c for c in lp.objective] + [Fraction(0)] * (ncols - 2 * k)
    tab.set_objective(costs)
    allowed = [j < nstruct for j in range(ncols)]
    if not tab.run(allowed):
        return LPOutcome(LPStatus.UNBOUNDED)

    values = [Fraction(0)] * ncols
    for row, b in zip(tab.rows, tab.basis):
        values[b] = row[-1]
    point = tuple(values[j] - values[k + j] for j in range(k))
    value = dot(lp.objective, point)
    assert value == tab.obj[-1]
    assert all(c.satisfied_by(point) for c in lp.constraints)
    return LPOutcome(LPStatus.OPTIMAL, value, point)


def feasible_point(constraints, num_vars: int) -> tuple[Fraction, ...] | None:
    """Some point satisfying ``constraints``, or ``None`` if there is none."""
    out = solve_lp(LinearProgram((0,) * num_vars, tuple(constraints), num_vars))
    return out.point if out.optimal else None


# -- linear algebra ---------------------------------------------------------

def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    mat = [[as_fraction(a) for a in r] for r in rows]
    if not mat:
        return [], []
    width = len(mat[0])
    if any(len(r) != width for r in mat):
        raise ValidationError("rows have inconsistent lengths")
    pivots = []
    r = 0
    for col in range(width):
        p = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if p is None:
            continue
        mat[r], mat[p] = mat[p], mat[r]
        piv = mat[r][col]
        mat[r] = [a / piv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace_basis(rows: Sequence[Sequence], width: int | None = None) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : r . x = 0 for every row r}``.

    ``width`` is needed only when ``rows`` is empty.  One basis vector is
    produced per free column of the reduced echelon form, with a 1 in that
    column.
    """
    if width is None:
        if not rows:
            raise ValidationError("width required for an empty system")
        width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValidationError("rows have inconsistent lengths")
    red, pivots = rref(rows)
    free = [j for j in range(width) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * width
        vec[f] = Fraction(1)
        for row, p in zip(red, pivots):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def in_span(vec: Sequence, basis: Sequence[Sequence]) -> bool:
    if not basis:
        return all(a == 0 for a in vec)
    return rank(list(basis) + [vec]) == rank(basis)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return all(in_span(v, b) for v in a) and all(in_span(v, a) for v in b)


def solve_square(matrix: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Unique solution of a square system, or ``None`` if singular."""
    k = len(matrix)
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = rref(aug)
    if pivots != list(range(k)):
        return None
    return tuple(red[i][-1] for i in range(k))


# -- vertex enumeration -----------------------------------------------------

def enumerate_polytope_vertices(constraints, dimension: int) -> list[tuple[Fraction, ...]]:
    """All vertices of a pointed polyhedron, sorted lexicographically.

    Tries every selection of ``dimension`` independent rows (equalities are
    always part of the selection), solves it and keeps feasible solutions.
    Meant for small dimensions only.
    """
    cons = [_coerce_constraint(c) for c in constraints]
    for i, c in enumerate(cons):
        if len(c.coeffs) != dimension:
            raise ValidationError(f"constraint {i} has {len(c.coeffs)} coefficients, expected {dimension}")
    if rank([c.coeffs for c in cons]) < dimension:
        raise PreconditionError(
            "system has a nontrivial lineality space and no vertices; "
            "use the pseudo-vertex routines in belgames.coregeo instead")

    eqs = [c for c in cons if c.relation == EQ]
    ineqs = [c for c in cons if c.relation != EQ]
    red, pivots = rref([list(c.coeffs) + [c.rhs] for c in eqs])
    if dimension in pivots:
        return []  # inconsistent equalities

    # substitute x_p = rhs_r - sum_f red[r][f] x_f for each pivot p of row r,
    # leaving a system in the free coordinates only
    free = [j for j in range(dimension) if j not in pivots]

    def reduce(c):
        coeffs = [c.coeffs[f] - sum((c.coeffs[p] * row[f] for row, p in zip(red, pivots)), Fraction(0))
                  for f in free]
        rhs = c.rhs - sum((c.coeffs[p] * row[-1] for row, p in zip(red, pivots)), Fraction(0))
        return Constraint(tuple(coeffs), c.relation, rhs)

    reduced = [reduce(c) for c in ineqs]

    def lift(z):
        x = [Fraction(0)] * dimension
        for f, val in zip(free, z):
            x[f] = val
        for row, p in zip(red, pivots):
            x[p] = row[-1] - sum((row[f] * val for f, val in zip(free, z)), Fraction(0))
        return tuple(x)

    if not free:
        point = lift(())
        return [point] if all(c.satisfied_by(point) for c in ineqs) else []

    found = set()
    seen = set()
    for combo in combinations(reduced, len(free)):
        z = solve_square([c.coeffs for c in combo], [c.rhs for c in combo])
        if z is None or z in seen:
            continue
        seen.add(z)
        if all(c.satisfied_by(z) for c in reduced):
            found.add(lift(z))
    return sorted(found)
