"""
Classical cores and the geometry of the ex-ante core.

Grand contracts are identified with vectors of ``R^(N x states)`` in
state-major order ``(x^1_1..x^1_n, x^2_1..x^2_n, ...)``.  Under a common
probabilistic prior the ex-ante core is the polyhedron

    sum_j pi_j x^j(S) >= V(S)   for every proper nonempty coalition S
    x^j(N) = v_j(N)             for every state j

which has a lineality space of dimension (n-1)(d-1) and one pseudo-vertex
per vertex of the core of the expected game ``V``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .choquet import choquet_integral
from .errors import PreconditionError, ValidationError
from .exactlp import (
    EQ, GE, Constraint, as_vector, dot, enumerate_polytope_vertices, feasible_point, in_span, rank,
)
from .games import (
    BelGame, Contract, TUGame, expected_game, is_feasible, require_common_prior,
    require_probabilistic,
)
from .setfunc import members


def _indicator(n: int, coalition: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(coalition >> i & 1) for i in range(n))


def core_constraints(v: TUGame) -> list[Constraint]:
    """``x(S) >= v(S)`` for proper nonempty S (ascending mask), then ``x(N) = v(N)``."""
    n = v.n
    cons = [Constraint(_indicator(n, s), GE, v(s)) for s in range(1, v.full)]
    cons.append(Constraint(_indicator(n, v.full), EQ, v(v.full)))
    return cons


def core_membership(v: TUGame, x: Sequence) -> bool:
    x = as_vector(x)
    if len(x) != v.n:
        raise ValidationError(f"payoff vector has {len(x)} entries for {v.n} players")
    return all(c.satisfied_by(x) for c in core_constraints(v))


def core_nonempty(v: TUGame) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Feasibility of the core system, with a core element when it is nonempty."""
    point = feasible_point(core_constraints(v), v.n)
    return point is not None, point


def core_vertices(v: TUGame) -> list[tuple[Fraction, ...]]:
    """All extreme points of ``C(v)``, lexicographically sorted (empty if the core is)."""
    if v.n == 1:
        return [(v(1),)]
    return enumerate_polytope_vertices(core_constraints(v), v.n)


# -- ex-ante membership -----------------------------------------------------

def _require_grand(g: BelGame, c: Contract) -> None:
    if c.coalition != g.full or c.d != g.d:
        raise ValidationError("expected a grand contract over all players and states")


def exante_membership(g: BelGame, c: Contract) -> bool:
    """Exact ex-ante core test under a common probabilistic prior.

    Infeasible contracts are never members.  Otherwise the contract is in
    the core iff no coalition's expected worth exceeds the sum of its
    members' expected payoffs.
    """
    require_probabilistic(g, "exact ex-ante core membership",
                          hint="use exante_sufficient for belief priors")
    _require_grand(g, c)
    if not is_feasible(g, c):
        return False
    pi = g.pi
    V = g.expected
    paid = [dot(pi, c.payoff(i)) for i in range(g.n)]
    return all(V(s) <= sum((paid[i] for i in members(s)), Fraction(0))
               for s in range(1, g.full + 1))


def exante_sufficient(g: BelGame, c: Contract) -> bool:
    """One-sided test under a common belief prior: True implies core membership."""
    require_common_prior(g, "the sufficient ex-ante core test")
    _require_grand(g, c)
    if not is_feasible(g, c):
        return False
    nu = g.belief
    paid = [choquet_integral(nu, c.payoff(i)) for i in range(g.n)]
    return all(choquet_integral(nu, g.worth(s)) <= sum((paid[i] for i in members(s)), Fraction(0))
               for s in range(1, g.full + 1))


def aggregate_contract(g: BelGame, c: Contract) -> tuple[Fraction, ...]:
    """Probability-weighted average of the contract's state columns."""
    pi = g.pi
    _require_grand(g, c)
    return tuple(sum((p * x for p, x in zip(pi, c.payoff(i))), Fraction(0)) for i in range(g.n))


def lift_core_point(g: BelGame, y: Sequence) -> Contract:
    """Canonical ex-ante core contract averaging to ``y``.

    Players 2..n receive ``y_i`` in every state and player 1 absorbs each
    state's efficiency gap.
    """
    require_probabilistic(g, "lifting a core point")
    y = as_vector(y)
    if not core_membership(expected_game(g), y):
        raise PreconditionError(f"{[str(a) for a in y]} is not in the core of the expected game")
    rest = sum(y[1:], Fraction(0))
    return Contract.from_columns([(v(v.full) - rest,) + y[1:] for v in g.games])


# -- polyhedral description -------------------------------------------------

@dataclass(frozen=True)
class CoreHRep:
    """Inequalities by ascending coalition mask, then one equality per state."""

    n: int
    d: int
    coalitions: tuple[int, ...]
    inequalities: tuple[Constraint, ...]
    equalities: tuple[Constraint, ...]

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return self.inequalities + self.equalities

    def satisfied_by(self, vec: Sequence) -> bool:
        return all(c.satisfied_by(vec) for c in self.constraints)

    def homogenized(self) -> list[Constraint]:
        return [Constraint(c.coeffs, c.relation, 0) for c in self.constraints]

    def tight_rank(self, vec: Sequence) -> int:
        """Number of linearly independent constraints tight at ``vec``."""
        tight = [c.coeffs for c in self.constraints if c.is_tight(vec)]
        return rank(tight) if tight else 0


def exante_core_hrep(g: BelGame) -> CoreHRep:
    require_probabilistic(g, "the ex-ante core H-representation")
    n, d, pi = g.n, g.d, g.pi
    V = expected_game(g)
    coalitions = tuple(range(1, g.full))
    ineqs = []
    for s in coalitions:
        coeffs = [Fraction(0)] * (n * d)
        for j in range(d):
            for i in members(s):
                coeffs[j * n + i] = pi[j]
        ineqs.append(Constraint(tuple(coeffs), GE, V(s)))
    eqs = []
    for j, v in enumerate(g.games):
        coeffs = [Fraction(0)] * (n * d)
        for i in range(n):
            coeffs[j * n + i] = Fraction(1)
        eqs.append(Constraint(tuple(coeffs), EQ, v(v.full)))
    return CoreHRep(n, d, coalitions, tuple(ineqs), tuple(eqs))


def lineality_basis(g: BelGame) -> list[tuple[Fraction, ...]]:
    """Closed-form basis ``w^j_i`` (j < d, i >= 2) of the lineality space.

    ``w^j_i`` moves one unit from player 1 to player i in state j and
    compensates in the last state with weight ``pi_j / pi_d``.
    """
    require_probabilistic(g, "the lineality basis")
    n, d, pi = g.n, g.d, g.pi
    basis = []
    for j in range(d - 1):
        ratio = pi[j] / pi[d - 1]
        for i in range(1, n):
            w = [Fraction(0)] * (n * d)
            w[j * n] = Fraction(-1)
            w[j * n + i] = Fraction(1)
            w[(d - 1) * n] = ratio
            w[(d - 1) * n + i] = -ratio
            basis.append(tuple(w))
    return basis


@dataclass(frozen=True)
class CoreVRep:
    pseudo_vertices: tuple[Contract, ...]
    lineality_basis: tuple[tuple[Fraction, ...], ...]


def exante_core_vrep(g: BelGame) -> CoreVRep:
    """Pseudo-vertices (canonical lifts of the vertices of C(V)) and lineality basis."""
    require_probabilistic(g, "the ex-ante core V-representation")
    V = expected_game(g)
    pseudo = tuple(lift_core_point(g, y) for y in core_vertices(V))
    return CoreVRep(pseudo, tuple(lineality_basis(g)))


def same_pseudo_vertex(a: Contract | Sequence, b: Contract | Sequence, basis) -> bool:
    """True iff ``a - b`` lies in the span of ``basis``."""
    va = a.to_vector() if isinstance(a, Contract) else as_vector(a)
    vb = b.to_vector() if isinstance(b, Contract) else as_vector(b)
    return in_span([x - y for x, y in zip(va, vb)], basis)
