"""
Excess-based solution concepts for Bel games with a common prior:
theta vectors, (pre)nucleolus, surplus and kernel, blocking,
counterblocking and the (strong) bargaining sets.

Under a common probabilistic prior the Choquet values a coalition can
secure with a feasible contract are exactly the vectors whose sum is at
most the coalition's expected worth.  Every blocking question therefore
reduces to a small exact LP over expected payoffs.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .choquet import choquet_integral
from .errors import PreconditionError, ValidationError
from .exactlp import EQ, GE, LE, Constraint, LinearProgram, LPStatus, rank, rref, solve_lp
from .games import (
    BelGame, Contract, TUGame, is_feasible, require_common_prior, require_probabilistic,
)
from .setfunc import members, popcount


class CertainContractWarning(UserWarning):
    """The returned prenucleolus contract may not be efficient in every state."""


def _check_grand(g: BelGame, c: Contract) -> None:
    if c.coalition != g.full or c.d != g.d:
        raise ValidationError("expected a grand contract over all players and states")


def contract_values(g: BelGame, c: Contract) -> list[Fraction]:
    """Choquet value of each player's payoff under the common prior."""
    nu = g.belief
    return [choquet_integral(nu, c.payoff(i)) for i in range(g.n)]


def excess_table(g: BelGame, c: Contract) -> list[Fraction]:
    """Ex-ante excess of every coalition, indexed by mask."""
    require_common_prior(g, "ex-ante excess")
    _check_grand(g, c)
    V = g.expected
    paid = contract_values(g, c)
    return [V(s) - sum((paid[i] for i in members(s)), Fraction(0)) for s in range(1 << g.n)]


def exante_excess(g: BelGame, c: Contract, coalition: int) -> Fraction:
    return excess_table(g, c)[coalition]


# -- theta and the lexicographic order ----------------------------------------

@dataclass(frozen=True)
class ThetaVector:
    values: tuple[Fraction, ...]
    coalitions: tuple[int, ...]

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]


def theta_from_excesses(excess: Sequence[Fraction]) -> ThetaVector:
    order = sorted(range(len(excess)), key=lambda s: (-excess[s], s))
    return ThetaVector(tuple(excess[s] for s in order), tuple(order))


def theta(g: BelGame, c: Contract) -> ThetaVector:
    return theta_from_excesses(excess_table(g, c))


def theta_tu(v: TUGame, x: Sequence) -> ThetaVector:
    """Classical theta vector of payoff ``x`` in ``v``."""
    return theta_from_excesses(
        [v(s) - sum((Fraction(x[i]) for i in members(s)), Fraction(0)) for s in range(1 << v.n)])


def lex_compare(a, b) -> int:
    """-1, 0 or 1 as ``a`` is lexicographically below, equal to or above ``b``."""
    va = tuple(getattr(a, "values", a))
    vb = tuple(getattr(b, "values", b))
    if len(va) != len(vb):
        raise ValidationError(f"cannot compare theta vectors of lengths {len(va)} and {len(vb)}")
    for x, y in zip(va, vb):
        if x != y:
            return -1 if x < y else 1
    return 0


# -- prenucleolus ----------------------------------------------------------

def _indicator(n, s):
    return tuple(Fraction(s >> i & 1) for i in range(n))


def prenucleolus_tu(v: TUGame) -> tuple[Fraction, ...]:
    """Classical prenucleolus by sequential LPs.

    Each round minimizes the largest excess ``t`` over the coalitions not
    yet settled, then settles every coalition whose excess equals ``t`` in
    all optimal solutions (one extra LP per candidate).  Coalitions whose
    indicator becomes a combination of settled ones drop out.  Stops once
    the settled equations pin the payoff vector.
    """
    n, full = v.n, v.full
    if n == 1:
        return (v(full),)
    settled = [(_indicator(n, full), v(full))]  # rows r with r . x = rhs
    free = list(range(1, full))

    while rank([r for r, _ in settled]) < n:
        rows = [r for r, _ in settled]
        base_rank = len(rows) and rank(rows)
        free = [s for s in free if rank(rows + [_indicator(n, s)]) > base_rank]
        if not free:
            break
        base = [Constraint(r + (Fraction(0),), EQ, b) for r, b in settled]
        base += [Constraint(_indicator(n, s) + (Fraction(1),), GE, v(s)) for s in free]
        obj = (Fraction(0),) * n + (Fraction(-1),)
        out = solve_lp(LinearProgram(obj, base))
        if out.status is not LPStatus.OPTIMAL:
            raise PreconditionError(f"prenucleolus round LP is {out.status.value}")
        t = out.point[-1]
        capped = base + [Constraint((Fraction(0),) * n + (Fraction(1),), LE, t)]
        newly = []
        for s in free:
            ind = _indicator(n, s)
            if v(s) - sum(a * b for a, b in zip(ind, out.point[:n])) != t:
                continue
            best = solve_lp(LinearProgram(ind + (Fraction(0),), capped))
            if best.value == v(s) - t:
                newly.append(s)
        if not newly:
            raise AssertionError("no coalition settled in a prenucleolus round")
        settled += [(_indicator(n, s), v(s) - t) for s in newly]
        free = [s for s in free if s not in newly]

    red, pivots = rref([list(r) + [b] for r, b in settled])
    assert pivots == list(range(n))
    return tuple(red[i][-1] for i in range(n))


def prenucleolus_contract(g: BelGame) -> Contract:
    """A member of the ex-ante prenucleolus built from the prenucleolus of ``V``.

    With a probabilistic prior each player gets the prenucleolus payoff plus
    an equal share of the state's deviation of ``v_w(N)`` from ``V(N)``, so
    the contract is efficient in every state.  With a general belief prior
    the certain contract is returned and a :class:`CertainContractWarning`
    is issued, because it may fail efficiency (and feasibility) in some state.
    """
    require_common_prior(g, "the ex-ante prenucleolus")
    V = g.expected
    nuc = prenucleolus_tu(V)
    if g.probabilistic:
        top = V(V.full)
        return Contract.from_columns(
            [tuple(x + (v(v.full) - top) / g.n for x in nuc) for v in g.games])
    warnings.warn("belief prior: returning the certain contract at the prenucleolus of V; "
                  "it may not be efficient in every state", CertainContractWarning, stacklevel=2)
    return Contract.certain(nuc, g.d)


# -- surplus and kernel ----------------------------------------------------

def surplus(g: BelGame, c: Contract, i: int, j: int) -> Fraction:
    if i == j:
        raise ValidationError("surplus needs two distinct players")
    e = excess_table(g, c)
    bi, bj = 1 << i, 1 << j
    return max(e[s] for s in range(1 << g.n) if s & bi and not s & bj)


def kernel_membership(g: BelGame, c: Contract) -> bool:
    """Pairwise balanced surpluses; infeasible contracts are never members."""
    require_common_prior(g, "the ex-ante kernel")
    _check_grand(g, c)
    if not is_feasible(g, c):
        return False
    e = excess_table(g, c)
    n = g.n

    def s(i, j):
        return max(e[m] for m in range(1 << n) if m >> i & 1 and not m >> j & 1)

    return all(s(i, j) == s(j, i) for i in range(n) for j in range(i + 1, n))


# -- blocking and bargaining -----------------------------------------------

class Verdict(enum.Enum):
    NO_BLOCK = "no-block"
    BLOCKS = "blocks"
    LEGITIMATELY_BLOCKS = "legitimately-blocks"


@dataclass(frozen=True)
class BlockingReport:
    """Outcome of a blocking query for one coalition.

    ``witness`` lists expected payoffs of the coalition's members (ascending
    player order) and ``witness_contract`` realizes them state by state.
    For a counterblocked objection, ``counterblockers`` lists the coalitions
    that counterblock the reported witness.
    """

    coalition: int
    verdict: Verdict
    witness: tuple[Fraction, ...] | None = None
    witness_contract: Contract | None = None
    counterblockers: tuple[int, ...] = field(default=())


def _realize(g: BelGame, coalition: int, y: Sequence[Fraction]) -> Contract:
    V = g.expected
    k = popcount(coalition)
    cols = []
    for v in g.games:
        shift = (v(coalition) - V(coalition)) / k
        cols.append(tuple(a + shift for a in y))
    return Contract.from_columns(cols, coalition)


def _prepare(g: BelGame, c: Contract, what: str) -> list[Fraction]:
    require_probabilistic(g, what)
    _check_grand(g, c)
    return contract_values(g, c)


def blocks(g: BelGame, c: Contract, coalition: int) -> BlockingReport:
    """Whether ``coalition`` ex-ante blocks ``c``; witness splits the excess evenly."""
    return _blocks(g, _prepare(g, c, "ex-ante blocking"), coalition)


def _blocks(g: BelGame, paid: list[Fraction], coalition: int) -> BlockingReport:
    if coalition == 0:
        return BlockingReport(0, Verdict.NO_BLOCK)
    e = g.expected(coalition) - sum((paid[i] for i in members(coalition)), Fraction(0))
    if e <= 0:
        return BlockingReport(coalition, Verdict.NO_BLOCK)
    share = e / popcount(coalition)
    y = tuple(paid[i] + share for i in members(coalition))
    return BlockingReport(coalition, Verdict.BLOCKS, y, _realize(g, coalition, y))


def _counter_target(paid, coalition, y, other) -> Fraction:
    inside = dict(zip(members(coalition), y))
    return sum((inside[j] if j in inside else paid[j] for j in members(other)), Fraction(0))


def counterblocks(g: BelGame, c: Contract, coalition: int, y: Sequence, other: int) -> bool:
    """Whether ``other`` counterblocks the objection giving ``y`` to ``coalition``'s members."""
    paid = _prepare(g, c, "ex-ante counterblocking")
    if other == 0:
        raise ValidationError("a counterblocking coalition must be nonempty")
    y = tuple(Fraction(a) for a in y)
    if len(y) != popcount(coalition):
        raise ValidationError(f"witness has {len(y)} entries for a coalition of {popcount(coalition)}")
    return g.expected(other) > _counter_target(paid, coalition, y, other)


def _counterblockers(g, paid, coalition, y, candidates) -> tuple[int, ...]:
    V = g.expected
    return tuple(t for t in candidates if V(t) > _counter_target(paid, coalition, y, t))


def legitimate_blocking(g: BelGame, c: Contract, coalition: int,
                        restrict_outside: bool = False) -> BlockingReport:
    """Decide whether ``coalition`` legitimately blocks ``c``.

    Solves ``max delta`` over expected payoffs ``y`` of the members with
    ``y_j >= E(c_j) + delta``, ``y(S) <= V(S)`` and, for every candidate
    counterblocking coalition ``T``,
    ``y(T & S) + E(c)(T - S) >= V(T)``.  The block is legitimate iff the
    optimum is positive.  With ``restrict_outside`` only coalitions ``T``
    not contained in ``S`` may counterblock.
    """
    paid = _prepare(g, c, "legitimate ex-ante blocking")
    return _legitimate(g, paid, coalition, restrict_outside)


def _legitimate(g: BelGame, paid: list[Fraction], coalition: int,
                restrict_outside: bool) -> BlockingReport:
    plain = _blocks(g, paid, coalition)
    if plain.verdict is Verdict.NO_BLOCK:
        return plain
    V = g.expected
    mem = members(coalition)
    k = len(mem)
    candidates = [t for t in range(1, 1 << g.n)
                  if not (restrict_outside and t & ~coalition == 0)]

    cons = []
    for idx, i in enumerate(mem):
        row = [Fraction(0)] * (k + 1)
        row[idx], row[k] = Fraction(1), Fraction(-1)
        cons.append(Constraint(tuple(row), GE, paid[i]))
    cons.append(Constraint((Fraction(1),) * k + (Fraction(0),), LE, V(coalition)))
    hopeless = False
    for t in candidates:
        outside = sum((paid[j] for j in members(t & ~coalition)), Fraction(0))
        if t & coalition == 0:
            hopeless |= V(t) > outside
            continue
        row = tuple(Fraction(t >> i & 1) for i in mem) + (Fraction(0),)
        cons.append(Constraint(row, GE, V(t) - outside))

    if not hopeless:
        out = solve_lp(LinearProgram((Fraction(0),) * k + (Fraction(1),), cons))
        if out.status is LPStatus.UNBOUNDED or (out.optimal and out.value > 0):
            # y(S) <= V(S) caps delta; unbounded is kept only for completeness
            y = out.point[:k]
            return BlockingReport(coalition, Verdict.LEGITIMATELY_BLOCKS, y, _realize(g, coalition, y))
    counter = _counterblockers(g, paid, coalition, plain.witness, candidates)
    return BlockingReport(coalition, Verdict.BLOCKS, plain.witness, plain.witness_contract, counter)


def _no_legitimate_block(g: BelGame, c: Contract, strong: bool) -> bool:
    what = "the ex-ante strong bargaining set" if strong else "the ex-ante bargaining set"
    require_probabilistic(g, what)
    _check_grand(g, c)
    if not is_feasible(g, c):
        return False
    paid = contract_values(g, c)
    return all(_legitimate(g, paid, s, strong).verdict is not Verdict.LEGITIMATELY_BLOCKS
               for s in range(1, 1 << g.n))


def bargaining_set_membership(g: BelGame, c: Contract) -> bool:
    return _no_legitimate_block(g, c, strong=False)


def strong_bargaining_set_membership(g: BelGame, c: Contract) -> bool:
    """Every blocking coalition is counterblocked by some coalition not inside it."""
    return _no_legitimate_block(g, c, strong=True)
