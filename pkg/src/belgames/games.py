"""
Classical TU-games and Bel coalitional games.

Players are indexed ``0..n-1`` internally and coalitions are bitmasks with
player 0 as the lowest bit; labels only matter for I/O.  A Bel game holds
one mass function per player and one TU-game per state.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

from .choquet import choquet_integral
from .errors import UnsupportedConfigurationError, ValidationError
from .exactlp import as_vector
from .setfunc import (
    BeliefFunction, Capacity, MassFunction, StateSpace, belief_from_mass, ground_size,
    members, plausibility, popcount,
)


@dataclass(frozen=True)
class TUGame:
    """Characteristic function ``v`` as a table over coalition masks."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = as_vector(self.values)
        ground_size(vals)
        if vals[0] != 0:
            raise ValidationError("v(empty set) must be 0")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_function(cls, n: int, f: Callable[[int], object]) -> TUGame:
        return cls((Fraction(0),) + tuple(Fraction(f(s)) for s in range(1, 1 << n)))

    @classmethod
    def symmetric(cls, by_size: Sequence) -> TUGame:
        """Game whose worth depends only on coalition size; ``by_size[k-1]`` is v of a k-set."""
        n = len(by_size)
        return cls.from_function(n, lambda s: by_size[popcount(s) - 1])

    @classmethod
    def additive(cls, weights: Sequence) -> TUGame:
        w = as_vector(weights)
        return cls.from_function(len(w), lambda s: sum(w[i] for i in members(s)))

    @property
    def n(self) -> int:
        return ground_size(self.values)

    @property
    def full(self) -> int:
        return len(self.values) - 1

    def __call__(self, coalition: int) -> Fraction:
        return self.values[coalition]

    def __add__(self, other: TUGame) -> TUGame:
        return TUGame(tuple(a + b for a, b in zip(self.values, other.values)))


@dataclass(frozen=True)
class Contract:
    """Payoffs of a coalition's members across states.

    ``rows[k]`` is the state-indexed payoff of the k-th member of
    ``coalition`` in ascending player order.
    """

    coalition: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(as_vector(r) for r in self.rows)
        if len(rows) != popcount(self.coalition):
            raise ValidationError(
                f"contract for coalition mask {self.coalition} needs {popcount(self.coalition)} rows")
        if len({len(r) for r in rows}) > 1:
            raise ValidationError("contract rows have different numbers of states")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def grand(cls, rows) -> Contract:
        rows = tuple(rows)
        return cls((1 << len(rows)) - 1, rows)

    @classmethod
    def from_columns(cls, columns, coalition: int | None = None) -> Contract:
        """Build from per-state payoff vectors (the natural notation ``x^1 | x^2 | ...``)."""
        rows = tuple(zip(*columns))
        if coalition is None:
            coalition = (1 << len(rows)) - 1
        return cls(coalition, rows)

    @classmethod
    def from_vector(cls, vec: Sequence, d: int, coalition: int | None = None) -> Contract:
        """Inverse of :meth:`to_vector` (state-major coordinates)."""
        vec = as_vector(vec)
        k = len(vec) // d
        return cls.from_columns([vec[j * k:(j + 1) * k] for j in range(d)], coalition)

    @classmethod
    def certain(cls, payoffs: Sequence, d: int) -> Contract:
        return cls.grand(tuple((p,) * d for p in as_vector(payoffs)))

    @property
    def members(self) -> list[int]:
        return members(self.coalition)

    @property
    def d(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def payoff(self, player: int) -> tuple[Fraction, ...]:
        return self.rows[self.members.index(player)]

    def column(self, state: int) -> tuple[Fraction, ...]:
        return tuple(r[state] for r in self.rows)

    def to_vector(self) -> tuple[Fraction, ...]:
        """Coordinates ``x^1_1..x^1_n, x^2_1..x^2_n, ...`` (state-major)."""
        return tuple(r[j] for j in range(self.d) for r in self.rows)

    def shifted(self, direction: Sequence, t=1) -> Contract:
        t = Fraction(t)
        vec = [a + t * b for a, b in zip(self.to_vector(), as_vector(direction))]
        return Contract.from_vector(vec, self.d, self.coalition)

    def __add__(self, other: Contract) -> Contract:
        if other.coalition != self.coalition:
            raise ValidationError("cannot add contracts of different coalitions")
        return Contract(self.coalition, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))


@dataclass(frozen=True)
class BelGame:
    """Players, states, per-player mass priors and one TU-game per state."""

    priors: tuple[MassFunction, ...]
    games: tuple[TUGame, ...]
    players: tuple[str, ...] | None = None
    states: StateSpace | None = None

    def __post_init__(self):
        priors, games = tuple(self.priors), tuple(self.games)
        if not games:
            raise ValidationError("a Bel game needs at least one state game")
        n = games[0].n
        if any(v.n != n for v in games):
            raise ValidationError("all state games must share the same player set")
        players = self.players
        if players is None:
            players = tuple(str(i + 1) for i in range(n))
        players = tuple(str(p) for p in players)
        if len(players) != n or len(set(players)) != n:
            raise ValidationError(f"need {n} distinct player labels, got {players}")
        states = self.states or StateSpace.of_size(len(games))
        if states.d != len(games):
            raise ValidationError(f"{states.d} states but {len(games)} state games")
        if len(priors) != n:
            raise ValidationError(f"need one prior per player ({n}), got {len(priors)}")
        for i, m in enumerate(priors):
            if m.d != states.d:
                raise ValidationError(f"prior of player {players[i]} is over {m.d} states, not {states.d}")
            if m.is_probability and any(p == 0 for p in m.singleton_masses()):
                raise ValidationError(
                    f"full support required: probabilistic prior of player {players[i]} gives a state zero mass")
            if not m.covers:
                raise ValidationError(f"focal elements of player {players[i]}'s prior do not cover the states")
        object.__setattr__(self, "priors", priors)
        object.__setattr__(self, "games", games)
        object.__setattr__(self, "players", players)
        object.__setattr__(self, "states", states)

    @classmethod
    def with_common_prior(cls, prior: MassFunction, games, players=None, states=None) -> BelGame:
        games = tuple(games)
        return cls((prior,) * games[0].n, games, players, states)

    @classmethod
    def probabilistic_game(cls, probs: Sequence, games, players=None, states=None) -> BelGame:
        return cls.with_common_prior(MassFunction.probability(probs), games, players, states)

    @property
    def n(self) -> int:
        return self.games[0].n

    @property
    def d(self) -> int:
        return len(self.games)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def common_prior(self) -> bool:
        return all(m == self.priors[0] for m in self.priors)

    @property
    def probabilistic(self) -> bool:
        return self.common_prior and self.priors[0].is_probability

    @property
    def prior(self) -> MassFunction:
        require_common_prior(self)
        return self.priors[0]

    @cached_property
    def belief(self) -> BeliefFunction:
        return belief_from_mass(self.prior)

    @cached_property
    def plausibility(self) -> Capacity:
        return plausibility(self.belief)

    @cached_property
    def expected(self) -> TUGame:
        """Cached :func:`expected_game`."""
        return expected_game(self)

    @property
    def pi(self) -> tuple[Fraction, ...]:
        require_probabilistic(self)
        return self.prior.singleton_masses()

    def worth(self, coalition: int) -> tuple[Fraction, ...]:
        """``v_w(S)`` as a random variable over the states."""
        return tuple(v(coalition) for v in self.games)

    def valuation(self, player: int, x: Sequence) -> Fraction:
        """Choquet value of ``x`` under ``player``'s own prior."""
        return choquet_integral(belief_from_mass(self.priors[player]), x)


def require_common_prior(g: BelGame, what: str = "this operation") -> None:
    if not g.common_prior:
        raise UnsupportedConfigurationError(f"{what} requires all players to share one prior")


def require_probabilistic(g: BelGame, what: str = "this operation", hint: str = "") -> None:
    require_common_prior(g, what)
    if not g.priors[0].is_probability:
        msg = f"{what} requires a common probabilistic prior"
        raise UnsupportedConfigurationError(msg + (f"; {hint}" if hint else ""))


def is_feasible(g: BelGame, c: Contract) -> bool:
    return all(sum(c.column(j), Fraction(0)) <= g.games[j](c.coalition) for j in range(g.d))


def efficient_at(g: BelGame, c: Contract, state: int) -> bool:
    return sum(c.column(state), Fraction(0)) == g.games[state](c.coalition)


def is_efficient(g: BelGame, c: Contract) -> bool:
    return all(efficient_at(g, c, j) for j in range(g.d))


def statewise_sum(g: BelGame, h: BelGame) -> BelGame:
    if g.priors != h.priors or g.d != h.d:
        raise ValidationError("statewise sum needs the same states and priors")
    return BelGame(g.priors, tuple(a + b for a, b in zip(g.games, h.games)), g.players, g.states)


# -- solution values --------------------------------------------------------

def expected_game(g: BelGame) -> TUGame:
    """``V(S)``: Choquet expectation of the state worths under the common prior."""
    require_common_prior(g, "the expected game")
    nu = g.belief
    return TUGame.from_function(g.n, lambda s: choquet_integral(nu, g.worth(s)))


def shapley_value(v: TUGame) -> tuple[Fraction, ...]:
    n = v.n
    weight = [Fraction(factorial(s) * factorial(n - s - 1), factorial(n)) for s in range(n)]
    phi = []
    for i in range(n):
        bit = 1 << i
        phi.append(sum((weight[popcount(s)] * (v(s | bit) - v(s))
                        for s in range(1 << n) if not s & bit), Fraction(0)))
    return tuple(phi)


def shapley_contract(g: BelGame) -> Contract:
    """Grand contract paying each state's Shapley value."""
    return Contract.from_columns([shapley_value(v) for v in g.games])


def marginal_vector(v: TUGame, order: Sequence[int]) -> tuple[Fraction, ...]:
    if sorted(order) != list(range(v.n)):
        raise ValidationError(f"{list(order)} is not a permutation of the players")
    out = [Fraction(0)] * v.n
    pred = 0
    for i in order:
        out[i] = v(pred | 1 << i) - v(pred)
        pred |= 1 << i
    return tuple(out)


def all_marginal_vectors(v: TUGame) -> list[tuple[Fraction, ...]]:
    return [marginal_vector(v, p) for p in permutations(range(v.n))]


def is_convex_tu(v: TUGame) -> bool:
    size = len(v.values)
    return all(v(a) + v(b) <= v(a | b) + v(a & b) for a in range(size) for b in range(a, size))


def is_exante_convex(g: BelGame) -> bool:
    require_common_prior(g, "ex-ante convexity")
    bel, pl = g.belief, g.plausibility
    size = 1 << g.n
    low = [choquet_integral(bel, g.worth(s)) for s in range(size)]
    high = [choquet_integral(pl, g.worth(s)) for s in range(size)]
    return all(high[a] + high[b] <= low[a | b] + low[a & b]
               for a in range(size) for b in range(a, size))


def null_players(g: BelGame) -> set[int]:
    out = set()
    for i in range(g.n):
        bit = 1 << i
        if all(v(s | bit) == v(s) for v in g.games for s in range(1 << g.n) if not s & bit):
            out.add(i)
    return out


def symmetric_pairs(g: BelGame) -> set[tuple[int, int]]:
    out = set()
    for i in range(g.n):
        for j in range(i + 1, g.n):
            both = 1 << i | 1 << j
            if all(v(s | 1 << i) == v(s | 1 << j)
                   for v in g.games for s in range(1 << g.n) if not s & both):
                out.add((i, j))
    return out
