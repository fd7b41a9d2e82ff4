import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belgames.coregeo import (
    aggregate_contract, core_membership, core_nonempty, core_vertices, exante_core_hrep,
    exante_core_vrep, exante_membership, exante_sufficient, lift_core_point, lineality_basis,
    same_pseudo_vertex,
)
from belgames.errors import PreconditionError, UnsupportedConfigurationError
from belgames.exactlp import dot, nullspace_basis, same_span
from belgames.games import (
    BelGame, Contract, TUGame, all_marginal_vectors, expected_game, is_convex_tu, marginal_vector,
)
from belgames.setfunc import MassFunction
from strategies import feasible_contracts, probabilistic_games, probabilities, rand_convex_game, tu_games

F = Fraction
half = F(1, 2)
majority = TUGame.from_function(3, lambda s: 1 if bin(s).count("1") >= 2 else 0)


class TestClassicalCore:
    def test_membership(self, g4):
        V = g4.expected
        assert core_membership(V, (1, 4, 4))
        assert not core_membership(V, (0, 4, 4))

    def test_nonempty(self, g4):
        ok, witness = core_nonempty(g4.expected)
        assert ok and core_membership(g4.expected, witness)
        assert core_nonempty(majority) == (False, None)
        ok, witness = core_nonempty(TUGame.additive((2, -1, 3)))
        assert ok and witness == (2, -1, 3)

    def test_vertices(self, g4):
        assert core_vertices(g4.expected) == [(1, 4, 4), (4, 1, 4), (4, 4, 1)]
        assert core_vertices(TUGame.additive((2, -1, 3))) == [(2, -1, 3)]
        assert core_vertices(majority) == []

    @pytest.mark.parametrize("seed", range(8))
    def test_convex_vertices_are_marginals(self, seed):
        v = rand_convex_game(random.Random(seed), 3 + seed % 2)
        assert is_convex_tu(v)
        assert set(core_vertices(v)) == set(all_marginal_vectors(v))
        assert all(core_membership(v, m) for m in all_marginal_vectors(v))


class TestExanteMembership:
    def test_pseudo_vertex(self, g4, pv1):
        assert exante_membership(g4, pv1)

    def test_infeasible_certain_contract(self, g4):
        assert not exante_membership(g4, Contract.certain((3, 3, 3), 2))

    def test_greedy(self, g4, greedy):
        assert not exante_membership(g4, greedy)

    def test_belief_prior_redirected(self):
        m = MassFunction.from_dict(2, {1: half, 3: half})
        g = BelGame.with_common_prior(m, (TUGame.symmetric((1, 3)), TUGame.symmetric((0, 2))))
        with pytest.raises(UnsupportedConfigurationError, match="exante_sufficient"):
            exante_membership(g, Contract.certain((1, 1), 2))

    def test_sufficient_vacuous_marginals(self):
        v1, v2 = TUGame.symmetric((1, 4)), TUGame.symmetric((0, 2))
        g = BelGame.with_common_prior(MassFunction.vacuous(2), (v1, v2))
        c = Contract.from_columns([marginal_vector(v1, (0, 1)), marginal_vector(v2, (0, 1))])
        # min game is (0, 0, 2); payoff minima are (0, 2)
        assert exante_sufficient(g, c)
        bad = Contract.from_columns([(-1, 5), (-1, 3)])
        assert not exante_sufficient(g, bad)

    @settings(max_examples=80, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_sufficient_equals_exact_for_probability(self, g, data):
        c = data.draw(feasible_contracts(g))
        assert exante_sufficient(g, c) == exante_membership(g, c)

    @settings(max_examples=80, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_hrep_agrees(self, g, data):
        c = data.draw(feasible_contracts(g))
        assert exante_membership(g, c) == exante_core_hrep(g).satisfied_by(c.to_vector())

    @settings(max_examples=60, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_member_aggregates_into_core(self, g, data):
        c = data.draw(feasible_contracts(g))
        if exante_membership(g, c):
            assert core_membership(g.expected, aggregate_contract(g, c))


class TestAggregateLift:
    def test_examples(self, g4, pv1):
        assert aggregate_contract(g4, pv1) == (1, 4, 4)
        assert aggregate_contract(g4, Contract.certain((3, 3, 3), 2)) == (3, 3, 3)
        assert aggregate_contract(g4, Contract.from_columns([(5, 1, 4), (3, 1, 4)])) == (4, 1, 4)

    def test_lift(self, g4, pv1):
        assert lift_core_point(g4, (1, 4, 4)) == pv1
        assert lift_core_point(g4, (4, 1, 4)) == Contract.from_columns([(5, 1, 4), (3, 1, 4)])

    def test_lift_single_state(self):
        v = TUGame.symmetric((1, 4))
        g = BelGame.probabilistic_game((1,), (v,))
        assert lift_core_point(g, (2, 2)) == Contract.certain((2, 2), 1)

    def test_lift_outside_core(self, g4):
        with pytest.raises(PreconditionError):
            lift_core_point(g4, (0, 4, 5))


class TestLineality:
    def test_worked_example(self, g4):
        assert same_span(lineality_basis(g4), [(-1, 1, 0, 1, -1, 0), (-1, 0, 1, 1, 0, -1)])

    def test_single_state(self):
        g = BelGame.probabilistic_game((1,), (TUGame.symmetric((1, 4)),))
        assert lineality_basis(g) == []

    def test_two_by_two(self):
        g = BelGame.probabilistic_game((F(1, 3), F(2, 3)), (TUGame((0, 1, 1, 3)), TUGame((0, 0, 0, 1))))
        assert lineality_basis(g) == [(-1, 1, half, -half)]

    @settings(max_examples=60, deadline=None)
    @given(probabilistic_games(max_n=4))
    def test_matches_nullspace(self, g):
        hrep = exante_core_hrep(g)
        basis = lineality_basis(g)
        assert len(basis) == (g.n - 1) * (g.d - 1)
        rows = [c.coeffs for c in hrep.constraints]
        assert all(dot(r, w) == 0 for r in rows for w in basis)
        assert same_span(basis, nullspace_basis(rows, g.n * g.d))

    @settings(max_examples=60, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_recession_cone_is_lineality(self, g, data):
        # a ray outside the lineality span violates some homogenized constraint
        k = g.n * g.d
        ray = tuple(F(data.draw(st.integers(-3, 3))) for _ in range(k))
        basis = lineality_basis(g)
        homog = exante_core_hrep(g).homogenized()
        outside = not same_pseudo_vertex(ray, (0,) * k, basis)
        assert outside == (not all(c.satisfied_by(ray) for c in homog))


class TestVRep:
    def test_worked_example(self, g4):
        vr = exante_core_vrep(g4)
        assert len(vr.pseudo_vertices) == 3 and len(vr.lineality_basis) == 2
        reference = [(2, 4, 4, 0, 4, 4), (2, 4, 4, 6, -2, 4), (2, 4, 4, 6, 4, -2)]
        assert vr.pseudo_vertices[0].to_vector() == reference[0]
        for p, q in zip(vr.pseudo_vertices, reference):
            assert same_pseudo_vertex(p, q, vr.lineality_basis)

    def test_hrep_shape(self, g4):
        hrep = exante_core_hrep(g4)
        assert len(hrep.inequalities) == 6 and len(hrep.equalities) == 2
        assert hrep.inequalities[0].coeffs == (half, 0, 0, half, 0, 0)
        assert [c.rhs for c in hrep.inequalities] == [1, 1, 5, 1, 5, 5]
        single = BelGame.probabilistic_game((half, half), (TUGame((0, 2)), TUGame((0, 1))))
        h1 = exante_core_hrep(single)
        assert h1.inequalities == () and len(h1.equalities) == 2

    def test_tightness(self, g4):
        vr = exante_core_vrep(g4)
        hrep = exante_core_hrep(g4)
        for p in vr.pseudo_vertices:
            assert hrep.tight_rank(p.to_vector()) == g4.n + g4.d - 1

    def test_empty_core(self):
        g = BelGame.probabilistic_game((half, half), (majority, majority))
        vr = exante_core_vrep(g)
        assert vr.pseudo_vertices == () and len(vr.lineality_basis) == 2

    def test_single_state(self):
        v = TUGame.symmetric((0, 2, 3))
        g = BelGame.probabilistic_game((1,), (v,))
        vr = exante_core_vrep(g)
        assert [p.to_vector() for p in vr.pseudo_vertices] == core_vertices(v)
        assert vr.lineality_basis == ()

    @settings(max_examples=40, deadline=None)
    @given(st.lists(tu_games(n=3), min_size=2, max_size=3), st.data())
    def test_convex_combination_closure(self, games, data):
        probs = data.draw(probabilities(len(games)))
        g = BelGame.probabilistic_game(probs, games)
        points = [core_nonempty(v)[1] for v in games]
        if all(p is not None for p in points):
            y = tuple(sum(pj * p[i] for pj, p in zip(probs, points)) for i in range(3))
            assert core_membership(expected_game(g), y)
