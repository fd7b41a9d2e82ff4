from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from belgames.coregeo import exante_core_vrep, exante_membership, lineality_basis
from belgames.errors import UnsupportedConfigurationError, ValidationError
from belgames.games import BelGame, Contract, TUGame, is_efficient
from belgames.setfunc import MassFunction
from belgames.solutions import (
    CertainContractWarning, Verdict, bargaining_set_membership, blocks, contract_values,
    counterblocks, exante_excess, kernel_membership, legitimate_blocking, lex_compare,
    prenucleolus_contract, prenucleolus_tu, strong_bargaining_set_membership, surplus, theta,
    theta_tu,
)
from strategies import feasible_contracts, probabilistic_games

F = Fraction
half = F(1, 2)
S23 = 0b110


class TestExcessAndTheta:
    def test_excess_examples(self, g4, pv1, greedy):
        assert exante_excess(g4, pv1, 0b001) == 0
        assert exante_excess(g4, pv1, 0) == 0
        assert exante_excess(g4, greedy, S23) == 5

    def test_theta_examples(self, g4, pv1, greedy):
        single = BelGame.probabilistic_game((1,), (TUGame((0, 3)),))
        assert theta(single, Contract.certain((3,), 1)).values == (0, 0)
        assert theta(g4, pv1)[0] == 0
        th = theta(g4, greedy)
        assert th[0] == 5 and th.coalitions[0] == S23
        assert len(th) == 8

    def test_lex_compare(self):
        assert lex_compare((5, 0, -1), (4, 3, -1)) == 1
        assert lex_compare((1, 2), (1, 2)) == 0
        assert lex_compare((0, 0, -1), (0, 0, -2)) == 1
        assert lex_compare((0, -1), (0, 2)) == -1
        with pytest.raises(ValidationError):
            lex_compare((1,), (1, 2))

    @settings(max_examples=60, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_theta_sorted_and_invariant_along_lineality(self, g, data):
        c = data.draw(feasible_contracts(g))
        th = theta(g, c)
        assert list(th.values) == sorted(th.values, reverse=True)
        assert sorted(th.coalitions) == list(range(1 << g.n))
        for w in lineality_basis(g):
            t = data.draw(st.fractions(-5, 5, max_denominator=4))
            assert theta(g, c.shifted(w, t)).values == th.values


class TestPrenucleolus:
    def test_symmetric(self, g4):
        assert prenucleolus_tu(g4.expected) == (3, 3, 3)

    def test_additive(self):
        assert prenucleolus_tu(TUGame.additive((2, -1, 5, 0))) == (2, -1, 5, 0)

    def test_two_player(self):
        assert prenucleolus_tu(TUGame((0, 1, 0, 4))) == (F(5, 2), F(3, 2))

    def test_single_player(self):
        assert prenucleolus_tu(TUGame((0, 7))) == (7,)

    def test_contract(self, g4):
        c = prenucleolus_contract(g4)
        assert c.column(0) == (F(10, 3),) * 3 and c.column(1) == (F(8, 3),) * 3
        assert theta(g4, c).values == theta_tu(g4.expected, (3, 3, 3)).values

    def test_constant_grand_worth(self):
        v1, v2 = TUGame((0, 1, 0, 4)), TUGame((0, 0, 2, 4))
        g = BelGame.probabilistic_game((half, half), (v1, v2))
        c = prenucleolus_contract(g)
        assert c == Contract.certain(prenucleolus_tu(g.expected), 2)

    def test_belief_prior_warns(self):
        m = MassFunction.from_dict(2, {1: half, 3: half})
        g = BelGame.with_common_prior(m, (TUGame.symmetric((2, 6)), TUGame.symmetric((0, 4))))
        with pytest.warns(CertainContractWarning):
            c = prenucleolus_contract(g)
        assert c == Contract.certain(prenucleolus_tu(g.expected), 2)

    def test_distinct_priors_rejected(self):
        p = MassFunction.probability((half, half))
        q = MassFunction.probability((F(1, 3), F(2, 3)))
        g = BelGame((p, q), (TUGame.symmetric((1, 3)), TUGame.symmetric((0, 2))))
        with pytest.raises(UnsupportedConfigurationError):
            prenucleolus_contract(g)

    @settings(max_examples=40, deadline=None)
    @given(probabilistic_games(max_n=4), st.data())
    def test_contract_efficient_and_lex_minimal(self, g, data):
        c = prenucleolus_contract(g)
        assert is_efficient(g, c)
        assert contract_values(g, c) == list(prenucleolus_tu(g.expected))
        other = data.draw(feasible_contracts(g))
        cols = [tuple(x + (v(v.full) - sum(other.column(j))) * (i == 0) for i, x in enumerate(other.column(j)))
                for j, v in enumerate(g.games)]
        efficient = Contract.from_columns(cols)
        assert lex_compare(theta(g, c), theta(g, efficient)) <= 0


class TestKernel:
    def test_surplus(self, g4, greedy):
        assert surplus(g4, greedy, 1, 0) == 5
        assert surplus(g4, greedy, 0, 1) == -4
        with pytest.raises(ValidationError):
            surplus(g4, greedy, 1, 1)

    def test_two_player_surplus_is_singleton_excess(self):
        g = BelGame.probabilistic_game((1,), (TUGame((0, 1, 0, 4)),))
        c = Contract.certain((3, 1), 1)
        assert surplus(g, c, 0, 1) == exante_excess(g, c, 0b01)

    def test_membership(self, g4, greedy):
        assert kernel_membership(g4, prenucleolus_contract(g4))
        assert not kernel_membership(g4, greedy)
        single = BelGame.probabilistic_game((1,), (TUGame((0, 3)),))
        assert kernel_membership(single, Contract.certain((3,), 1))

    def test_symmetric_equal_expectations(self, g4):
        # equal expectations in a symmetric game tie every surplus
        c = Contract.from_columns([(4, 2, 4), (2, 4, 2)])
        assert kernel_membership(g4, c)

    @settings(max_examples=40, deadline=None)
    @given(probabilistic_games(max_n=4))
    def test_prenucleolus_in_kernel(self, g):
        assert kernel_membership(g, prenucleolus_contract(g))


class TestBlocking:
    def test_blocks_examples(self, g4, pv1, greedy):
        assert blocks(g4, pv1, S23).verdict is Verdict.NO_BLOCK
        rep = blocks(g4, greedy, S23)
        assert rep.verdict is Verdict.BLOCKS and rep.witness == (half * 5, half * 5)
        assert blocks(g4, greedy, 0).verdict is Verdict.NO_BLOCK

    def test_witness_contract_is_feasible_improvement(self, g4, greedy):
        rep = blocks(g4, greedy, S23)
        wc = rep.witness_contract
        for j, v in enumerate(g4.games):
            assert sum(wc.column(j)) == v(S23)
        paid = contract_values(g4, greedy)
        for k, i in enumerate(wc.members):
            assert g4.valuation(i, wc.rows[k]) > paid[i]

    def test_counterblocks(self, g4, greedy):
        y = (F(5, 2), F(5, 2))
        assert not counterblocks(g4, greedy, S23, y, 0b011)
        assert not counterblocks(g4, greedy, S23, y, S23)
        assert counterblocks(g4, greedy, S23, (0, 5), 0b010)

    def test_legitimate(self, g4, greedy):
        rep = legitimate_blocking(g4, greedy, S23)
        assert rep.verdict is Verdict.LEGITIMATELY_BLOCKS and rep.counterblockers == ()
        assert rep.witness == (F(5, 2), F(5, 2))

    def test_counterblocked_singleton(self, g4, greedy):
        rep = legitimate_blocking(g4, greedy, 0b010)
        assert rep.verdict is Verdict.BLOCKS and rep.counterblockers

    def test_bargaining_sets(self, g4, pv1, greedy):
        assert bargaining_set_membership(g4, pv1)
        assert strong_bargaining_set_membership(g4, pv1)
        assert not bargaining_set_membership(g4, greedy)
        assert not strong_bargaining_set_membership(g4, greedy)
        assert bargaining_set_membership(g4, prenucleolus_contract(g4))

    def test_worked_example_theorem(self, g4):
        vr = exante_core_vrep(g4)
        samples = list(vr.pseudo_vertices)
        samples += [p.shifted(w, t) for p in vr.pseudo_vertices for w in vr.lineality_basis for t in (-3, 2)]
        samples += [Contract.from_columns([(10 - a - b, a, b), (8 - a - b, a, b)])
                    for a in range(-1, 6) for b in range(-1, 6)]
        for c in samples:
            assert strong_bargaining_set_membership(g4, c) == exante_membership(g4, c)

    def test_belief_prior_rejected(self):
        m = MassFunction.from_dict(2, {1: half, 3: half})
        g = BelGame.with_common_prior(m, (TUGame.symmetric((2, 6)), TUGame.symmetric((0, 4))))
        c = Contract.certain((1, 1), 2)
        for fn in (bargaining_set_membership, strong_bargaining_set_membership):
            with pytest.raises(UnsupportedConfigurationError):
                fn(g, c)
        with pytest.raises(UnsupportedConfigurationError):
            blocks(g, c, 1)

    @settings(max_examples=60, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_blocking_excess_equivalence(self, g, data):
        c = data.draw(feasible_contracts(g))
        verdicts = [blocks(g, c, s).verdict for s in range(1 << g.n)]
        for s, verdict in enumerate(verdicts):
            assert (verdict is Verdict.BLOCKS) == (exante_excess(g, c, s) > 0)
        assert exante_membership(g, c) == all(v is Verdict.NO_BLOCK for v in verdicts)

    @settings(max_examples=40, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_strong_implies_ordinary_and_core_implies_both(self, g, data):
        c = data.draw(feasible_contracts(g))
        strong = strong_bargaining_set_membership(g, c)
        ordinary = bargaining_set_membership(g, c)
        assert not strong or ordinary
        if exante_membership(g, c):
            assert strong and ordinary

    @settings(max_examples=40, deadline=None)
    @given(probabilistic_games(), st.data())
    def test_legitimate_witness_is_uncounterblocked(self, g, data):
        c = data.draw(feasible_contracts(g))
        for s in range(1, 1 << g.n):
            rep = legitimate_blocking(g, c, s)
            if rep.verdict is Verdict.LEGITIMATELY_BLOCKS:
                assert not any(counterblocks(g, c, s, rep.witness, t) for t in range(1, 1 << g.n))
                assert exante_excess(g, c, s) > 0
