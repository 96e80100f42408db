"""Turn-based stochastic mean-payoff backend."""

import json
import random
from fractions import Fraction

import pytest

import mpgames as mg
from mpgames import NEG_INF, Exhausted
from mpgames.numeric import vec, zeros
from mpgames.stochastic import round_to_denominator

from conftest import (
    absorbing_game,
    cycle_game,
    max_choice_game,
    min_choice_game,
    nature_half_game,
    swap_shift_game,
    three_value_game,
)

F = Fraction


class TestConstruction:
    def test_validation_errors(self):
        with pytest.raises(mg.GameFormatError):
            mg.make_game(["m0"], ["x0"], ["n0"], [[]], [[(0, 0)]],
                         [[(0, 1)]], 1)
        with pytest.raises(mg.GameFormatError):
            mg.make_game(["m0"], ["x0"], ["n0"], [[(0, 0)]], [[(0, 0)]],
                         [[(0, 1)]], 2)  # numerators do not sum to M
        with pytest.raises(mg.GameFormatError):
            mg.make_game(["m0"], ["x0"], ["n0"], [[(0, 0)]], [[(0, 0)]],
                         [[(0, 1)]], 0)

    def test_stats(self):
        g = nature_half_game()
        st = g.stats()
        assert (st.n, st.M, st.W, st.s) == (2, 2, 2, 1)
        assert st.m_exp == 1 and st.mu == 4

    def test_single_successor_nature_not_significant(self):
        st = cycle_game().stats()
        assert st.s == 0 and st.mu == 1


class TestShapleyEval:
    def test_cycle_shift(self):
        g = cycle_game(a=0, b=2)
        assert mg.shapley_eval(g, vec([7])) == vec([9])

    def test_max_takes_larger_branch(self):
        g = max_choice_game()
        assert mg.shapley_eval(g, vec([0])) == vec([3])

    def test_neg_inf_convention(self):
        g = nature_half_game()  # nH spreads half/half over (m1, m2)
        out = mg.shapley_eval(g, (F(0), NEG_INF))
        assert out == (NEG_INF, NEG_INF)
        g1 = cycle_game()  # P = 1 on its single target
        assert mg.shapley_eval(g1, (F(4),))[0] == F(6)

    def test_length_check(self):
        with pytest.raises(ValueError):
            mg.shapley_eval(cycle_game(), zeros(2))


class TestRecessionEval:
    def test_zero_fixed(self):
        g = nature_half_game()
        assert mg.recession_eval(g, zeros(2)) == zeros(2)

    def test_constant_vector_fixed(self):
        g = nature_half_game()
        c = F(5, 3)
        assert mg.recession_eval(g, vec([c, c])) == vec([c, c])

    def test_value_vector_fixed_point(self):
        g = absorbing_game()
        chi = vec([5, 0])
        assert mg.recession_eval(g, chi) == chi


class TestRoundingOracle:
    def test_integral_passthrough(self):
        orc = mg.rounding_oracle(cycle_game(), 1)
        assert orc.eval(zeros(1), F(1)) == vec([2])

    def test_round_half_to_even(self):
        assert round_to_denominator(F(7, 3), 2) == F(5, 2)
        assert round_to_denominator(F(9, 4), 2) == F(2)  # tie -> even
        assert abs(round_to_denominator(F(7, 3), 2) - F(7, 3)) <= F(1, 4)

    def test_neg_inf_passthrough(self):
        assert round_to_denominator(NEG_INF, 8) is NEG_INF

    def test_serves_requested_eps(self):
        g = nature_half_game()
        orc = mg.rounding_oracle(g, 8)
        x = vec([F(1, 3), F(2, 7)])
        out = orc.eval(x, F(1, 16))
        exact = mg.shapley_eval(g, x)
        assert all(abs(a - e) <= F(1, 16) for a, e in zip(out, exact))

    def test_fast_path_matches_generic(self):
        """gap_loop/replay_loop agree with the generic loops they replace."""
        rng = random.Random(17)
        for _ in range(15):
            g = mg.random_smpg(rng)
            st = g.stats()
            q = 4 * st.mu**2
            fast = mg.rounding_oracle(g, q)
            slow = mg.rounding_oracle(g, q)
            delta = F(1, st.mu**2)
            cap = 200
            got = fast.gap_loop(delta / 8, delta, cap)
            # generic reference loop
            u = zeros(slow.n)
            ell, hit = 0, False
            while ell < cap:
                u = slow.eval(u, delta / 8)
                ell += 1
                if max(u) - min(u) <= F(3, 4) * delta * ell:
                    hit = True
                    break
            assert got == (u, ell, hit)


class TestBounds:
    def test_separation_examples(self):
        mk = lambda n, M, s: mg.GameStats(
            n=n, M=M, W=0, s=s, m_exp=min(s, n - 1) if n > 1 else 0,
            mu=n * M ** (min(s, n - 1) if n > 1 else 0))
        assert mg.separation_bound(mk(2, 2, 1)) == F(1, 16)
        assert mg.separation_bound(mk(3, 1, 0)) == F(1, 9)
        assert mg.separation_bound(mk(2, 3, 5)) == F(1, 36)

    def test_bias_examples(self):
        assert mg.bias_norm_bound(
            mg.GameStats(n=2, M=2, W=3, s=1, m_exp=1, mu=4)) == 96
        assert mg.bias_norm_bound(
            mg.GameStats(n=1, M=1, W=0, s=0, m_exp=0, mu=1)) == 0
        assert mg.bias_norm_bound(
            mg.GameStats(n=3, M=1, W=1, s=0, m_exp=0, mu=3)) == 24


class TestWinner:
    def test_positive_cycle(self):
        res = mg.winner(cycle_game(a=0, b=2))
        assert res.outcome == "MaxWinsAll"

    def test_negative_cycle(self):
        res = mg.winner(cycle_game(a=3, b=2))
        assert res.outcome == "MinWinsAll"

    def test_zero_drift_stops_weakly(self):
        # u stays at 0, so the weak top-condition certifies cw-upper <= 0
        res = mg.winner(cycle_game(a=2, b=2))
        assert res.outcome == "MinWinsAll"

    def test_non_constant_value_exhausted(self):
        g = mg.make_game(
            ["m0", "m1"], ["x0", "x1"], ["n0", "n1"],
            [[(0, 0)], [(1, 0)]],
            [[(0, 5)], [(1, -5)]],
            [[(0, 1)], [(1, 1)]],
            1,
        )
        assert isinstance(mg.winner(g), Exhausted)

    def test_iteration_cap_matches_stats(self):
        g = cycle_game(a=0, b=2)
        res = mg.winner(g)
        assert res.iterations <= mg.winner_iteration_bound(g.stats())


class TestSolveConstantValue:
    def test_cycle(self):
        sol = mg.solve_constant_value(cycle_game(a=0, b=2))
        assert sol.value == 2
        assert sol.strategies.sigma == {"m0": "x0"}
        assert sol.strategies.tau == {"x0": "n0"}
        assert mg.check_certificate(cycle_game(a=0, b=2), sol.sub)
        assert mg.check_certificate(cycle_game(a=0, b=2), sol.sup)

    def test_min_choice(self):
        g = min_choice_game()
        sol = mg.solve_constant_value(g)
        assert sol.value == -1
        assert sol.strategies.sigma == {"m0": "x1"}  # the A=4 branch

    def test_nature_half(self):
        g = nature_half_game()
        sol = mg.solve_constant_value(g)
        assert sol.value == F(3, 2)
        assert sol.value.denominator <= g.stats().mu

    def test_swap_shift_value(self):
        sol = mg.solve_constant_value(swap_shift_game())
        assert sol.value == 1

    def test_interval_isolates_value(self):
        g = nature_half_game()
        sol = mg.solve_constant_value(g)
        assert sol.interval.contains(sol.value)
        assert sol.interval.width <= mg.separation_bound(g.stats())

    def test_non_constant_rejected(self):
        with pytest.raises((ValueError, mg.IterationCapExceeded)):
            mg.solve_constant_value(absorbing_game())

    def test_strategy_optimality_frozen(self):
        rng = random.Random(23)
        solved = 0
        while solved < 20:
            g = mg.random_smpg(rng)
            bf = mg.brute_force_values(g)
            if len(set(bf.chi)) != 1:
                continue
            sol = mg.solve_constant_value(g)
            frozen = mg.frozen_pair_values(g, sol.strategies)
            assert all(v == sol.value for v in frozen)
            solved += 1

    def test_call_budget(self):
        rng = random.Random(29)
        for _ in range(30):
            g = mg.random_smpg(rng)
            bf = mg.brute_force_values(g)
            if len(set(bf.chi)) != 1:
                continue
            st = g.stats()
            sol = mg.solve_constant_value(g)
            assert sol.oracle_calls <= (
                128 * st.n**3 * st.W * st.M ** (3 * st.m_exp) + 8
            ) or st.W == 0


class TestSolveTopClass:
    def test_constant_full(self):
        sol = mg.solve_top_class(nature_half_game())
        assert sol.states == frozenset({"m1", "m2"})

    def test_absorbing(self):
        sol = mg.solve_top_class(absorbing_game())
        assert sol.states == frozenset({"m0"})

    def test_three_values(self):
        sol = mg.solve_top_class(three_value_game())
        assert sol.states == frozenset({"m0", "m1"})


class TestBruteForce:
    def test_cycle(self):
        assert mg.brute_force_values(cycle_game(a=0, b=2)).chi == (F(2),)

    def test_min_choice(self):
        assert mg.brute_force_values(min_choice_game()).chi == (F(-1),)

    def test_nature_half(self):
        assert mg.brute_force_values(nature_half_game()).chi == (
            F(3, 2), F(3, 2))

    def test_budget(self):
        with pytest.raises(ValueError):
            mg.brute_force_values(min_choice_game(), budget=1)

    def test_transient_states(self):
        """Gains of transient states mix absorbed-class gains."""
        g = mg.make_game(
            ["m0", "m1", "m2"], ["x0", "x1", "x2"], ["n0", "n1", "n2"],
            [[(0, 0)], [(1, 0)], [(2, 0)]],
            [[(0, 2)], [(1, -2)], [(2, 0)]],
            [[(0, 2)], [(1, 2)], [(0, 1), (1, 1)]],  # m2 splits half/half
            2,
        )
        chi = mg.brute_force_values(g).chi
        assert chi == (F(2), F(-2), F(0))


class TestDominionGraph:
    def test_matches_operator(self):
        import itertools

        rng = random.Random(41)
        for _ in range(20):
            g = mg.random_smpg(rng)
            orc = mg.exact_oracle(g)
            n = orc.n
            for size in range(1, n + 1):
                for sub in itertools.combinations(range(n), size):
                    ind = mg.induced_subgame(g, sub)
                    assert (ind is not None) == mg.is_dominion(orc, sub)

    def test_induced_subgame_operator_agrees(self):
        g = absorbing_game()
        ind = mg.induced_subgame(g, [0])
        assert ind is not None
        assert mg.shapley_eval(ind, zeros(1)) == vec([5])


class TestJsonRoundTrip:
    def test_round_trip(self):
        rng = random.Random(53)
        for _ in range(10):
            g = mg.random_smpg(rng)
            obj = mg.game_to_json(g)
            back = mg.parse_smpg(json.loads(json.dumps(obj)))
            assert back == g

    def test_parse_errors_name_offender(self):
        obj = mg.game_to_json(cycle_game())
        obj["edges"].append({"from": "m0", "to": "zz"})
        with pytest.raises(mg.GameFormatError):
            mg.parse_smpg(obj)
