"""The worked examples behave as documented."""

from cpbs.gallery import (
    fused_double_gate,
    half_switch_lean,
    half_switch_traced,
    one_query_two_pbs,
    quantum_switch,
    repeated_switch,
    three_query_circuit,
    two_query_pbs_free,
    worked_example,
    worked_example_pgt,
    worked_example_query_optimal,
)
from cpbs.netlist import to_netlist
from cpbs.normal_form import equivalent
from cpbs.pgt import brute_force_min_pbs, is_query_pbs_optimal_single
from cpbs.query_opt import is_query_optimal, query_profile
from cpbs.semantics import semantics_table, tables_equal
from cpbs.terms import Colour, count_pbs, count_queries

V, H = Colour.V, Colour.H


class TestSwitchPair:
    def test_switch_table_orders_the_oracles_oppositely(self):
        rows = semantics_table(to_netlist(quantum_switch())).rows()
        assert rows == [
            ((V, 0), (V, 0), ("U", "V")),
            ((H, 0), (H, 0), ("V", "U")),
        ]

    def test_switch_queries_each_oracle_once(self):
        d = quantum_switch()
        assert count_queries(d, "U") == 1
        assert count_queries(d, "V") == 1
        assert is_query_optimal(d)

    def test_circuit_needs_three_queries_for_a_two_query_table(self):
        d = three_query_circuit()
        assert tables_equal(
            semantics_table(to_netlist(d)), semantics_table(to_netlist(quantum_switch()))
        )
        p = query_profile(d)
        assert p.counts == {"U": 2, "V": 1}
        assert sum(p.lower_bounds.values()) == 2
        assert not is_query_optimal(d)


class TestHalfSwitch:
    def test_both_presentations_agree(self):
        assert equivalent(half_switch_traced(), half_switch_lean())

    def test_table(self):
        rows = semantics_table(to_netlist(half_switch_lean())).rows()
        assert rows == [((V, 0), (V, 0), ("U",)), ((H, 0), (H, 0), ("V",))]

    def test_traced_presentation_carries_an_idle_loop(self):
        n_traced = to_netlist(half_switch_traced())
        n_lean = to_netlist(half_switch_lean())
        assert count_pbs(half_switch_traced()) == count_pbs(half_switch_lean()) == 2
        assert len(n_traced.wires) == len(n_lean.wires) + 1


class TestWorkedExample:
    def test_starts_one_query_above_its_bound(self):
        p = query_profile(worked_example())
        assert p.counts == {"U": 1, "V": 2}
        assert p.lower_bounds == {"U": 1, "V": 1}

    def test_query_optimisation_drops_the_spare_query(self):
        opt = worked_example_query_optimal()
        assert equivalent(opt, worked_example())
        assert query_profile(opt).counts == {"U": 1, "V": 1}

    def test_pgt_is_query_and_pbs_optimal(self):
        bot = worked_example_pgt()
        assert equivalent(bot, worked_example())
        assert count_pbs(bot) == 2
        t = semantics_table(to_netlist(worked_example()))
        assert brute_force_min_pbs(t, max_pbs=4) == 2
        assert is_query_pbs_optimal_single(bot)


class TestTradeoffPair:
    def test_equivalent(self):
        assert equivalent(two_query_pbs_free(), one_query_two_pbs())

    def test_counts(self):
        assert count_pbs(two_query_pbs_free()) == 0
        assert count_queries(two_query_pbs_free(), "U") == 2
        assert count_pbs(one_query_two_pbs()) == 2
        assert count_queries(one_query_two_pbs(), "U") == 1

    def test_no_diagram_gets_both_minima(self):
        t = semantics_table(to_netlist(one_query_two_pbs()))
        assert brute_force_min_pbs(t, max_pbs=4) == 2
        assert is_query_pbs_optimal_single(one_query_two_pbs())


class TestRepeatedOraclePair:
    def test_equivalent(self):
        assert equivalent(repeated_switch(), fused_double_gate())

    def test_pgt_shape_is_not_pbs_optimal_here(self):
        top = repeated_switch()
        assert is_query_optimal(top)
        assert count_pbs(top) == 2
        t = semantics_table(to_netlist(top))
        assert brute_force_min_pbs(t, max_pbs=4) == 0
        assert count_pbs(fused_double_gate()) == 0
