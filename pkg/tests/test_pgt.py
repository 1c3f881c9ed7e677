"""PGT forms, single-query optimality certificates, brute-force floor."""

import pytest

from cpbs.errors import NotFound, NotQueryOptimal, PreconditionViolated
from cpbs.normal_form import equivalent
from cpbs.pgt import (
    PgtForm,
    _gate_options,
    brute_force_min_pbs,
    is_query_pbs_optimal_single,
    to_pgt_form,
)
from cpbs.query_opt import optimize_queries, query_lower_bounds
from cpbs.randgen import random_diagram
from cpbs.semantics import SemanticsTable, semantics_table, tables_equal
from cpbs.terms import (
    Colour,
    Trace,
    configurations,
    count_pbs,
    count_queries,
    gate_h,
    gate_t,
    gate_v,
    ident,
    letters_of,
    merge_hv,
    neg_t,
    merge_vh,
    par,
    pbs4,
    seq,
    split_hv,
    split_vh,
    swap,
)

T, V, H = Colour.T, Colour.V, Colour.H


def switch():
    return Trace(T, seq(pbs4(), par(gate_t("U"), gate_t("V")), swap(T, T), pbs4()))


def uu_switch():
    return Trace(T, seq(pbs4(), par(gate_t("U"), gate_t("U")), swap(T, T), pbs4()))


def one_query_both_colours():
    # single black gate behind a merge/split sandwich; each polarisation
    # of the (H, V) boundary queries U exactly once
    return seq(merge_hv(), gate_t("U"), split_hv())


class TestToPgtForm:
    def test_switch_keeps_its_gates_and_count(self):
        form = to_pgt_form(switch())
        assert [(g.kind, g.word) for g in form.gates] == [
            ("gate_t", ("U",)), ("gate_t", ("V",))]
        assert form.count_pbs() == 2
        assert equivalent(form.as_term(), switch())

    def test_gate_order_follows_first_use_from_line_zero(self):
        # the V photon meets U first, so U takes the first trace slot
        form = to_pgt_form(switch())
        assert form.gates[0].word == ("U",)

    def test_requires_query_optimal_input(self):
        def controlled(w):
            return seq(split_vh(), par(ident(V), gate_h(w)), merge_vh())

        three = seq(controlled("U"), neg_t(), controlled("V"), neg_t(), controlled("U"))
        with pytest.raises(NotQueryOptimal):
            to_pgt_form(three)

    def test_gate_free_diagram_reduces_to_its_stair_form(self):
        form = to_pgt_form(seq(split_vh(), merge_vh()))
        assert form.gates == ()
        assert form.count_pbs() == 0

    def test_count_never_increases_on_random_pipelines(self):
        for seed in range(80):
            opt = optimize_queries(random_diagram(seed))
            form = to_pgt_form(opt)
            assert form.count_pbs() <= count_pbs(opt)
            assert equivalent(form.as_term(), opt)
            for u in letters_of(opt):
                assert count_queries(form.as_term(), u) == count_queries(opt, u)

    def test_stable_once_in_pgt_form(self):
        form = to_pgt_form(switch())
        again = to_pgt_form(form.as_term())
        assert again.count_pbs() == form.count_pbs()


class TestSingleQueryCertificate:
    def test_identity_is_optimal(self):
        assert is_query_pbs_optimal_single(ident(T)) is True

    def test_switch_is_optimal(self):
        assert is_query_pbs_optimal_single(switch()) is True

    def test_merge_gate_split_is_optimal_despite_two_pbs(self):
        # no equivalent diagram queries U once with fewer than 2 PBS
        assert is_query_pbs_optimal_single(one_query_both_colours()) is True

    def test_wasteful_split_merge_is_not_optimal(self):
        assert is_query_pbs_optimal_single(seq(split_vh(), merge_vh())) is False

    def test_double_query_is_rejected(self):
        with pytest.raises(PreconditionViolated):
            is_query_pbs_optimal_single(uu_switch())

    def test_non_query_optimal_is_false_without_pgt(self):
        two_gates = seq(gate_t("U"), gate_t("U"))
        # structurally 2 queries of U; letters counted per occurrence
        with pytest.raises(PreconditionViolated):
            is_query_pbs_optimal_single(two_gates)
        dead_query = Trace(V, gate_v("U"))
        # the loop never reaches the boundary, so the query is wasted
        assert is_query_pbs_optimal_single(dead_query) is False


class TestBruteForce:
    def test_identity_costs_nothing(self):
        assert brute_force_min_pbs(semantics_table(ident(T)), 4) == 0

    def test_split_costs_one(self):
        assert brute_force_min_pbs(semantics_table(split_vh()), 4) == 1

    def test_one_query_on_both_polarisations_costs_two(self):
        t = semantics_table(one_query_both_colours())
        assert query_lower_bounds(t) == {"U": 1}
        assert brute_force_min_pbs(t, 4) == 2

    def test_double_word_gate_beats_the_pgt_count(self):
        # the two-query switch shape carries 2 PBS, yet its table is
        # realised with none by a single two-letter black gate
        top = uu_switch()
        assert count_pbs(top) == 2
        t = semantics_table(top)
        assert brute_force_min_pbs(t, 4) == 0
        assert tables_equal(t, semantics_table(gate_t(("U", "U"))))

    def test_not_found_when_budget_too_small(self):
        three_wire = semantics_table(par(split_vh(), ident(T)))
        assert brute_force_min_pbs(three_wire, 4) == 1
        with pytest.raises(NotFound):
            brute_force_min_pbs(three_wire, 0)

    def test_preconditions(self):
        wide = semantics_table(par(ident(T), ident(T), ident(T), ident(T)))
        with pytest.raises(PreconditionViolated):
            brute_force_min_pbs(wide, 2)
        with pytest.raises(PreconditionViolated):
            brute_force_min_pbs(semantics_table(ident(T)), 5)
        wordy = semantics_table(seq(gate_t("UV"), gate_t("W")))
        with pytest.raises(PreconditionViolated):
            brute_force_min_pbs(wordy, 2)

    def test_gate_options_cover_fused_and_separate_words(self):
        opts = _gate_options({"U": 2})
        assert (("gate_t", ("U", "U")),) in opts
        assert (("gate_t", ("U",)), ("gate_t", ("U",))) in opts
        opts = _gate_options({"U": 1, "V": 1})
        words = {tuple(w for _, w in o) for o in opts}
        assert (("U", "V"),) in words or (("U",), ("V",)) in words

    def test_matches_stair_bound_on_random_gate_free_tables(self):
        from cpbs.stairs import pbs_lower_bound, synthesize_stair_form

        checked = 0
        seed = 0
        while checked < 40:
            d = random_diagram(seed, gate_free=True)
            seed += 1
            t = semantics_table(d)
            if not (0 < len(list(configurations(t.in_type))) <= 6):
                continue
            checked += 1
            sf = synthesize_stair_form(t)
            budget = max(2, sum(sf.pre_negs) + sum(sf.post_negs))
            assert brute_force_min_pbs(t, 4, neg_budget=budget) == pbs_lower_bound(t)

    def test_matches_pipeline_on_single_query_diagrams(self):
        checked = 0
        seed = 0
        while checked < 12:
            opt = optimize_queries(random_diagram(seed))
            seed += 1
            if not letters_of(opt):
                continue
            if any(count_queries(opt, u) > 1 for u in letters_of(opt)):
                continue
            t = semantics_table(opt)
            if len(list(configurations(t.in_type))) > 6:
                continue
            if sum(query_lower_bounds(t).values()) > 2:
                continue
            form = to_pgt_form(opt)
            if form.count_pbs() > 4:
                continue
            checked += 1
            negs = sum(form.core.pre_negs) + sum(form.core.post_negs)
            assert brute_force_min_pbs(t, 4, neg_budget=max(2, negs)) == form.count_pbs()
