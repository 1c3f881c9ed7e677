"""Worked example diagrams shared by tests, demos and documentation.

Each function builds a small named diagram: the quantum switch and the
circuit-style diagram it outperforms, the half switch in its traced and
lean presentations, a running example that is taken through the whole
normalise / query-optimise / PBS-optimise pipeline, and the two pairs
showing that query count and PBS count cannot be minimised by one
diagram in general, except when they can.
"""

from __future__ import annotations

from .pgt import to_pgt_form
from .query_opt import optimize_queries
from .terms import (
    Colour,
    Term,
    Trace,
    gate_h,
    gate_t,
    gate_v,
    ident,
    merge_hv,
    merge_vh,
    par,
    pbs4,
    seq,
    split_hv,
    split_vh,
    swap,
)

T, V, H = Colour.T, Colour.V, Colour.H


def quantum_switch() -> Term:
    """Queries U and V once each, in polarisation-controlled order.

    A vertically polarised photon traverses U then V, a horizontal one
    V then U, and both exit where they entered.
    """
    return Trace(
        T, seq(pbs4(), par(gate_t("U"), gate_t("V")), swap(T, T), pbs4())
    )


def three_query_circuit() -> Term:
    """Circuit-style diagram for the switch's table, using three queries.

    A fixed causal order: U on the vertical branch, V on both branches,
    U on the horizontal branch.  The table is exactly the switch's, and
    it needs one query per oracle, so this presentation wastes a U.
    """
    on_v = seq(split_vh(), par(gate_v("U"), ident(H)), merge_vh())
    on_h = seq(split_vh(), par(ident(V), gate_h("U")), merge_vh())
    return seq(on_v, gate_t("V"), on_h)


def half_switch_traced() -> Term:
    """Applies U to vertical and V to horizontal polarisation.

    Built from two four-leg splitters, so one loop wire is drawn that no
    photon ever uses.
    """
    return Trace(T, seq(pbs4(), par(gate_t("U"), gate_t("V")), pbs4()))


def half_switch_lean() -> Term:
    """The same action from three-leg splitters, no idle wire."""
    return seq(split_vh(), par(gate_v("U"), gate_h("V")), merge_vh())


def worked_example() -> Term:
    """Running example for the optimisation pipeline.

    A black wire splits, queries U on the vertical branch and V twice
    on the horizontal one, and the branches are interleaved with a red
    bystander wire before merging.  The repeated V makes it miss its
    query lower bound by one.
    """
    return seq(
        par(split_vh(), ident(V)),
        par(gate_v("U"), seq(gate_h("V"), gate_h("V")), ident(V)),
        par(ident(V), swap(H, V)),
        par(swap(V, V), ident(H)),
        par(ident(V), merge_vh()),
    )


def worked_example_query_optimal() -> Term:
    """The running example after query optimisation: one V query."""
    return optimize_queries(worked_example())


def worked_example_pgt() -> Term:
    """The running example after both optimisations.

    Gates pulled out through traces over a gate-free stair core; two
    beam splitters, which is exactly this table's lower bound.
    """
    return to_pgt_form(worked_example_query_optimal()).as_term()


def two_query_pbs_free() -> Term:
    """U on both polarisations from two coloured gates, no splitter."""
    return par(gate_h("U"), gate_v("U"))


def one_query_two_pbs() -> Term:
    """The same action from one black query between merge and split.

    Equivalent to two_query_pbs_free; no diagram achieves one query
    and no splitter at once.
    """
    return seq(merge_hv(), gate_t("U"), split_hv())


def repeated_switch() -> Term:
    """Switch wiring querying the same oracle U on both branches.

    Query-optimal (the table needs two U) and in PGT shape, yet not
    PBS-optimal: fused_double_gate does it splitter-free.
    """
    return Trace(
        T, seq(pbs4(), par(gate_t("U"), gate_t("U")), swap(T, T), pbs4())
    )


def fused_double_gate() -> Term:
    """One black gate querying U twice; the 0-PBS form of repeated_switch."""
    return gate_t(("U", "U"))
