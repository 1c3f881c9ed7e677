"""PGT forms and exhaustive PBS minimisation at desk scale.

A query-optimal diagram deforms into permutations, a stack of gates on
traced-back wires, and a gate-free core; synthesising the core as a
stair form makes the PBS count equal the core table's lower bound.
With no oracle queried twice this is provably the best any equivalent
query-optimal diagram can do, and a brute-force search over small
netlists provides an independent check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import NotFound, NotQueryOptimal, PreconditionViolated
from .netlist import Netlist, to_netlist
from .query_opt import is_query_optimal, query_lower_bounds
from .semantics import _ACTION, SemanticsTable, semantics_table, tables_equal
from .stairs import StairForm, synthesize_stair_form
from .terms import (
    _FIXED_TYPES,
    _GATE_COLOUR,
    GATE_KINDS,
    NEG_KINDS,
    PBS_KINDS,
    Colour,
    Gen,
    Term,
    Trace,
    Word,
    configurations,
    count_pbs,
    count_queries,
    ident,
    letters_of,
    par,
    seq,
)

T, V, H = Colour.T, Colour.V, Colour.H


# ---------------------------------------------------------------------------
# PGT form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PgtForm:
    gates: tuple[Gen, ...]  # in trace-slot order
    core: StairForm

    def count_pbs(self) -> int:
        return self.core.count_pbs()

    def as_term(self) -> Term:
        body = self.core.as_term()
        if not self.gates:
            return body
        cut = len(self.gates)
        kept = self.core.out_type[: len(self.core.out_type) - cut]
        body = seq(body, par(*(ident(c) for c in kept), *self.gates))
        for g in reversed(self.gates):
            body = Trace(_GATE_COLOUR[g.kind], body)
        return body


def _gate_first_touch_order(n: Netlist) -> list[int]:
    """Gate nodes ordered by first use chasing inputs in position order."""
    sink_at = n.sink_of()
    order: list[int] = []
    for pol, pos in configurations(n.in_type):
        src: tuple = ("bin", pos)
        seen: set = set()
        while (src, pol) not in seen:
            seen.add((src, pol))
            snk = sink_at[src]
            if snk[0] == "bout":
                break
            _, nid, k = snk
            node = n.nodes[nid]
            if node.kind in GATE_KINDS:
                if nid not in order:
                    order.append(nid)
                src = ("nout", nid, 0)
            else:
                pol, k2 = _ACTION[node.kind][(pol, k)]
                src = ("nout", nid, k2)
    for nid in sorted(n.nodes):
        if n.nodes[nid].kind in GATE_KINDS and nid not in order:
            order.append(nid)
    return order


def _residual_table(n: Netlist, gate_order: list[int]) -> SemanticsTable:
    """Table of the diagram with every gate cut onto a boundary pair.

    Gate i's input port becomes extra output |b|+i and its output port
    extra input |a|+i, so the residual is gate-free by construction.
    """
    slot = {nid: i for i, nid in enumerate(gate_order)}
    cs = tuple(_GATE_COLOUR[n.nodes[nid].kind] for nid in gate_order)
    rin, rout = n.in_type + cs, n.out_type + cs
    sink_at = n.sink_of()

    def chase(src: tuple, pol: Colour) -> tuple[Colour, int]:
        for _ in range(2 * len(n.wires) + 2):
            snk = sink_at[src]
            if snk[0] == "bout":
                return (pol, snk[1])
            _, nid, k = snk
            if nid in slot:
                return (pol, len(n.out_type) + slot[nid])
            pol, k2 = _ACTION[n.nodes[nid].kind][(pol, k)]
            src = ("nout", nid, k2)
        raise AssertionError("cut chase failed to exit")

    entries = {}
    for pol, pos in configurations(n.in_type):
        entries[(pol, pos)] = (chase(("bin", pos), pol), ())
    for i, nid in enumerate(gate_order):
        for pol in (V, H) if cs[i] == T else (cs[i],):
            entries[(pol, len(n.in_type) + i)] = (chase(("nout", nid, 0), pol), ())
    return SemanticsTable(rin, rout, entries)


def to_pgt_form(d: Term) -> PgtForm:
    """Cut the gates out, stair-synthesise the rest, trace the gates back."""
    if not is_query_optimal(d):
        raise NotQueryOptimal("diagram does not meet its query lower bounds")
    n = to_netlist(d)
    gate_order = _gate_first_touch_order(n)
    core = synthesize_stair_form(_residual_table(n, gate_order))
    gates = tuple(Gen(n.nodes[nid].kind, n.nodes[nid].word) for nid in gate_order)
    form = PgtForm(gates, core)
    out = form.as_term()
    assert tables_equal(semantics_table(out), semantics_table(d))
    assert count_pbs(out) <= count_pbs(d)
    assert all(count_queries(out, u) == count_queries(d, u) for u in letters_of(d))
    return form


def is_query_pbs_optimal_single(d: Term) -> bool:
    """Certified optimality when no oracle letter is queried twice."""
    for u in letters_of(d):
        if count_queries(d, u) > 1:
            raise PreconditionViolated(f"oracle {u!r} is queried more than once")
    if not is_query_optimal(d):
        return False
    return count_pbs(d) == to_pgt_form(d).count_pbs()


# ---------------------------------------------------------------------------
# brute-force minimum
# ---------------------------------------------------------------------------

def _gate_options(bounds: dict[str, int]) -> list[tuple[tuple[str, Word], ...]]:
    """All gate multisets whose letter counts hit the bounds exactly."""
    letters: list[str] = []
    for u in sorted(bounds):
        letters.extend([u] * bounds[u])
    word_splits: set[tuple[Word, ...]] = set()
    for perm in set(itertools.permutations(letters)):
        for cuts in itertools.product([0, 1], repeat=max(len(perm) - 1, 0)):
            words, start = [], 0
            for i, cut in enumerate(cuts, 1):
                if cut:
                    words.append(perm[start:i])
                    start = i
            words.append(perm[start:])
            word_splits.add(tuple(sorted(w for w in words if w)))
    options: set[tuple[tuple[str, Word], ...]] = set()
    for words in word_splits:
        for kinds in itertools.product(sorted(GATE_KINDS), repeat=len(words)):
            options.add(tuple(sorted(zip(kinds, words))))
    return sorted(options)


def _ports(kind: str, word: Word) -> tuple[tuple[Colour, ...], tuple[Colour, ...]]:
    if kind in GATE_KINDS:
        c = _GATE_COLOUR[kind]
        return (c,), (c,)
    return _FIXED_TYPES[kind]


def _realises(t: SemanticsTable, nodes: list[tuple[str, Word]]) -> bool:
    """Search for a wiring of the given nodes whose table equals t.

    Wires are laid down lazily, driven by chasing one input photon at a
    time; a photon exiting on the wrong row kills the branch at once.
    Untouched copies of identical nodes are interchangeable, so only
    the least-numbered one may be wired first.
    """
    src_colour: dict[tuple, Colour] = {}
    snk_colour: dict[tuple, Colour] = {}
    for p, c in enumerate(t.in_type):
        src_colour[("bin", p)] = c
    for q, c in enumerate(t.out_type):
        snk_colour[("bout", q)] = c
    for i, (kind, word) in enumerate(nodes):
        ins, outs = _ports(kind, word)
        for k, c in enumerate(ins):
            snk_colour[("nin", i, k)] = c
        for k, c in enumerate(outs):
            src_colour[("nout", i, k)] = c

    wiring: dict[tuple, tuple] = {}
    used_sinks: set[tuple] = set()
    touched = [0] * len(nodes)
    starts = [(cfg, t.entries[cfg]) for cfg in configurations(t.in_type)]
    all_sinks = sorted(snk_colour)

    def candidates(colour: Colour) -> list[tuple]:
        out, seen_fresh = [], set()
        for snk in all_sinks:
            if snk in used_sinks or snk_colour[snk] != colour:
                continue
            if snk[0] == "nin" and not touched[snk[1]]:
                key = nodes[snk[1]]
                if key in seen_fresh:
                    continue
                seen_fresh.add(key)
            out.append(snk)
        return out

    def place(src: tuple, snk: tuple) -> None:
        wiring[src] = snk
        used_sinks.add(snk)
        if src[0] == "nout":
            touched[src[1]] += 1
        if snk[0] == "nin":
            touched[snk[1]] += 1

    def unplace(src: tuple, snk: tuple) -> None:
        del wiring[src]
        used_sinks.discard(snk)
        if src[0] == "nout":
            touched[src[1]] -= 1
        if snk[0] == "nin":
            touched[snk[1]] -= 1

    def advance(i: int) -> bool:
        if i == len(starts):
            return True
        (pol, pos), (target, target_word) = starts[i]
        src: tuple = ("bin", pos)
        word: list[str] = []
        seen: set = set()
        while True:
            if (src, pol) in seen:
                return False
            seen.add((src, pol))
            snk = wiring.get(src)
            if snk is None:
                for cand in candidates(src_colour[src]):
                    place(src, cand)
                    if advance(i):
                        return True
                    unplace(src, cand)
                return False
            if snk[0] == "bout":
                return (pol, snk[1]) == target and tuple(word) == target_word and advance(i + 1)
            _, j, k = snk
            kind, gword = nodes[j]
            if kind in GATE_KINDS:
                word.extend(gword)
                src = ("nout", j, 0)
            else:
                pol, k2 = _ACTION[kind][(pol, k)]
                src = ("nout", j, k2)

    return advance(0)


def brute_force_min_pbs(t: SemanticsTable, max_pbs: int, neg_budget: int = 2) -> int:
    """Least PBS count over all small diagrams realising the table.

    Query counts are pinned to the table's lower bounds (fewer is
    impossible, more never helps the PBS count), negations default to
    at most two per candidate.
    """
    if len(list(configurations(t.in_type))) > 6:
        raise PreconditionViolated("table is wider than 6 configurations")
    if max_pbs > 4:
        raise PreconditionViolated("PBS budget capped at 4")
    bounds = query_lower_bounds(t)
    if sum(bounds.values()) > 2:
        raise PreconditionViolated("more than 2 oracle letters in the table")

    from collections import Counter

    gate_sets = _gate_options(bounds)
    neg_sets = [
        negs
        for nn in range(neg_budget + 1)
        for negs in itertools.combinations_with_replacement(sorted(NEG_KINDS), nn)
    ]
    for n_pbs in range(max_pbs + 1):
        for pbs_kinds in itertools.combinations_with_replacement(sorted(PBS_KINDS), n_pbs):
            for negs in neg_sets:
                for gates in gate_sets:
                    nodes = (
                        [(kind, ()) for kind in pbs_kinds]
                        + [(kind, ()) for kind in negs]
                        + [(kind, w) for kind, w in gates]
                    )
                    src_count = Counter(t.in_type)
                    snk_count = Counter(t.out_type)
                    for kind, word in nodes:
                        ins, outs = _ports(kind, word)
                        src_count.update(outs)
                        snk_count.update(ins)
                    if src_count != snk_count:
                        continue
                    if _realises(t, nodes):
                        return n_pbs
    raise NotFound(f"no realisation within {max_pbs} PBS")
