"""Canonical forms: every bijective-action diagram equals a five-layer
diagram (merge . permute . negate . gate . split) that is unique once
the line order is fixed.  Synthesis reads the layers off the action
table; equivalence of diagrams reduces to equality of the two forms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotBijective, PreconditionViolated, TypeMismatch
from .netlist import _route, to_netlist
from .semantics import SemanticsTable, is_bijective, semantics_table, tables_equal
from .terms import (
    Colour,
    Configuration,
    Empty,
    Gen,
    Par,
    Seq,
    Term,
    Trace,
    Word,
    WireType,
    configurations,
    count_generators,
    gate_h,
    gate_v,
    ident,
    merge_vh,
    neg_hv,
    neg_vh,
    par,
    seq,
    split_vh,
    type_of,
)

# ---------------------------------------------------------------------------
# the form itself
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NfLine:
    """One internal line: where it comes from, where it goes, what it carries."""

    source: Configuration
    target: Configuration
    word: Word


@dataclass(frozen=True)
class NormalForm:
    in_type: WireType
    out_type: WireType
    lines: tuple[NfLine, ...]  # ordered by source configuration

    def __post_init__(self) -> None:
        assert tuple(l.source for l in self.lines) == tuple(configurations(self.in_type))
        assert sorted(l.target for l in self.lines) == sorted(configurations(self.out_type))

    # -- the five layers, as diagrams ---------------------------------------

    @property
    def S(self) -> Term:
        """Splitter layer: one split per black input, wires elsewhere."""
        cells = [split_vh() if c == Colour.T else ident(c) for c in self.in_type]
        return par(*cells) if cells else Empty()

    @property
    def G(self) -> Term:
        cells: list[Term] = []
        for line in self.lines:
            c = line.source[0]
            if not line.word:
                cells.append(ident(c))
            elif c == Colour.V:
                cells.append(gate_v(line.word))
            else:
                cells.append(gate_h(line.word))
        return par(*cells) if cells else Empty()

    @property
    def F(self) -> Term:
        cells: list[Term] = []
        for line in self.lines:
            c, c2 = line.source[0], line.target[0]
            if c == c2:
                cells.append(ident(c))
            elif c == Colour.V:
                cells.append(neg_vh())
            else:
                cells.append(neg_hv())
        return par(*cells) if cells else Empty()

    @property
    def permutation(self) -> tuple[int, ...]:
        """Output slot, in configuration order, of each line."""
        slot = {cfg: i for i, cfg in enumerate(configurations(self.out_type))}
        return tuple(slot[l.target] for l in self.lines)

    @property
    def P(self) -> Term:
        colours = [l.target[0] for l in self.lines]
        layers = _route(colours, list(self.permutation))
        if not layers:
            return par(*(ident(c) for c in colours)) if colours else Empty()
        return seq(*layers)

    @property
    def M(self) -> Term:
        cells = [merge_vh() if c == Colour.T else ident(c) for c in self.out_type]
        return par(*cells) if cells else Empty()

    def as_term(self) -> Term:
        if not self.lines and not self.in_type and not self.out_type:
            return Empty()
        return seq(self.S, self.G, self.F, self.P, self.M)


# ---------------------------------------------------------------------------
# synthesis from a table
# ---------------------------------------------------------------------------

def synthesize_nf(t: SemanticsTable) -> NormalForm:
    """Read the unique normal form off an action table.

    The table's configuration part must be a bijection; each input
    configuration becomes one internal line carrying its word, negated
    when the polarisation flips, routed to its target slot.
    """
    if not is_bijective(t):
        raise NotBijective(f"action on {t.in_type} is not a bijection onto {t.out_type}")
    lines = tuple(
        NfLine(cfg, t.entries[cfg][0], t.entries[cfg][1]) for cfg in configurations(t.in_type)
    )
    nf = NormalForm(t.in_type, t.out_type, lines)
    assert tables_equal(semantics_table(nf.as_term()), t)
    return nf


def normalize(d: Term) -> NormalForm:
    return synthesize_nf(semantics_table(to_netlist(d)))


def equivalent(d1: Term, d2: Term) -> bool:
    """Decide equality of diagrams (sound and complete for the calculus)."""
    if type_of(d1) != type_of(d2):
        raise TypeMismatch(f"{type_of(d1)} vs {type_of(d2)}")
    return normalize(d1) == normalize(d2)


# ---------------------------------------------------------------------------
# independent route: structural induction
# ---------------------------------------------------------------------------
#
# Per-generator line maps, retyped from the construction rather than
# shared with the interpreter, so the two routes to a normal form stay
# independent.  V-polarised photons pass a splitter straight through,
# H-polarised ones take the other port; gates stamp their word; negs
# exchange polarisations.

V, H, T = Colour.V, Colour.H, Colour.T

_GEN_LINES: dict[str, dict[Configuration, Configuration]] = {
    "pbs4": {(V, 0): (V, 0), (H, 0): (H, 1), (V, 1): (V, 1), (H, 1): (H, 0)},
    "pbs_tv_vt": {(V, 0): (V, 0), (H, 0): (H, 1), (V, 1): (V, 1)},
    "pbs_vt_tv": {(V, 0): (V, 0), (V, 1): (V, 1), (H, 1): (H, 0)},
    "pbs_ht_ht": {(H, 0): (H, 1), (V, 1): (V, 1), (H, 1): (H, 0)},
    "pbs_th_th": {(V, 0): (V, 0), (H, 0): (H, 1), (H, 1): (H, 0)},
    "split_vh": {(V, 0): (V, 0), (H, 0): (H, 1)},
    "split_hv": {(V, 0): (V, 1), (H, 0): (H, 0)},
    "merge_vh": {(V, 0): (V, 0), (H, 1): (H, 0)},
    "merge_hv": {(V, 1): (V, 0), (H, 0): (H, 0)},
    "neg_t": {(V, 0): (H, 0), (H, 0): (V, 0)},
    "neg_vh": {(V, 0): (H, 0)},
    "neg_hv": {(H, 0): (V, 0)},
    "gate_t": {(V, 0): (V, 0), (H, 0): (H, 0)},
    "gate_v": {(V, 0): (V, 0)},
    "gate_h": {(H, 0): (H, 0)},
}

_LineMap = dict[Configuration, tuple[Configuration, Word]]


def _lines_of(d: Term) -> _LineMap:
    if isinstance(d, Empty):
        return {}
    if isinstance(d, Gen):
        if d.kind == "id":
            return {cfg: (cfg, ()) for cfg in configurations(d.signature()[0])}
        if d.kind == "swap":
            a = d.colours
            out: _LineMap = {}
            for c, p in configurations(a):
                out[(c, p)] = ((c, 1 - p), ())
            return out
        word = d.word if d.kind.startswith("gate") else ()
        return {src: (dst, word) for src, dst in _GEN_LINES[d.kind].items()}
    if isinstance(d, Seq):
        f, g = _lines_of(d.first), _lines_of(d.second)
        return {src: (g[mid][0], w1 + g[mid][1]) for src, (mid, w1) in f.items()}
    if isinstance(d, Par):
        f, g = _lines_of(d.top), _lines_of(d.bottom)
        a1, b1 = type_of(d.top)
        out = dict(f)
        for (c, p), ((c2, p2), w) in g.items():
            out[(c, p + len(a1))] = ((c2, p2 + len(b1)), w)
        return out
    if isinstance(d, Trace):
        body = _lines_of(d.body)
        a, b = type_of(d)
        fed_in, fed_out = len(a), len(b)
        out = {}
        for src in body:
            if src[1] == fed_in:
                continue  # the fed-back slot is not a boundary input
            cfg, word = body[src]
            for _ in range(len(body) + 1):
                if cfg[1] != fed_out:
                    break
                cfg, w2 = body[(cfg[0], fed_in)]
                word = word + w2
            else:
                raise AssertionError("feedback failed to exit")
            out[src] = (cfg, word)
        return out
    raise TypeError(f"not a diagram term: {d!r}")


def nf_by_rewriting(d: Term) -> NormalForm:
    """Normal form by structural induction instead of table synthesis.

    Builds the line data bottom-up from per-generator forms, stacking
    for parallel composition, chaining words for sequential composition
    and closing the feedback of traces.  Agrees with synthesize_nf on
    every diagram; kept as a cross-check.  Guarded to small diagrams.
    """
    size = count_generators(d)
    if size > 8:
        raise PreconditionViolated(f"diagram has {size} generators, limit is 8")
    a, b = type_of(d)
    lm = _lines_of(d)
    lines = tuple(NfLine(cfg, *lm[cfg]) for cfg in configurations(a))
    return NormalForm(a, b, lines)
