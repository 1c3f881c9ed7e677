"""The equational theory as a catalogue of directed rewrite rules.

Each rule is a pair of well-typed terms over the same boundary type.
Gate words in rule sides may contain word variables (WVar), which the
matcher binds to concrete letter sequences; a variable appearing twice
(AX5, DER21..24) forces equal words.  Sequencing is trajectory order:
Seq(a, b) means a first, then b.

The STRUCT entries (yanking, dinaturality, swap naturality) hold by
construction in the wire-level representation, so they rewrite nothing;
they exist so proof traces can record them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import (
    Colour,
    Empty,
    Gen,
    Par,
    Seq,
    Term,
    Trace,
    ident,
    merge_hv,
    merge_vh,
    neg_hv,
    neg_t,
    neg_vh,
    par,
    pbs4,
    pbs_ht_ht,
    pbs_th_th,
    pbs_tv_vt,
    pbs_vt_tv,
    seq,
    split_hv,
    split_vh,
    swap,
    type_of,
)

T, V, H = Colour.T, Colour.V, Colour.H


@dataclass(frozen=True)
class WVar:
    """A word variable: matches a letter sequence.

    exact pins the length; otherwise any length >= min_len matches.
    """

    name: str
    exact: int | None = None
    min_len: int = 0


@dataclass(frozen=True)
class Rule:
    rule_id: str
    lhs: Term
    rhs: Term


def _gv(*els) -> Gen:
    return Gen("gate_v", tuple(els))


def _gh(*els) -> Gen:
    return Gen("gate_h", tuple(els))


def _gt(*els) -> Gen:
    return Gen("gate_t", tuple(els))


_A, _B, _W = WVar("A"), WVar("B"), WVar("W")
_u, _w = WVar("u", exact=1), WVar("w", min_len=1)


def _pbs4_unfolding() -> Term:
    # two splits, a crossing of the middle pair done with adjacent swaps,
    # then two merges
    return seq(
        Par(split_vh(), split_vh()),
        par(ident(V), swap(H, V), ident(H)),
        par(ident(V), ident(V), swap(H, H)),
        par(ident(V), swap(V, H), ident(H)),
        Par(merge_vh(), merge_vh()),
    )


def _pbs_ht_ht_unfolding() -> Term:
    # split the black wire, exchange the two outer H wires, merge back
    return seq(
        Par(ident(H), split_vh()),
        par(swap(H, V), ident(H)),
        par(ident(V), swap(H, H)),
        par(swap(V, H), ident(H)),
        Par(ident(H), merge_vh()),
    )


_RULE_LIST: list[Rule] = [
    Rule("AX1", _gv(), ident(V)),
    Rule("AX2", Seq(_gv(_A), _gv(_B)), _gv(_A, _B)),
    Rule("AX3", Seq(_gv(_W), neg_vh()), Seq(neg_vh(), _gh(_W))),
    Rule("AX4", Seq(neg_t(), split_vh()), Seq(split_hv(), Par(neg_hv(), neg_vh()))),
    Rule("AX5", Seq(_gt(_W), split_vh()), Seq(split_vh(), Par(_gv(_W), _gh(_W)))),
    Rule("AX6", Trace(V, _gv(_W)), Empty()),
    Rule("AX7", Seq(neg_vh(), neg_hv()), ident(V)),
    Rule("AX8", Seq(neg_hv(), neg_vh()), ident(H)),
    Rule("AX9", Seq(split_vh(), merge_vh()), ident(T)),
    Rule("AX10", Seq(merge_vh(), split_vh()), Par(ident(V), ident(H))),
    Rule("AX11", split_hv(), Seq(split_vh(), swap(V, H))),
    Rule("AX12", merge_hv(), Seq(swap(H, V), merge_vh())),
    Rule("AX13", pbs4(), _pbs4_unfolding()),
    Rule(
        "AX14",
        pbs_tv_vt(),
        seq(Par(split_vh(), ident(V)), Par(ident(V), swap(H, V)), Par(ident(V), merge_vh())),
    ),
    Rule(
        "AX15",
        pbs_vt_tv(),
        seq(Par(ident(V), split_vh()), Par(ident(V), swap(V, H)), Par(merge_vh(), ident(V))),
    ),
    Rule(
        "AX16",
        pbs_th_th(),
        seq(Par(split_vh(), ident(H)), Par(ident(V), swap(H, H)), Par(merge_vh(), ident(H))),
    ),
    Rule("AX17", pbs_ht_ht(), _pbs_ht_ht_unfolding()),
    # splitting a word into its first letter and the rest, per colour
    Rule("DER18", _gv(_u, _w), Seq(_gv(_u), _gv(_w))),
    Rule("DER19", _gh(_u, _w), Seq(_gh(_u), _gh(_w))),
    Rule("DER20", _gt(_u, _w), Seq(_gt(_u), _gt(_w))),
    # merging two equal-word gates into one black gate
    Rule("DER21", Par(_gv(_W), _gh(_W)), seq(merge_vh(), _gt(_W), split_vh())),
    Rule("DER22", Par(_gh(_W), _gv(_W)), seq(merge_hv(), _gt(_W), split_hv())),
    Rule(
        "DER23",
        Par(_gv(_W), _gv(_W)),
        seq(
            Par(ident(V), neg_vh()),
            merge_vh(),
            _gt(_W),
            split_vh(),
            Par(ident(V), neg_hv()),
        ),
    ),
    Rule(
        "DER24",
        Par(_gh(_W), _gh(_W)),
        seq(
            Par(neg_hv(), ident(H)),
            merge_vh(),
            _gt(_W),
            split_vh(),
            Par(neg_vh(), ident(H)),
        ),
    ),
    Rule("APPE25", Seq(neg_t(), neg_t()), ident(T)),
    Rule("APPE26", Trace(V, ident(V)), Empty()),
    Rule("APPE27", Trace(H, ident(H)), Empty()),
    Rule("APPE28", Trace(T, ident(T)), Empty()),
    Rule("APPE29", Trace(T, neg_t()), Empty()),
    Rule("APPE30", Seq(neg_t(), split_hv()), Seq(split_vh(), Par(neg_vh(), neg_hv()))),
    Rule("APPE31", Seq(merge_vh(), neg_t()), Seq(Par(neg_vh(), neg_hv()), merge_hv())),
    Rule("APPE32", Seq(merge_hv(), neg_t()), Seq(Par(neg_hv(), neg_vh()), merge_vh())),
    Rule(
        "APPE33",
        Seq(split_vh(), Par(neg_vh(), ident(H))),
        seq(neg_t(), split_hv(), Par(ident(H), neg_vh())),
    ),
    Rule(
        "APPE34",
        Seq(split_hv(), Par(neg_hv(), ident(V))),
        seq(neg_t(), split_vh(), Par(ident(V), neg_hv())),
    ),
    Rule(
        "APPE35",
        Seq(Par(neg_hv(), ident(H)), merge_vh()),
        seq(Par(ident(H), neg_hv()), merge_hv(), neg_t()),
    ),
    Rule(
        "APPE36",
        Seq(Par(neg_vh(), ident(V)), merge_hv()),
        seq(Par(ident(V), neg_vh()), merge_vh(), neg_t()),
    ),
    Rule(
        "APPE37",
        seq(Par(split_vh(), ident(H)), Par(swap(V, H), ident(H)), Par(ident(H), merge_vh())),
        Seq(swap(T, H), pbs_ht_ht()),
    ),
    Rule("APPE38", Seq(merge_vh(), split_hv()), swap(V, H)),
    Rule("STRUCT_YANKING", Empty(), Empty()),
    Rule("STRUCT_DINATURALITY", Empty(), Empty()),
    Rule("STRUCT_SWAP_NATURALITY", Empty(), Empty()),
]

RULES: dict[str, Rule] = {r.rule_id: r for r in _RULE_LIST}

AXIOM_IDS = tuple(f"AX{i}" for i in range(1, 18))
DERIVED_IDS = tuple(f"DER{i}" for i in range(18, 25))
ANCILLARY_IDS = tuple(f"APPE{i}" for i in range(25, 39))
STRUCT_IDS = ("STRUCT_YANKING", "STRUCT_DINATURALITY", "STRUCT_SWAP_NATURALITY")
ALL_RULE_IDS = AXIOM_IDS + DERIVED_IDS + ANCILLARY_IDS + STRUCT_IDS


def word_vars(t: Term) -> dict[str, WVar]:
    """All word variables of a term, by name."""
    out: dict[str, WVar] = {}

    def walk(x: Term) -> None:
        if isinstance(x, Gen):
            for el in x.word:
                if isinstance(el, WVar):
                    prev = out.setdefault(el.name, el)
                    assert prev == el, f"conflicting constraints on variable {el.name}"
        elif isinstance(x, Seq):
            walk(x.first)
            walk(x.second)
        elif isinstance(x, Par):
            walk(x.top)
            walk(x.bottom)
        elif isinstance(x, Trace):
            walk(x.body)

    walk(t)
    return out


def substitute(t: Term, binding: dict[str, tuple[str, ...]]) -> Term:
    """Replace every word variable by its bound letter sequence."""
    if isinstance(t, Gen):
        if not t.word:
            return t
        word: list[str] = []
        for el in t.word:
            if isinstance(el, WVar):
                word.extend(binding[el.name])
            else:
                word.append(el)
        return Gen(t.kind, tuple(word), t.colours)
    if isinstance(t, Seq):
        return Seq(substitute(t.first, binding), substitute(t.second, binding))
    if isinstance(t, Par):
        return Par(substitute(t.top, binding), substitute(t.bottom, binding))
    if isinstance(t, Trace):
        return Trace(t.colour, substitute(t.body, binding))
    return t


def _check_rule_types() -> None:
    for r in _RULE_LIST:
        binding = {
            name: tuple(f"x{k}" for k in range(v.exact or max(v.min_len, 1)))
            for name, v in {**word_vars(r.lhs), **word_vars(r.rhs)}.items()
        }
        lt = type_of(substitute(r.lhs, binding))
        rt = type_of(substitute(r.rhs, binding))
        assert lt == rt, f"{r.rule_id}: {lt} vs {rt}"


_check_rule_types()
