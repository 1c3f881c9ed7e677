"""Diagram terms for the coloured-PBS calculus.

A diagram is a term over generators (beam splitters, negations, gates,
identities, swaps) combined by sequential composition, parallel
composition and a feedback trace on the last wire position.  Wire types
are sequences of colours: T (black, carries both polarisations),
V (red, vertical only) and H (blue, horizontal only).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator


class Colour(str, Enum):
    T = "T"
    V = "V"
    H = "H"

    def __repr__(self) -> str:
        return self.value


WireType = tuple[Colour, ...]
Word = tuple[str, ...]
Configuration = tuple[Colour, int]  # (polarisation, position)

T, V, H = Colour.T, Colour.V, Colour.H

_LETTER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def as_word(w: object) -> Word:
    """Coerce ``w`` to a word (tuple of oracle letters).

    Strings are split on dots when present; an all-alphabetic string is
    read as a sequence of single-character letters ("UV" is U then V,
    trajectory order); a string matching the identifier syntax but
    containing digits or underscores is one letter.  Pass a tuple or
    list to spell multi-character letters explicitly.
    """
    if isinstance(w, (tuple, list)):
        letters = tuple(w)
    elif isinstance(w, str):
        if w == "":
            return ()
        if "." in w:
            letters = tuple(p for p in w.split("."))
        elif all(c.isalpha() for c in w):
            letters = tuple(w)
        elif _LETTER_RE.match(w):
            letters = (w,)
        else:
            raise ValueError(f"cannot read word from {w!r}; use dotted letters or a tuple")
    else:
        raise ValueError(f"cannot read word from {w!r}")
    for letter in letters:
        if not isinstance(letter, str) or not _LETTER_RE.match(letter):
            raise ValueError(f"invalid oracle letter {letter!r}")
    return letters


def word_str(w: Word) -> str:
    """Render a word in function-composition order (last applied leftmost)."""
    return "".join(reversed(w)) if all(len(u) == 1 for u in w) else ".".join(reversed(w))


# ---------------------------------------------------------------------------
# generator kinds
# ---------------------------------------------------------------------------

PBS_KINDS = frozenset(
    {
        "pbs4",
        "pbs_tv_vt",
        "pbs_vt_tv",
        "pbs_ht_ht",
        "pbs_th_th",
        "split_vh",
        "split_hv",
        "merge_vh",
        "merge_hv",
    }
)
NEG_KINDS = frozenset({"neg_t", "neg_vh", "neg_hv"})
GATE_KINDS = frozenset({"gate_t", "gate_v", "gate_h"})
STRUCT_KINDS = frozenset({"id", "swap"})

# fixed signatures of the non-parametric generators
_FIXED_TYPES: dict[str, tuple[WireType, WireType]] = {
    "pbs4": ((T, T), (T, T)),
    "pbs_tv_vt": ((T, V), (V, T)),
    "pbs_vt_tv": ((V, T), (T, V)),
    "pbs_ht_ht": ((H, T), (H, T)),
    "pbs_th_th": ((T, H), (T, H)),
    "split_vh": ((T,), (V, H)),
    "split_hv": ((T,), (H, V)),
    "merge_vh": ((V, H), (T,)),
    "merge_hv": ((H, V), (T,)),
    "neg_t": ((T,), (T,)),
    "neg_vh": ((V,), (H,)),
    "neg_hv": ((H,), (V,)),
}

_GATE_COLOUR = {"gate_t": T, "gate_v": V, "gate_h": H}


class Term:
    """Base class for diagram terms."""

    __slots__ = ()

    def __rshift__(self, other: "Term") -> "Term":
        return Seq(self, other)

    def __or__(self, other: "Term") -> "Term":
        return Par(self, other)


@dataclass(frozen=True)
class Gen(Term):
    kind: str
    word: Word = ()
    colours: tuple[Colour, ...] = ()

    def __post_init__(self) -> None:
        if self.kind in _FIXED_TYPES:
            if self.word or self.colours:
                raise ValueError(f"{self.kind} takes no parameters")
        elif self.kind in GATE_KINDS:
            if self.colours:
                raise ValueError(f"{self.kind} takes no colour parameters")
        elif self.kind == "id":
            if len(self.colours) != 1 or self.word:
                raise ValueError("id takes exactly one colour")
        elif self.kind == "swap":
            if len(self.colours) != 2 or self.word:
                raise ValueError("swap takes exactly two colours")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    def signature(self) -> tuple[WireType, WireType]:
        if self.kind in _FIXED_TYPES:
            return _FIXED_TYPES[self.kind]
        if self.kind in GATE_KINDS:
            c = _GATE_COLOUR[self.kind]
            return (c,), (c,)
        if self.kind == "id":
            return self.colours, self.colours
        # swap
        c1, c2 = self.colours
        return (c1, c2), (c2, c1)


@dataclass(frozen=True)
class Seq(Term):
    """first, then second (diagrammatic left-to-right order)."""

    first: Term
    second: Term


@dataclass(frozen=True)
class Par(Term):
    top: Term
    bottom: Term


@dataclass(frozen=True)
class Trace(Term):
    """Feedback loop binding the last input and output position of body."""

    colour: Colour
    body: Term


@dataclass(frozen=True)
class Empty(Term):
    pass


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def pbs4() -> Gen:
    return Gen("pbs4")


def pbs_tv_vt() -> Gen:
    return Gen("pbs_tv_vt")


def pbs_vt_tv() -> Gen:
    return Gen("pbs_vt_tv")


def pbs_ht_ht() -> Gen:
    return Gen("pbs_ht_ht")


def pbs_th_th() -> Gen:
    return Gen("pbs_th_th")


def split_vh() -> Gen:
    return Gen("split_vh")


def split_hv() -> Gen:
    return Gen("split_hv")


def merge_vh() -> Gen:
    return Gen("merge_vh")


def merge_hv() -> Gen:
    return Gen("merge_hv")


def neg_t() -> Gen:
    return Gen("neg_t")


def neg_vh() -> Gen:
    return Gen("neg_vh")


def neg_hv() -> Gen:
    return Gen("neg_hv")


def gate_t(w: object = ()) -> Gen:
    return Gen("gate_t", as_word(w))


def gate_v(w: object = ()) -> Gen:
    return Gen("gate_v", as_word(w))


def gate_h(w: object = ()) -> Gen:
    return Gen("gate_h", as_word(w))


def ident(c: Colour) -> Gen:
    return Gen("id", colours=(c,))


def swap(c1: Colour, c2: Colour) -> Gen:
    return Gen("swap", colours=(c1, c2))


def seq(*ds: Term) -> Term:
    if not ds:
        return Empty()
    out = ds[0]
    for d in ds[1:]:
        out = Seq(out, d)
    return out


def par(*ds: Term) -> Term:
    if not ds:
        return Empty()
    out = ds[0]
    for d in ds[1:]:
        out = Par(out, d)
    return out


def identity_of(t: WireType) -> Term:
    return par(*(ident(c) for c in t)) if t else Empty()


# ---------------------------------------------------------------------------
# typing
# ---------------------------------------------------------------------------

def type_of(d: Term) -> tuple[WireType, WireType]:
    """Input and output wire type of a well-typed term.

    Raises TypeError naming the offending sub-term when sequential
    composition or a trace violates the type discipline.
    """
    if isinstance(d, Gen):
        return d.signature()
    if isinstance(d, Empty):
        return (), ()
    if isinstance(d, Seq):
        a1, b1 = type_of(d.first)
        a2, b2 = type_of(d.second)
        if b1 != a2:
            raise TypeError(
                f"sequential mismatch: {type_str(b1)} then {type_str(a2)} in {d!r}"
            )
        return a1, b2
    if isinstance(d, Par):
        a1, b1 = type_of(d.top)
        a2, b2 = type_of(d.bottom)
        return a1 + a2, b1 + b2
    if isinstance(d, Trace):
        a, b = type_of(d.body)
        if not a or not b or a[-1] != d.colour or b[-1] != d.colour:
            raise TypeError(
                f"trace over {d.colour.value} needs that colour last on both sides of {d.body!r}"
            )
        return a[:-1], b[:-1]
    raise TypeError(f"not a diagram term: {d!r}")


def type_str(t: WireType) -> str:
    return "(" + ",".join(c.value for c in t) + ")"


def configurations(t: WireType) -> list[tuple[Colour, int]]:
    """All (polarisation, position) pairs admitted by a wire type.

    Enumeration order is position ascending, V before H on black wires.
    """
    out: list[tuple[Colour, int]] = []
    for p, c in enumerate(t):
        if c in (T, V):
            out.append((V, p))
        if c in (T, H):
            out.append((H, p))
    return out


# ---------------------------------------------------------------------------
# counting
# ---------------------------------------------------------------------------

def generators(d: Term) -> Iterator[Gen]:
    """All generator leaves, including structural id/swap."""
    if isinstance(d, Gen):
        yield d
    elif isinstance(d, Seq):
        yield from generators(d.first)
        yield from generators(d.second)
    elif isinstance(d, Par):
        yield from generators(d.top)
        yield from generators(d.bottom)
    elif isinstance(d, Trace):
        yield from generators(d.body)


def count_queries(d: Term, u: str) -> int:
    return sum(g.word.count(u) for g in generators(d) if g.kind in GATE_KINDS)


def count_pbs(d: Term) -> int:
    return sum(1 for g in generators(d) if g.kind in PBS_KINDS)


def count_neg(d: Term) -> int:
    return sum(1 for g in generators(d) if g.kind in NEG_KINDS)


def count_generators(d: Term) -> int:
    """Non-structural generator count (gates, negations, PBS)."""
    return sum(1 for g in generators(d) if g.kind not in STRUCT_KINDS)


def letters_of(d: Term) -> set[str]:
    out: set[str] = set()
    for g in generators(d):
        if g.kind in GATE_KINDS:
            out.update(g.word)
    return out


def term_size(d: Term) -> int:
    """Size measure: a gate counts its word length, any other generator 1, a trace 1."""
    if isinstance(d, Gen):
        if d.kind in GATE_KINDS:
            return max(1, len(d.word))
        return 1
    if isinstance(d, Seq):
        return term_size(d.first) + term_size(d.second)
    if isinstance(d, Par):
        return term_size(d.top) + term_size(d.bottom)
    if isinstance(d, Trace):
        return term_size(d.body) + 1
    return 0
