"""Concrete text syntax for diagrams.

Grammar::

    term := par (';' par)*
    par  := atom ('|' atom)*
    atom := gen | '(' term ')' | 'tr[' type '](' term ')'
    type := 'T' | 'V' | 'H'
    gen  := 'id[' type ']' | 'swap[' type ',' type ']'
          | 'neg' | 'neg[VH]' | 'neg[HV]'
          | 'gate[' word (',' type)? ']'
          | 'pbs' | 'pbs[' sig ']'
          | 'split' | 'split[HV]' | 'merge' | 'merge[HV]'
    sig  := 'TV.VT' | 'VT.TV' | 'HT.HT' | 'TH.TH'
    word := letter ('.' letter)*

``;`` is trajectory order: the left operand is traversed first.  Bare
``split`` and ``merge`` are the V-over-H variants; ``pbs`` is the
all-black four-port splitter.  Whitespace and ``#`` comments are
ignored.  An empty source denotes the empty diagram.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .terms import (
    Colour,
    Empty,
    Gen,
    Par,
    Seq,
    Term,
    Trace,
    WireType,
    type_str,
)

_SIG_KINDS = {
    "TV.VT": "pbs_tv_vt",
    "VT.TV": "pbs_vt_tv",
    "HT.HT": "pbs_ht_ht",
    "TH.TH": "pbs_th_th",
}
_KIND_SIGS = {kind: sig for sig, kind in _SIG_KINDS.items()}

_LETTER_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_TOKEN_RE = re.compile(r"[A-Za-z]+(\[[^\]\[]*\])?|[;|()]|\S")


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    col: int


def _tokenize(src: str) -> list[_Token]:
    out = []
    for lineno, raw in enumerate(src.splitlines(), 1):
        line = raw.split("#", 1)[0]
        for m in _TOKEN_RE.finditer(line):
            out.append(_Token(m.group(0), lineno, m.start() + 1))
    return out


def _fail(tok: _Token | None, why: str) -> SyntaxError:
    where = f"line {tok.line} col {tok.col}" if tok else "end of input"
    return SyntaxError(f"{where}: {why}")


def _colour(tok: _Token, text: str) -> Colour:
    if text not in ("T", "V", "H"):
        raise _fail(tok, f"expected a colour T, V or H, got {text!r}")
    return Colour(text)


def _word(tok: _Token, text: str) -> tuple[str, ...]:
    if not text:
        return ()
    letters = tuple(text.split("."))
    for u in letters:
        if not _LETTER_RE.match(u):
            raise _fail(tok, f"bad oracle letter {u!r}")
    return letters


def _gen(tok: _Token) -> Gen:
    name, _, rest = tok.text.partition("[")
    payload = rest[:-1] if rest else None
    if name == "id":
        if payload is None:
            raise _fail(tok, "id needs a colour, as in id[T]")
        return Gen("id", colours=(_colour(tok, payload),))
    if name == "swap":
        parts = (payload or "").split(",")
        if payload is None or len(parts) != 2:
            raise _fail(tok, "swap needs two colours, as in swap[T,V]")
        return Gen("swap", colours=(_colour(tok, parts[0]), _colour(tok, parts[1])))
    if name == "neg":
        if payload is None:
            return Gen("neg_t")
        if payload in ("VH", "HV"):
            return Gen("neg_vh" if payload == "VH" else "neg_hv")
        raise _fail(tok, f"unknown negation neg[{payload}]")
    if name == "gate":
        if payload is None:
            raise _fail(tok, "gate needs a word, as in gate[U.V]")
        word_part, _, colour_part = payload.partition(",")
        kind = "gate_t"
        if colour_part:
            kind = {"T": "gate_t", "V": "gate_v", "H": "gate_h"}.get(colour_part)
            if kind is None:
                raise _fail(tok, f"bad gate colour {colour_part!r}")
        return Gen(kind, _word(tok, word_part))
    if name == "pbs":
        if payload is None:
            return Gen("pbs4")
        if payload in _SIG_KINDS:
            return Gen(_SIG_KINDS[payload])
        raise _fail(tok, f"unknown splitter signature pbs[{payload}]")
    if name == "split":
        if payload is None:
            return Gen("split_vh")
        if payload == "HV":
            return Gen("split_hv")
        raise _fail(tok, f"unknown split variant split[{payload}]")
    if name == "merge":
        if payload is None:
            return Gen("merge_vh")
        if payload == "HV":
            return Gen("merge_hv")
        raise _fail(tok, f"unknown merge variant merge[{payload}]")
    raise _fail(tok, f"unknown generator {tok.text!r}")


class _Parser:
    def __init__(self, tokens: list[_Token]) -> None:
        self.tokens = tokens
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise _fail(None, "unexpected end of input")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok is None or tok.text != text:
            raise _fail(tok, f"expected {text!r}" + (f", got {tok.text!r}" if tok else ""))
        return self.take()

    # each rule returns (term, in_type, out_type); types are threaded so
    # composition errors can point at the offending operator
    def term(self) -> tuple[Term, WireType, WireType]:
        t, a, b = self.par()
        while self.peek() is not None and self.peek().text == ";":
            op = self.take()
            t2, a2, b2 = self.par()
            if b != a2:
                raise TypeError(
                    f"line {op.line} col {op.col}: cannot compose "
                    f"{type_str(b)} into {type_str(a2)}"
                )
            t, b = Seq(t, t2), b2
        return t, a, b

    def par(self) -> tuple[Term, WireType, WireType]:
        t, a, b = self.atom()
        while self.peek() is not None and self.peek().text == "|":
            self.take()
            t2, a2, b2 = self.atom()
            t, a, b = Par(t, t2), a + a2, b + b2
        return t, a, b

    def atom(self) -> tuple[Term, WireType, WireType]:
        tok = self.peek()
        if tok is None:
            raise _fail(None, "expected a diagram")
        if tok.text == "(":
            self.take()
            t, a, b = self.term()
            self.expect(")")
            return t, a, b
        if tok.text.startswith("tr[") or tok.text == "tr":
            self.take()
            name, _, rest = tok.text.partition("[")
            if not rest:
                raise _fail(tok, "tr needs a colour, as in tr[T](...)")
            c = _colour(tok, rest[:-1])
            self.expect("(")
            t, a, b = self.term()
            self.expect(")")
            if not a or not b or a[-1] != c or b[-1] != c:
                raise TypeError(
                    f"line {tok.line} col {tok.col}: tr[{c.value}] needs "
                    f"{c.value} last on both sides, got {type_str(a)} -> {type_str(b)}"
                )
            return Trace(c, t), a[:-1], b[:-1]
        if tok.text[0].isalpha():
            g = _gen(self.take())
            a, b = g.signature()
            return g, a, b
        raise _fail(tok, f"unexpected {tok.text!r}")


def parse(src: str) -> Term:
    """Read a diagram from text; SyntaxError and TypeError carry line/col."""
    tokens = _tokenize(src)
    if not tokens:
        return Empty()
    p = _Parser(tokens)
    t, _, _ = p.term()
    leftover = p.peek()
    if leftover is not None:
        raise _fail(leftover, f"trailing input {leftover.text!r}")
    return t


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _gen_text(g: Gen) -> str:
    if g.kind == "id":
        return f"id[{g.colours[0].value}]"
    if g.kind == "swap":
        return f"swap[{g.colours[0].value},{g.colours[1].value}]"
    if g.kind == "neg_t":
        return "neg"
    if g.kind == "neg_vh":
        return "neg[VH]"
    if g.kind == "neg_hv":
        return "neg[HV]"
    if g.kind.startswith("gate_"):
        word = ".".join(g.word)
        suffix = {"gate_t": "", "gate_v": ",V", "gate_h": ",H"}[g.kind]
        return f"gate[{word}{suffix}]"
    if g.kind == "pbs4":
        return "pbs"
    if g.kind in _KIND_SIGS:
        return f"pbs[{_KIND_SIGS[g.kind]}]"
    if g.kind == "split_vh":
        return "split"
    if g.kind == "split_hv":
        return "split[HV]"
    if g.kind == "merge_vh":
        return "merge"
    return "merge[HV]"


def _seq_parts(d: Term) -> list[Term]:
    if isinstance(d, Seq):
        return _seq_parts(d.first) + _seq_parts(d.second)
    return [] if isinstance(d, Empty) else [d]


def _par_parts(d: Term) -> list[Term]:
    if isinstance(d, Par):
        return _par_parts(d.top) + _par_parts(d.bottom)
    return [] if isinstance(d, Empty) else [d]


def _print_seq(d: Term) -> str:
    return " ; ".join(_print_par(p) for p in _seq_parts(d))


def _print_par(d: Term) -> str:
    return " | ".join(_print_atom(a) for a in _par_parts(d))


def _print_atom(d: Term) -> str:
    if isinstance(d, Gen):
        return _gen_text(d)
    if isinstance(d, Trace):
        return f"tr[{d.colour.value}]({_print_seq(d.body)})"
    return f"({_print_seq(d)})"


def print_term(d: Term) -> str:
    """Render a term in the text syntax; parse(print_term(d)) redraws d."""
    return _print_seq(d)
