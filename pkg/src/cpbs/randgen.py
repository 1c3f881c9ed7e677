"""Seeded random diagram generation for tests and demos.

Diagrams are grown as layered circuits: start from a random wire type,
repeatedly pick a generator that fits a slice of the current type, and
finally try to close matching end wires with traces.  Traces that make
the photon loop forever are rejected, so every diagram produced here
has a well-defined action table.
"""

from __future__ import annotations

import random
from typing import Sequence

from .errors import NonTermination
from .semantics import semantics_table
from .terms import (
    Colour,
    Gen,
    Par,
    Term,
    Trace,
    _FIXED_TYPES,
    ident,
    par,
    seq,
    swap,
    type_of,
)

T, V, H = Colour.T, Colour.V, Colour.H

_GATE_FOR = {T: "gate_t", V: "gate_v", H: "gate_h"}


def _layer(cur: tuple[Colour, ...], pos: int, g: Gen) -> Term:
    k = len(g.signature()[0])
    cells: list[Term] = [ident(c) for c in cur[:pos]]
    cells.append(g)
    cells.extend(ident(c) for c in cur[pos + k :])
    return par(*cells)


def _moves(cur: tuple[Colour, ...], gate_free: bool) -> list[tuple[str, int]]:
    out: list[tuple[str, int]] = []
    for kind, (tin, _) in sorted(_FIXED_TYPES.items()):
        for pos in range(len(cur) - len(tin) + 1):
            if cur[pos : pos + len(tin)] == tin:
                out.append((kind, pos))
    if not gate_free:
        for pos, c in enumerate(cur):
            out.append((_GATE_FOR[c], pos))
    return out


def _random_word(rng: random.Random, letters: Sequence[str]) -> tuple[str, ...]:
    n = rng.choices([0, 1, 2, 3], weights=[1, 10, 5, 2])[0]
    return tuple(rng.choice(letters) for _ in range(n))


def random_diagram(
    rng: random.Random | int,
    *,
    max_generators: int = 8,
    letters: Sequence[str] = ("U", "V", "W"),
    max_wires: int = 3,
    p_trace: float = 0.6,
    p_swap: float = 0.15,
    gate_free: bool = False,
    single_query: bool = False,
) -> Term:
    """A random well-typed diagram with a terminating action.

    With single_query=True every gate carries one fresh letter, so no
    letter occurs twice in the result.
    """
    if isinstance(rng, int):
        rng = random.Random(rng)
    pool = list(letters)
    n_wires = rng.randint(1, max_wires)
    cur = tuple(rng.choice([T, T, V, H]) for _ in range(n_wires))
    in_type = cur
    layers: list[Term] = []
    budget = rng.randint(1, max_generators)
    guard = 0
    while budget > 0 and guard < 200:
        guard += 1
        if len(cur) >= 2 and rng.random() < p_swap:
            pos = rng.randrange(len(cur) - 1)
            layers.append(_layer(cur, pos, swap(cur[pos], cur[pos + 1])))
            cur = cur[:pos] + (cur[pos + 1], cur[pos]) + cur[pos + 2 :]
            continue
        moves = _moves(cur, gate_free or (single_query and not pool))
        if not moves:
            break
        kind, pos = rng.choice(moves)
        if kind.startswith("gate"):
            if single_query:
                word: tuple[str, ...] = (pool.pop(rng.randrange(len(pool))),)
            else:
                word = _random_word(rng, letters)
            g = Gen(kind, word)
        else:
            g = Gen(kind)
        layers.append(_layer(cur, pos, g))
        tin, tout = g.signature()
        cur = cur[:pos] + tout + cur[pos + len(tin) :]
        budget -= 1

    d: Term = seq(*layers) if layers else par(*(ident(c) for c in in_type))
    a, b = type_of(d)
    while a and b and a[-1] == b[-1] and rng.random() < p_trace:
        candidate = Trace(a[-1], d)
        try:
            semantics_table(candidate)
        except NonTermination:
            break
        d = candidate
        a, b = a[:-1], b[:-1]
    return d
