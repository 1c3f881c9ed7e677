#!/usr/bin/env python3
"""Minimising PBS count is as hard as maximum Eulerian cycle decomposition.

Every Eulerian multigraph turns into a diagram whose table encodes the
edge orientations: on input wire p, a vertically polarised photon reads
the tail of edge p and a horizontally polarised one reads its head.  Any
decomposition of the graph into r edge-disjoint cycles yields such a
diagram with 2*(edges - r) beam splitters, so fewer PBS means more
cycles, and maximising r is the classic NP-hard MAX-ECD problem.

Desk-scale graphs keep everything checkable by brute force.
"""

from cpbs.hardness import (
    build_C_w_sigma,
    corpus,
    diagram_from_decomposition,
    max_ecd_bruteforce,
    orient_eulerian,
    parse_graph,
)
from cpbs.netlist import to_netlist
from cpbs.semantics import semantics_table, tables_equal
from cpbs.terms import count_pbs
from cpbs.textform import print_term

two_edges = parse_graph("A B\nA B")
o = orient_eulerian(two_edges, seed=0)
print("two parallel edges, oriented along a seeded Eulerian circuit:")
for p, (tail, head) in enumerate(o.arcs):
    print(f"  edge {p}: {tail} -> {head}")

d = build_C_w_sigma(o.w, o.sigma)
print(f"\nits diagram ({count_pbs(d)} PBS):")
print(" ", print_term(d))
print("table rows, vertical reads the tail, horizontal the head:")
for src, dst, word in semantics_table(to_netlist(d)).rows():
    print(f"  {src} -> {dst}  {word[0]}")

# The bowtie is two triangles glued at a vertex. A single Eulerian
# circuit treats it as one cycle; decomposing into the two triangles
# instead drops a swap ladder, two beam splitters here.
bowtie = parse_graph("A B\nB C\nC A\nC D\nD E\nE C")
circuit = orient_eulerian(bowtie, seed=0)
one_cycle = build_C_w_sigma(circuit.w, circuit.sigma)
best = max_ecd_bruteforce(bowtie)
print(f"\nbowtie as one circuit: {count_pbs(one_cycle)} PBS")
print(f"best decomposition found: {best.r} edge-disjoint cycles")
better = diagram_from_decomposition(bowtie, best)
assert tables_equal(
    semantics_table(to_netlist(better)), semantics_table(to_netlist(one_cycle))
)
print(f"same table, {count_pbs(better)} PBS instead of {count_pbs(one_cycle)}")

print("\nacross the whole corpus (edges, best r, PBS):")
for name, g in corpus().items():
    dec = max_ecd_bruteforce(g)
    made = diagram_from_decomposition(g, dec)
    print(f"  {name:18s} {g.n:2d} {dec.r:2d} {count_pbs(made):2d}")
