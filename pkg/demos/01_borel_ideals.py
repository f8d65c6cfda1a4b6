"""Strongly stable ideals from Borel generators.

A monomial ideal is strongly stable when every generator survives swapping
any of its variables x_i for an earlier variable x_j (j < i). This script
walks through the monomial raw material: one-step reductions, the reverse
lexicographic order, closures, and the two-region split of a two-generator
quadric ideal.
"""

from borel_rees import (
    borel_closure,
    one_step_reduction,
    parse_monomial,
    region_partition,
    rlex_compare,
    strongly_stable_precedes,
)

n = 5
x2x5 = parse_monomial("x2*x5", n)

# One-step reductions push a variable earlier: x2*x5 -> x2*x4 swaps x5 for x4.
print("one step:", x2x5, "->", one_step_reduction(x2x5, i=5, j=4))

# Reachability by chains of such moves is the strongly stable (Borel) order.
x1x2 = parse_monomial("x1*x2", n)
print("x1*x2 reachable from x2*x5:", strongly_stable_precedes(x1x2, x2x5))
x3sq = parse_monomial("x3^2", n)
print("x3^2 reachable from x2*x5:", strongly_stable_precedes(x3sq, x2x5))

# The closure of {x3^2, x2*x5} has ten generators, listed rlex-descending.
ideal = borel_closure([x3sq, x2x5], n)
print("\nB(x3^2, x2*x5) minimal generators:")
for g in ideal.minimal_generators:
    print("  ", g)

# rlex prefers earlier variables: the last variable where two monomials
# differ decides, and less of it wins.
print("\nx1*x2 vs x2^2 under rlex:",
      rlex_compare(parse_monomial("x1*x2", n), parse_monomial("x2^2", n)))

# For two incomparable quadric generators M = x_a*x_b and N = x_c*x_d with
# c < a <= b < d, the generators split into the closure of M (the head
# region B_M) and the rest (the tail region B_N, a c-by-(d-b) rectangle).
view = region_partition(ideal)
print("\nindices a,b,c,d:", view.a, view.b, view.c, view.d)
print("B_M:", [str(g) for g in view.B_M])
print("B_N:", [str(g) for g in view.B_N])
assert len(view.B_N) == view.c * (view.d - view.b)
