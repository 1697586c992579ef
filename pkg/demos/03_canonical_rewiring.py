#!/usr/bin/env python3
"""Canonical rewiring: same distances, but shortest paths no longer need
zero-weight edges or extra hops.

Zero edges are free but cost recursion budget (each one is a hop).  The
rewiring closes zero runs transitively and fuses them into the neighboring
+1/-1 edges, so a shortest path can always be rewritten over nonzero edges
without getting longer.
"""

import numpy as np

from minmax_apsp import (
    SignedGraph,
    adjacency_from_graph,
    bounded_hop_closure,
    canonical_adjacency,
    format_matrix,
    oracle_apsp,
)

# a zero corridor feeding a -1 edge: 0 -> 1 -> 2 cost nothing, 2 -> 3 pays -1
graph = SignedGraph(4, ((0, 1, 0), (1, 2, 0), (2, 3, -1)))
a = adjacency_from_graph(graph)
c = canonical_adjacency(a)

print("original adjacency:")
print(format_matrix(a))
print("canonical adjacency (note the direct -1 edges 0->3 and 1->3):")
print(format_matrix(c))

print("distances preserved:", np.array_equal(oracle_apsp(a), oracle_apsp(c)))

star = oracle_apsp(a)
for hops in (1, 2, 3):
    ha = bounded_hop_closure(a, hops)
    hc = bounded_hop_closure(c, hops)
    done_a = int(((ha == star) & np.isfinite(star)).sum())
    done_c = int(((hc == star) & np.isfinite(star)).sum())
    print(f"pairs settled within {hops} hop(s): original {done_a}, canonical {done_c}")
