#!/usr/bin/env python3
"""Solve a small graph with the halving engine and check it against the
brute-force oracle.

The graph below mixes everything the solver has to cope with: a positive
chain, a zero shortcut, and a negative 2-cycle that drags part of the graph
to -inf.
"""

import numpy as np

from minmax_apsp import (
    SignedGraph,
    adjacency_from_graph,
    format_matrix,
    oracle_apsp,
    solve_apsp,
)

edges = (
    (0, 1, 1),   # ordinary +1 edge
    (1, 2, 1),
    (2, 3, 0),   # zero edge: costs nothing but still a hop
    (3, 4, 1),
    (4, 5, -1),  # negative edge...
    (5, 4, 0),   # ...closing a cycle of total weight -1
)
graph = SignedGraph(6, edges)
adjacency = adjacency_from_graph(graph)

print("adjacency (diagonal holds min(0, best self-loop)):")
print(format_matrix(adjacency))

star = solve_apsp(adjacency)
print("distances from the halving engine:")
print(format_matrix(star))

reference = oracle_apsp(adjacency)
print("Floyd-Warshall oracle agrees:", np.array_equal(star, reference))

# vertices 4 and 5 sit on the negative cycle, so everything that can reach
# them and that they can reach is -inf
print("column 4:", star[:, 4].tolist())
print("row 0   :", star[0].tolist())
