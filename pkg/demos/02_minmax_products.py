#!/usr/bin/env python3
"""Tour of the three product kernels.

The (min, max) product takes the bottleneck of every two-leg route and keeps
the best one.  The target product only asks *whether* each entry of a given
target matrix is that optimum.  For restricted instances (right matrix all
+/-inf, target never above the optimum) the production kernel answers without
ever forming the product: heavy target values go through one packed Boolean
matrix product, light ones through short scans of the sorted rows.
"""

import numpy as np

from minmax_apsp import (
    NEG_INF,
    POS_INF,
    ROUTE_HEAVY,
    ROUTE_LIGHT,
    RestrictedInstance,
    build_row_index,
    minmax_product,
    restricted_target_minmax,
    target_minmax_naive,
)

a = np.array([[1, 3], [2, 0]], dtype=float)
b = np.array([[2, NEG_INF], [POS_INF, 1]], dtype=float)
print("A =", a.tolist())
print("B =", b.tolist())
print("min-max product:", minmax_product(a, b).tolist())

target = np.array([[2, 0], [2, 1]], dtype=float)
print("target:", target.tolist())
print("hits  :", target_minmax_naive(a, b, target).to_bool().astype(int).tolist())

# a bigger restricted instance with a skewed value distribution so both
# routes fire (the hot value is low, so bottleneck optima often equal it)
rng = np.random.default_rng(0)
n = 12
values = np.where(rng.random((n, n)) < 0.5, -5.0, rng.integers(-4, 6, (n, n)))
signs = np.where(rng.random((n, n)) < 0.5, NEG_INF, POS_INF)
product = minmax_product(values, signs)
goal = np.where(np.isfinite(product), product - rng.integers(0, 2, (n, n)), product)
instance = RestrictedInstance(values, signs, goal)

index = build_row_index(values, t=0.5)
print(f"\nn={n}, cutoff ceil(n**0.5) = {index.cutoff}, "
      f"registered heavy (row, value) pairs: {index.heavy_rows}")

bits, routes = restricted_target_minmax(instance, 0.5, return_routes=True)
print("heavy-routed entries:", int((routes == ROUTE_HEAVY).sum()))
print("light-routed entries:", int((routes == ROUTE_LIGHT).sum()))

reference = target_minmax_naive(values, signs, goal)
print("matches the naive kernel:", bits == reference)
print("same answer at every threshold exponent:",
      all(restricted_target_minmax(instance, t) == reference for t in (0, 0.25, 0.75, 1)))
