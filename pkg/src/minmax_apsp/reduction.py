"""The recursive halving engine.

Each level rewires the graph canonically, halves all distances through a
two-hop closure, solves the halved instance recursively, and then recovers
the lost parity bit with two restricted target products: one against the
canonical +1 edges, one against the -1 edges.  A pair's distance is odd
exactly when one of the two products fires.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .extmat import (
    NEG_INF,
    POS_INF,
    VerificationError,
    as_square,
    bounded_hop_closure,
    ext_ceil_half,
)
from .graph import canonical_adjacency, is_delta_regular, one_regular_apsp, oracle_apsp
from .products import RestrictedInstance, restricted_target_minmax


@dataclass
class LevelTrace:
    """Size, hop budget, and stage timings for one recursion level."""

    n: int
    delta: int
    canonical_s: float = 0.0
    two_hop_s: float = 0.0
    recursion_s: float = 0.0
    products_s: float = 0.0
    assembly_s: float = 0.0


@dataclass
class RecursionTrace:
    levels: list = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.levels)


def two_hop_target(canonical) -> np.ndarray:
    """Halved two-hop closure of a canonical adjacency; lands back in
    {-1, 0, 1, +inf} or something upstream is broken."""
    canonical = as_square(canonical)
    halved = ext_ceil_half(bounded_hop_closure(canonical, 2))
    legal = (halved == -1) | (halved == 0) | (halved == 1) | (halved == POS_INF)
    if not legal.all():
        i, j = np.argwhere(~legal)[0]
        raise VerificationError(
            f"halved two-hop entry ({i}, {j}) = {halved[i, j]} left {{-1, 0, 1, +inf}}"
        )
    return halved


def parity_masks(canonical):
    """(x_plus, x_minus): -inf where the canonical edge weighs +1 / -1, else +inf."""
    canonical = as_square(canonical)
    x_plus = np.where(canonical == 1, NEG_INF, POS_INF)
    x_minus = np.where(canonical == -1, NEG_INF, POS_INF)
    return x_plus, x_minus


def parity_products(halved_dist, x_plus, x_minus, t=0.5, *, verify=False):
    """The two parity detectors (z_plus, z_minus).

    z_minus targets the halved distances themselves against the -1-edge mask;
    z_plus targets them shifted down by one against the +1-edge mask.  Both
    instances satisfy the restricted-product bound by the triangle inequality;
    verify=True asserts it.
    """
    halved_dist = as_square(halved_dist)
    shifted = np.where(np.isfinite(halved_dist), halved_dist - 1.0, halved_dist)
    minus_inst = RestrictedInstance(halved_dist, x_minus, halved_dist)
    plus_inst = RestrictedInstance(halved_dist, x_plus, shifted)
    if verify:
        minus_inst.check_target_bound()
        plus_inst.check_target_bound()
    z_minus = restricted_target_minmax(minus_inst, t)
    z_plus = restricted_target_minmax(plus_inst, t)
    return z_plus, z_minus


def assemble_distances(halved_dist, z_plus, z_minus) -> np.ndarray:
    """Undo the halving: +/-inf pass through untouched, odd pairs (either
    detector fired) get 2t-1, the rest get 2t."""
    halved_dist = as_square(halved_dist)
    odd = z_plus.to_bool() | z_minus.to_bool()
    doubled = 2.0 * halved_dist
    return np.where(np.isfinite(halved_dist), np.where(odd, doubled - 1.0, doubled), halved_dist)


def apsp_minus_zero_one(a, delta, t=0.5, *, verify=False, trace=None) -> np.ndarray:
    """Exact distances for a delta-regular {-1, 0, 1} adjacency matrix.

    delta=1 solves directly; otherwise the instance is rewired canonically,
    halved, recursed with ceil(delta/2), and reassembled from the parity
    products.  verify=True re-derives every level against the brute-force
    oracle (regularity, the halving law, the product bounds, the parity law,
    and the final distances) at cubic cost per level.  Pass a RecursionTrace
    to collect per-level sizes and timings.
    """
    a = as_square(a)
    delta = int(delta)
    if delta < 1:
        raise ValueError(f"delta must be >= 1, got {delta}")
    level = LevelTrace(n=a.shape[0], delta=delta)
    if trace is not None:
        trace.levels.append(level)

    star = None
    if verify:
        star = oracle_apsp(a)
        if not is_delta_regular(a, delta):
            raise VerificationError(f"input is not {delta}-regular")

    if delta == 1:
        result = one_regular_apsp(a)
        if verify and not np.array_equal(result, star):
            raise VerificationError("1-regular base case disagrees with the oracle")
        return result

    tic = time.perf_counter()
    canonical = canonical_adjacency(a)
    level.canonical_s = time.perf_counter() - tic

    tic = time.perf_counter()
    halved = two_hop_target(canonical)
    level.two_hop_s = time.perf_counter() - tic

    if verify:
        if not np.array_equal(oracle_apsp(canonical), star):
            raise VerificationError("canonical rewiring changed some distance")
        if not np.array_equal(oracle_apsp(halved), ext_ceil_half(star)):
            raise VerificationError("halving law failed: halved distances are off")

    tic = time.perf_counter()
    halved_star = apsp_minus_zero_one(
        halved, (delta + 1) // 2, t, verify=verify, trace=trace
    )
    level.recursion_s = time.perf_counter() - tic

    tic = time.perf_counter()
    x_plus, x_minus = parity_masks(canonical)
    z_plus, z_minus = parity_products(halved_star, x_plus, x_minus, t, verify=verify)
    level.products_s = time.perf_counter() - tic

    if verify:
        finite = np.isfinite(halved_star)
        fired = z_plus.to_bool() | z_minus.to_bool()
        odd = np.zeros_like(fired)
        odd[finite] = (star[finite] % 2) == 1
        if not np.array_equal(fired[finite], odd[finite]):
            raise VerificationError("parity detectors disagree with oracle parity")

    tic = time.perf_counter()
    result = assemble_distances(halved_star, z_plus, z_minus)
    level.assembly_s = time.perf_counter() - tic

    if verify and not np.array_equal(result, star):
        raise VerificationError("assembled distances disagree with the oracle")
    return result


def solve_apsp(a, t=0.5, *, verify=False, trace=None) -> np.ndarray:
    """Distances for an arbitrary {-1, 0, 1} adjacency: every such matrix is
    n^2-regular, so the recursion starts at delta = n^2."""
    a = as_square(a)
    n = a.shape[0]
    return apsp_minus_zero_one(a, max(1, n * n), t, verify=verify, trace=trace)
