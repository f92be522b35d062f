"""Progressive edge-growth construction of rate-1/2 LDPC codes.

Variable-node degrees follow a fixed node-perspective distribution,
quantized to exact node counts by largest-remainder rounding. Edges are
placed one variable node at a time: the first edge goes to a
minimum-degree check, later edges to a check at maximal BFS distance from
the node's current subtree, breaking ties by minimal check degree and then
uniformly at random from the construction seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import SparseBinaryMatrix

PEG_LENGTHS = (500, 600, 700, 800, 900, 1000)

# Optimized variable-node degree distribution for rate 1/2 (node fractions).
OPTIMIZED_DEGREE_FRACTIONS = {
    2: 0.5043865558,
    3: 0.2955760529,
    5: 0.0572634080,
    6: 0.0362602194,
    7: 0.0049622081,
    9: 0.0292344776,
    11: 0.0650312477,
    12: 0.0072858305,
}


@dataclass(frozen=True)
class DegreeDistribution:
    """Node-perspective variable degree fractions."""

    node_fractions: dict[int, float]

    def __post_init__(self):
        if any(d < 2 for d in self.node_fractions):
            raise ValueError("variable degrees below 2 are not supported")
        if any(f <= 0 for f in self.node_fractions.values()):
            raise ValueError("fractions must be positive")
        total = sum(self.node_fractions.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"fractions sum to {total}, expected 1")

    def mean_degree(self) -> float:
        return sum(d * f for d, f in self.node_fractions.items())


def optimized_distribution() -> DegreeDistribution:
    return DegreeDistribution(dict(OPTIMIZED_DEGREE_FRACTIONS))


@dataclass(frozen=True)
class DegreeAssignment:
    """Exact per-variable degrees, nondecreasing (PEG grows low degrees first)."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if any(a > b for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError("degrees must be nondecreasing")

    def histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for d in self.degrees:
            hist[d] = hist.get(d, 0) + 1
        return hist

    def edge_count(self) -> int:
        return sum(self.degrees)


def quantize_degrees(dist: DegreeDistribution, n: int) -> DegreeAssignment:
    """Largest-remainder rounding of n * fraction per degree, summing to n."""
    if n < 2:
        raise ValueError("need at least two variable nodes")
    quotas = {d: n * f for d, f in sorted(dist.node_fractions.items())}
    counts = {d: int(q) for d, q in quotas.items()}
    leftover = n - sum(counts.values())
    by_remainder = sorted(
        quotas, key=lambda d: (quotas[d] - counts[d], -d), reverse=True
    )
    for d in by_remainder[:leftover]:
        counts[d] += 1
    degrees = []
    for d in sorted(counts):
        degrees.extend([d] * counts[d])
    return DegreeAssignment(tuple(degrees))


def peg_construct(n: int, m: int, degrees: DegreeAssignment,
                  seed: int) -> SparseBinaryMatrix:
    """Grow an m x n Tanner graph edge by edge.

    For every edge after a variable node's first, a BFS over the current
    graph expands the node's subtree until the reached check set either
    covers all checks or stops growing; the new edge attaches to a check
    outside the last reached set (maximal or unreachable depth), choosing
    minimal degree and then uniformly by seed.
    """
    if len(degrees.degrees) != n:
        raise ValueError("degree assignment length must equal n")
    if 2 * m != n:
        raise ValueError("only rate-1/2 construction is supported (m = n/2)")
    if max(degrees.degrees) > m:
        raise ValueError("variable degree exceeds the number of checks")

    rng = np.random.default_rng(seed)
    var_checks: list[list[int]] = [[] for _ in range(n)]   # variable -> checks
    check_vars: list[list[int]] = [[] for _ in range(m)]   # check -> variables
    check_deg = np.zeros(m, dtype=np.int64)

    def pick(candidates: np.ndarray) -> int:
        degs = check_deg[candidates]
        best = candidates[degs == degs.min()]
        return int(best[rng.integers(len(best))]) if len(best) > 1 else int(best[0])

    def reachable_checks(v: int) -> np.ndarray:
        """Checks in the subtree of v once BFS saturates or covers all."""
        seen_check = np.zeros(m, dtype=bool)
        seen_var = np.zeros(n, dtype=bool)
        seen_var[v] = True
        frontier = list(var_checks[v])
        seen_check[list(frontier)] = True
        while True:
            if seen_check.all():
                return seen_check
            next_vars = [
                u for c in frontier for u in check_vars[c] if not seen_var[u]
            ]
            for u in next_vars:
                seen_var[u] = True
            new_frontier = []
            for u in next_vars:
                for c in var_checks[u]:
                    if not seen_check[c]:
                        seen_check[c] = True
                        new_frontier.append(c)
            if not new_frontier:
                return seen_check
            frontier = new_frontier

    all_checks = np.arange(m)
    for v, dv in enumerate(degrees.degrees):
        for k in range(dv):
            if k == 0:
                chosen = pick(all_checks)
            else:
                reached = reachable_checks(v)
                outside = np.flatnonzero(~reached)
                if len(outside) == 0:
                    # graph exhausted: every check already inside the
                    # subtree; fall back to the farthest BFS layer
                    outside = _deepest_layer(v, var_checks, check_vars, m, n)
                chosen = pick(outside)
            var_checks[v].append(chosen)
            check_vars[chosen].append(v)
            check_deg[chosen] += 1

    rows = tuple(tuple(sorted(vs)) for vs in check_vars)
    return SparseBinaryMatrix(m, n, rows)


def _deepest_layer(v, var_checks, check_vars, m, n) -> np.ndarray:
    """Checks at maximal BFS depth from v, excluding its direct neighbours."""
    depth = -np.ones(m, dtype=np.int64)
    seen_var = np.zeros(n, dtype=bool)
    seen_var[v] = True
    frontier = list(dict.fromkeys(var_checks[v]))
    depth[frontier] = 0
    level = 0
    while frontier:
        level += 1
        next_vars = [u for c in frontier for u in check_vars[c] if not seen_var[u]]
        for u in next_vars:
            seen_var[u] = True
        frontier = []
        for u in next_vars:
            for c in var_checks[u]:
                if depth[c] < 0:
                    depth[c] = level
                    frontier.append(c)
    deepest = depth.max()
    if deepest <= 0:
        raise ValueError("no eligible check found for edge placement")
    return np.flatnonzero(depth == deepest)


def construct_peg_code(n: int, seed: int,
                       dist: DegreeDistribution | None = None) -> SparseBinaryMatrix:
    """Rate-1/2 PEG code of length n under the optimized distribution."""
    if dist is None:
        dist = optimized_distribution()
    degrees = quantize_degrees(dist, n)
    return peg_construct(n, n // 2, degrees, seed)
