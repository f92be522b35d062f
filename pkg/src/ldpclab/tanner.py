"""Tanner-graph structure analysis: local girth and short-cycle search.

The graph of a parity-check matrix has one variable node per column, one
check node per row, and an edge wherever the matrix holds a 1. All cycles
are even; the girth is at least 4.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .gf2 import SparseBinaryMatrix


@dataclass(frozen=True)
class GirthReport:
    """Shortest cycle through each check node, plus the global minimum.

    math.inf marks check nodes that lie in a forest component.
    """

    per_check: tuple[float, ...]
    girth: float


def local_girth(h: SparseBinaryMatrix) -> GirthReport:
    """BFS from every check node, counting graph edges per cycle.

    Each BFS labels vertices with the first root edge (branch) on their
    tree path; a non-tree edge joining two branches closes a cycle through
    the root of length dist(u) + dist(w) + 1.
    """
    if h.n_rows == 0 or h.n_cols == 0:
        raise ValueError("empty matrix has no Tanner graph")
    m = h.n_rows
    check_adj = [list(s) for s in h.rows]          # check -> variables
    var_adj = h.col_supports()                     # variable -> checks

    def bfs_local(root: int) -> float:
        best = math.inf
        # vertex ids: checks 0..m-1, variables m..m+n-1
        dist = {root: 0}
        branch = {root: -1}
        parent = {root: -1}
        queue = deque()
        for b, v in enumerate(check_adj[root]):
            vid = m + v
            if vid in dist:        # parallel edges cannot occur
                continue
            dist[vid] = 1
            branch[vid] = b
            parent[vid] = root
            queue.append(vid)
        while queue:
            u = queue.popleft()
            du = dist[u]
            if 2 * du >= best:
                break
            neighbours = var_adj[u - m] if u >= m else check_adj[u]
            for raw in neighbours:
                w = raw if u >= m else raw + m
                if w == parent[u]:
                    continue
                if w not in dist:
                    dist[w] = du + 1
                    branch[w] = branch[u]
                    parent[w] = u
                    queue.append(w)
                elif branch[w] != branch[u]:
                    best = min(best, du + dist[w] + 1)
        return best

    per_check = tuple(bfs_local(c) for c in range(m))
    return GirthReport(per_check=per_check, girth=min(per_check, default=math.inf))


def girth(h: SparseBinaryMatrix) -> float:
    return local_girth(h).girth


def check_cycle_sets(h: SparseBinaryMatrix, cycle_length: int, max_sets: int):
    """Distinct sets of cycle_length/2 check nodes closing a cycle.

    Enumerated deterministically (lowest check first, ascending branches);
    stops after max_sets sets. A set is emitted once even when several
    variable choices close a cycle on the same checks.
    """
    if cycle_length % 2 or cycle_length < 4:
        raise ValueError("cycle length must be even and at least 4")
    half = cycle_length // 2
    var_adj = h.col_supports()
    seen: set[frozenset[int]] = set()
    out: list[frozenset[int]] = []

    def extend(start, path, used_checks, used_vars):
        if len(out) >= max_sets:
            return
        cur = path[-1]
        closing = len(path) == half
        for v in h.rows[cur]:
            if v in used_vars:
                continue
            for nxt in var_adj[v]:
                if len(out) >= max_sets:
                    return
                if closing:
                    if nxt != start:
                        continue
                    # direction canonicalization: second check below last
                    if half > 2 and path[1] > path[-1]:
                        continue
                    key = frozenset(path)
                    if key not in seen:
                        seen.add(key)
                        out.append(key)
                elif nxt > start and nxt not in used_checks:
                    extend(start, path + [nxt], used_checks | {nxt},
                           used_vars | {v})

    for start in range(h.n_rows):
        if len(out) >= max_sets:
            break
        extend(start, [start], {start}, set())
    return out
