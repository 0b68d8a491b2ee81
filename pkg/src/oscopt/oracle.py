"""Exact solvers for small instances.

These are ground truth for the heuristic solvers.  None of them reuse the
scoring code in :mod:`oscopt.decode` or :mod:`oscopt.energy`; each counts
edges or sums distances on its own.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph


class OracleBudgetError(ValueError):
    """The instance is larger than the oracle is allowed to enumerate."""


@dataclass(frozen=True)
class OracleBudget:
    cut: int = 16
    tsp: int = 15
    hc: int = 20
    gp: int = 20
    mis: int = 30
    chromatic: int = 12
    # cap on K**(n-1) labellings for Max-K-Cut enumeration
    cut_states: int = 50_000_000


BUDGET = OracleBudget()


def _require(n: int, limit: int, what: str):
    if n > limit:
        raise OracleBudgetError(f"{what}: n={n} exceeds the oracle budget of {limit}")


def _edge_arrays(g: Graph):
    src = np.array([e[0] for e in g.edges], dtype=np.intp)
    dst = np.array([e[1] for e in g.edges], dtype=np.intp)
    w = np.array([e[2] for e in g.edges], dtype=float)
    return src, dst, w


def exact_max_k_cut(g: Graph, K: int, budget: OracleBudget = BUDGET) -> tuple[float, np.ndarray]:
    """Exhaustive Max-K-Cut with node 0 pinned to label 0.

    Returns the best total weight of cut edges (the edge count for
    unweighted graphs) and one optimal labelling.
    """
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    _require(g.n, budget.cut, "max-k-cut")
    n = g.n
    if n <= 1 or not g.edges:
        return 0.0, np.zeros(n, dtype=int)
    free = n - 1
    total = K ** free
    if total > budget.cut_states:
        raise OracleBudgetError(f"max-k-cut: {K}^{free} labellings exceed the budget")
    src, dst, w = _edge_arrays(g)
    powers = K ** np.arange(free, dtype=np.int64)
    best, best_idx = -1.0, 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        labels = np.zeros((idx.size, n), dtype=np.int8)
        labels[:, 1:] = (idx[:, None] // powers[None, :]) % K
        cut = ((labels[:, src] != labels[:, dst]) * w).sum(axis=1)
        k = int(np.argmax(cut))
        if cut[k] > best:
            best, best_idx = float(cut[k]), int(idx[k])
    labels = np.zeros(n, dtype=int)
    labels[1:] = (best_idx // powers) % K
    return best, labels


def _check_distance(D) -> np.ndarray:
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    if np.any(np.abs(D - D.T) > 1e-9) or np.any(np.diag(D) != 0) or np.any(D < 0):
        raise ValueError("distance matrix must be symmetric, non-negative, zero on the diagonal")
    return D


def _cycle_cost(D, tour) -> float:
    return float(sum(D[tour[t], tour[(t + 1) % len(tour)]] for t in range(len(tour))))


def exact_tsp(D, budget: OracleBudget = BUDGET) -> tuple[float, list[int]]:
    """Held-Karp dynamic program over subsets, O(2^N N^2)."""
    D = _check_distance(D)
    n = D.shape[0]
    _require(n, budget.tsp, "tsp")
    if n < 3:
        raise ValueError("TSP needs at least 3 cities")
    # Subsets of cities 1..n-1, city 0 is the fixed start.
    m = n - 1
    full = 1 << m
    cost = np.full((full, m), np.inf)
    parent = np.full((full, m), -1, dtype=np.int64)
    for j in range(m):
        cost[1 << j, j] = D[0, j + 1]
    d_sub = D[1:, 1:]
    for mask in range(1, full):
        row = cost[mask]
        if not np.isfinite(row).any():
            continue
        for j in range(m):
            if not (mask >> j) & 1 or not np.isfinite(row[j]):
                continue
            cand = row[j] + d_sub[j]
            for k in range(m):
                if (mask >> k) & 1:
                    continue
                nm = mask | (1 << k)
                if cand[k] < cost[nm, k]:
                    cost[nm, k] = cand[k]
                    parent[nm, k] = j
    last = cost[full - 1] + D[1:, 0]
    j = int(np.argmin(last))
    best = float(last[j])
    tour = []
    mask = full - 1
    while j >= 0:
        tour.append(j + 1)
        pj = int(parent[mask, j])
        mask ^= 1 << j
        j = pj
    tour.append(0)
    tour.reverse()
    return best, tour


def brute_force_tsp(D) -> tuple[float, list[int]]:
    """Enumerate every tour through city 0; for cross-checking Held-Karp."""
    D = _check_distance(D)
    n = D.shape[0]
    if n > 10:
        raise OracleBudgetError("brute-force TSP is limited to 10 cities")
    best, best_tour = math.inf, None
    for perm in itertools.permutations(range(1, n)):
        tour = (0,) + perm
        c = _cycle_cost(D, tour)
        if c < best:
            best, best_tour = c, list(tour)
    return best, best_tour


def exact_hamiltonian(g: Graph, budget: OracleBudget = BUDGET) -> tuple[str, list[int] | None]:
    """Backtracking search: ``("cycle", witness)``, ``("path", witness)`` or ``("none", None)``."""
    n = g.n
    _require(n, budget.hc, "hamiltonian")
    adj = [set() for _ in range(n)]
    for i, j, _ in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    if n == 1:
        return "path", [0]
    if n == 0:
        return "none", None

    def search(start: int, close: bool) -> list[int] | None:
        path = [start]
        used = [False] * n
        used[start] = True

        def extend() -> bool:
            if len(path) == n:
                return not close or start in adj[path[-1]]
            here = path[-1]
            # Prune: an unvisited node needs enough unvisited-or-endpoint neighbours.
            for v in range(n):
                if used[v]:
                    continue
                free = sum(1 for u in adj[v] if not used[u] or u == here or (close and u == start))
                if free == 0 or (close and free < 2 and len(path) < n - 1):
                    return False
            for nxt in sorted(adj[here], key=lambda u: len(adj[u])):
                if used[nxt]:
                    continue
                used[nxt] = True
                path.append(nxt)
                if extend():
                    return True
                path.pop()
                used[nxt] = False
            return False

        return list(path) if extend() else None

    if n >= 3 and all(len(a) >= 2 for a in adj):
        cyc = search(0, close=True)
        if cyc is not None:
            return "cycle", cyc
    for s in sorted(range(n), key=lambda v: len(adj[v])):
        p = search(s, close=False)
        if p is not None:
            return "path", p
    return "none", None


def exact_balanced_partition(g: Graph, budget: OracleBudget = BUDGET) -> tuple[int, np.ndarray]:
    """Minimum cut over all equal-size bipartitions (node 0 fixed on side 0)."""
    n = g.n
    if n % 2:
        raise ValueError("balanced partition needs an even node count")
    _require(n, budget.gp, "graph partition")
    src, dst, _ = _edge_arrays(g)
    best, best_side = None, None
    for rest in itertools.combinations(range(1, n), n // 2 - 1):
        side = np.ones(n, dtype=int)
        side[0] = 0
        side[list(rest)] = 0
        cut = int((side[src] != side[dst]).sum())
        if best is None or cut < best:
            best, best_side = cut, side
    if best is None:
        return 0, np.zeros(n, dtype=int)
    return best, best_side


def exact_mis(g: Graph, budget: OracleBudget = BUDGET) -> tuple[int, list[int]]:
    """Branch and bound on bitmasks: branch on a max-degree vertex, prune by remaining count."""
    n = g.n
    _require(n, budget.mis, "mis")
    nbr = [0] * n
    for i, j, _ in g.edges:
        nbr[i] |= 1 << j
        nbr[j] |= 1 << i
    best = [0, 0]

    def popcount(x: int) -> int:
        return bin(x).count("1")

    def rec(cand: int, chosen: int, size: int):
        if size + popcount(cand) <= best[0]:
            return
        if cand == 0:
            best[0], best[1] = size, chosen
            return
        # Vertices with no candidate neighbours can always be taken.
        v_best, d_best = -1, -1
        bits = cand
        while bits:
            v = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            d = popcount(nbr[v] & cand)
            if d == 0:
                rec(cand & ~(1 << v), chosen | (1 << v), size + 1)
                return
            if d > d_best:
                v_best, d_best = v, d
        v = v_best
        rec(cand & ~(1 << v) & ~nbr[v], chosen | (1 << v), size + 1)
        rec(cand & ~(1 << v), chosen, size)

    rec((1 << n) - 1, 0, 0)
    return best[0], [v for v in range(n) if (best[1] >> v) & 1]


def _colorable(adj: list[set[int]], k: int) -> list[int] | None:
    n = len(adj)
    order = sorted(range(n), key=lambda v: -len(adj[v]))
    color = [-1] * n

    def place(t: int, used: int) -> bool:
        if t == n:
            return True
        v = order[t]
        taken = {color[u] for u in adj[v] if color[u] >= 0}
        # Symmetry break: never open more than one new colour at a time.
        for c in range(min(k, used + 1)):
            if c in taken:
                continue
            color[v] = c
            if place(t + 1, max(used, c + 1)):
                return True
        color[v] = -1
        return False

    return list(color) if place(0, 0) else None


def exact_chromatic(g: Graph, budget: OracleBudget = BUDGET) -> tuple[int, list[int]]:
    """Smallest k for which backtracking finds a proper k-colouring."""
    n = g.n
    _require(n, budget.chromatic, "chromatic")
    if n == 0:
        return 0, []
    adj = [set() for _ in range(n)]
    for i, j, _ in g.edges:
        adj[i].add(j)
        adj[j].add(i)
    for k in range(1, n + 1):
        col = _colorable(adj, k)
        if col is not None:
            return k, col
    raise AssertionError("unreachable: n colours always suffice")
