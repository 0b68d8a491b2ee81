"""Undirected graphs with positive edge magnitudes.

A :class:`Graph` stores only edge magnitudes.  Each problem formulation
applies its own sign when it turns the graph into a coupling matrix
(MaxCut and Hamiltonian cycle use ``J = -w``, partitioning uses ``J = +w``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True)
class Graph:
    """Immutable undirected graph.

    ``edges`` holds ``(i, j, w)`` triples with ``i < j`` sorted
    lexicographically.  Build instances with :func:`build_graph` rather than
    calling the constructor directly.
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def src(self) -> np.ndarray:
        return np.array([e[0] for e in self.edges], dtype=np.intp)

    @cached_property
    def dst(self) -> np.ndarray:
        return np.array([e[1] for e in self.edges], dtype=np.intp)

    @cached_property
    def weights(self) -> np.ndarray:
        return np.array([e[2] for e in self.edges], dtype=float)

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self.edges)

    def adjacency(self) -> np.ndarray:
        """Dense symmetric weight matrix."""
        a = np.zeros((self.n, self.n))
        a[self.src, self.dst] = self.weights
        a[self.dst, self.src] = self.weights
        return a

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        np.add.at(deg, self.src, 1)
        np.add.at(deg, self.dst, 1)
        return deg

    def neighbors(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for i, j, _ in self.edges:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return nbrs

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    @cached_property
    def _edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, j, _ in self.edges)


def build_graph(n: int, edge_list: Iterable[Sequence[float]]) -> Graph:
    """Validate and canonicalize an edge list.

    Each entry is ``(i, j)`` or ``(i, j, w)``; a missing weight means 1.
    Endpoints are reordered so ``i < j`` and the edges are sorted.

    >>> build_graph(2, [(1, 0, 1)]).edges
    ((0, 1, 1.0),)
    """
    n = int(n)
    if n < 0:
        raise GraphError(f"node count must be non-negative, got {n}")
    seen: dict[tuple[int, int], float] = {}
    for entry in edge_list:
        if len(entry) == 2:
            a, b = entry
            w = 1.0
        elif len(entry) == 3:
            a, b, w = entry
        else:
            raise GraphError(f"edge {tuple(entry)!r} must be (i, j) or (i, j, w)")
        if int(a) != a or int(b) != b:
            raise GraphError(f"edge {tuple(entry)!r}: indices must be integers")
        a, b, w = int(a), int(b), float(w)
        if not (0 <= a < n and 0 <= b < n):
            raise GraphError(f"edge ({a}, {b}): index out of range for n={n}")
        if a == b:
            raise GraphError(f"edge ({a}, {b}): self-loop")
        if not np.isfinite(w) or w <= 0:
            raise GraphError(f"edge ({a}, {b}): weight must be positive, got {w}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError(f"edge {key}: duplicate")
        seen[key] = w
    edges = tuple((i, j, seen[(i, j)]) for i, j in sorted(seen))
    return Graph(n, edges)


def complement(g: Graph) -> Graph:
    if not g.is_unweighted:
        raise GraphError("complement is only defined for unweighted graphs")
    present = g._edge_set
    pairs = [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if (i, j) not in present]
    return build_graph(g.n, pairs)


def mobius_ladder(n: int) -> Graph:
    """Cycle on ``n`` nodes plus the ``n/2`` antipodal chords (3-regular)."""
    if n < 6 or n % 2:
        raise GraphError(f"Mobius ladder needs an even node count >= 6, got {n}")
    cycle = [(i, (i + 1) % n) for i in range(n)]
    chords = [(i, i + n // 2) for i in range(n // 2)]
    return build_graph(n, cycle + chords)


def max_degree(g: Graph) -> int:
    return int(g.degrees().max()) if g.n else 0


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p); the same seed always yields the same graph."""
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability must lie in [0, 1], got {p}")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return build_graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


# Small named graphs used throughout the tests and demos.

def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((i + offset, j + offset, w) for i, j, w in g.edges)
        offset += g.n
    return build_graph(offset, edges)


def check_distance_matrix(D, tol: float = 1e-9) -> np.ndarray:
    """Validate a TSP distance matrix: square, symmetric within ``tol``, non-negative, zero diagonal."""
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise GraphError(f"distance matrix must be square, got shape {D.shape}")
    if not np.all(np.isfinite(D)):
        raise GraphError("distance matrix has non-finite entries")
    if np.any(D < 0):
        raise GraphError("distance matrix has negative entries")
    if np.any(np.diag(D) != 0):
        raise GraphError("distance matrix diagonal must be zero")
    bad = np.abs(D - D.T) > tol
    if bad.any():
        i, j = map(int, np.argwhere(bad)[0])
        raise GraphError(f"distance matrix is asymmetric at ({i}, {j}): {D[i, j]} vs {D[j, i]}")
    return D
