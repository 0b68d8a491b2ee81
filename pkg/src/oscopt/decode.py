"""Turn settled phases into discrete solutions and score them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coupling import TWO_PI
from .graph import Graph


@dataclass(frozen=True)
class DecodedPartition:
    labels: np.ndarray
    discreteness: float
    cut_edges: int
    internal_edges: int
    weighted_cut: float


@dataclass(frozen=True)
class DecodedTour:
    order: tuple[int, ...]
    valid: bool
    discreteness: float


def snap_phases(phases, order: int) -> tuple[np.ndarray, float]:
    """Nearest grid label ``round(order*phi/2pi) mod order`` and the worst snap distance.

    Exact midpoints go to the lower grid point.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    p = np.mod(np.asarray(phases, dtype=float), TWO_PI)
    x = p * order / TWO_PI
    k = np.ceil(x - 0.5)
    labels = np.mod(k, order).astype(int)
    dist = np.abs(p - k * TWO_PI / order)
    disc = float(dist.max()) if dist.size else 0.0
    return labels, disc


def cut_value(labels, g: Graph) -> tuple[int, int, float]:
    """``(cut_edges, internal_edges, weighted_cut)`` of a labelling."""
    labels = np.asarray(labels)
    if labels.shape != (g.n,):
        raise ValueError(f"expected {g.n} labels, got shape {labels.shape}")
    if g.m == 0:
        return 0, 0, 0.0
    cut = labels[g.src] != labels[g.dst]
    return int(cut.sum()), int((~cut).sum()), float(g.weights[cut].sum())


def decode_partition(phases, g: Graph, K: int) -> DecodedPartition:
    labels, disc = snap_phases(phases, K)
    cut, internal, wcut = cut_value(labels, g)
    return DecodedPartition(labels, disc, cut, internal, wcut)


def canonical_tour(order) -> tuple[int, ...]:
    """Rotate a cyclic order to start at its smallest city; pick the smaller direction."""
    order = list(order)
    if not order:
        return ()
    k = order.index(min(order))
    fwd = order[k:] + order[:k]
    bwd = [fwd[0]] + fwd[1:][::-1]
    return tuple(min(fwd, bwd))


def decode_tour(phases, N: int | None = None) -> DecodedTour:
    """Read a tour from the circular phase ordering.

    Phases are snapped to the ``N``-grid; the decode is valid when every slot
    holds exactly one oscillator.  Otherwise the plain rank order of the
    phases is returned with ``valid=False``.
    """
    phases = np.asarray(phases, dtype=float)
    N = phases.size if N is None else N
    if phases.size != N:
        raise ValueError(f"expected {N} phases, got {phases.size}")
    slots, disc = snap_phases(phases, N)
    valid = np.unique(slots).size == N
    if valid:
        order = np.argsort(slots, kind="stable")
    else:
        order = np.argsort(np.mod(phases, TWO_PI), kind="stable")
    return DecodedTour(canonical_tour(order.tolist()), bool(valid), disc)


def tour_length(order, D) -> float:
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    if not np.allclose(D, D.T, atol=1e-9, rtol=0):
        raise ValueError("distance matrix must be symmetric")
    order = np.asarray(order, dtype=int)
    return float(D[order, np.roll(order, -1)].sum())


def check_hamiltonian(order, g: Graph) -> tuple[str, int]:
    """Classify a node ordering as ``"cycle"``, ``"path_only"`` or ``"neither"``.

    Returns the status and the number of cyclically consecutive pairs that
    lack an edge.
    """
    order = list(order)
    if sorted(order) != list(range(g.n)):
        raise ValueError("order must be a permutation of the nodes")
    n = len(order)
    missing = sum(not g.has_edge(order[t], order[(t + 1) % n]) for t in range(n))
    if missing == 0:
        return "cycle", 0
    if missing == 1:
        return "path_only", 1
    return "neither", missing


def partition_report(labels, g: Graph) -> tuple[int, int]:
    """``(|n0 - n1|, cut_edges)`` for a binary labelling."""
    labels = np.asarray(labels)
    if np.any((labels != 0) & (labels != 1)):
        raise ValueError("partition labels must be 0 or 1")
    ones = int(labels.sum())
    return abs(g.n - 2 * ones), cut_value(labels, g)[0]


def independent_sets_from(labels, g: Graph) -> tuple[dict[int, int], list[int]]:
    """Internal edge count per label class, and the largest edge-free class.

    Ties between equally large edge-free classes go to the smaller label.
    """
    labels = np.asarray(labels)
    classes = sorted(set(labels.tolist()))
    internal = {c: 0 for c in classes}
    for i, j, _ in g.edges:
        if labels[i] == labels[j]:
            internal[int(labels[i])] += 1
    best: list[int] = []
    for c in classes:
        if internal[c] == 0:
            members = np.flatnonzero(labels == c).tolist()
            if len(members) > len(best):
                best = members
    return internal, best


def grid_phases(labels, order: int) -> np.ndarray:
    return TWO_PI * np.asarray(labels, dtype=float) / order


def tour_phases(order) -> np.ndarray:
    """Phases that place ``order[t]`` in slot ``t``."""
    order = np.asarray(order, dtype=int)
    n = order.size
    phases = np.empty(n)
    phases[order] = TWO_PI * np.arange(n) / n
    return phases


def is_clique(nodes, g: Graph) -> bool:
    nodes = list(nodes)
    return all(g.has_edge(a, b) for x, a in enumerate(nodes) for b in nodes[x + 1:])


def is_independent(nodes, g: Graph) -> bool:
    nodes = list(nodes)
    return not any(g.has_edge(a, b) for x, a in enumerate(nodes) for b in nodes[x + 1:])

