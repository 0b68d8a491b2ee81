"""Oscillator networks: a graph turned into signed couplings for one problem.

Every problem family fixes three things: the sign convention of ``J``, the
phase interaction ``f`` inside the coupling term, and the order of the
injected harmonic.  :class:`OscillatorNetwork` bundles them and stores the
couplings as an undirected pair list, which keeps large sparse graphs cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .coupling import (PhaseInteraction, build_hc_interaction, build_max_k_cut_interaction,
                       build_tsp_interaction)
from .graph import Graph

KINDS = ("maxkcut", "tsp", "hc", "gp")


@dataclass(frozen=True, eq=False)
class OscillatorNetwork:
    """Signed pair couplings plus the problem-specific phase interaction.

    ``coupling[e]`` is ``J`` for the pair ``(src[e], dst[e])``; the matrix is
    symmetric so each unordered pair appears once.  For ``kind == "gp"``
    ``interaction`` is unused and ``balance`` selects how the mean-phase drive
    is weighted (see :func:`oscopt.dynamics.phase_velocity`).
    """

    kind: str
    n: int
    src: np.ndarray
    dst: np.ndarray
    coupling: np.ndarray
    interaction: PhaseInteraction | None
    order: int
    balance: str = "edges"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown problem kind {self.kind!r}; expected one of {KINDS}")
        if self.balance not in ("edges", "degree"):
            raise ValueError(f"balance must be 'edges' or 'degree', got {self.balance!r}")
        if not (len(self.src) == len(self.dst) == len(self.coupling)):
            raise ValueError("src, dst and coupling must have equal length")

    @cached_property
    def incidence(self) -> sp.csr_matrix:
        """``n x m`` signed incidence: +1 at ``src``, -1 at ``dst``."""
        m = len(self.src)
        rows = np.concatenate([self.src, self.dst])
        cols = np.concatenate([np.arange(m), np.arange(m)])
        vals = np.concatenate([np.ones(m), -np.ones(m)])
        return sp.csr_matrix((vals, (rows, cols)), shape=(self.n, m))

    @cached_property
    def weighted_degree(self) -> np.ndarray:
        deg = np.zeros(self.n)
        np.add.at(deg, self.src, self.coupling)
        np.add.at(deg, self.dst, self.coupling)
        return deg

    @property
    def total_coupling(self) -> float:
        return float(self.coupling.sum())

    def coupling_matrix(self) -> np.ndarray:
        j = np.zeros((self.n, self.n))
        j[self.src, self.dst] = self.coupling
        j[self.dst, self.src] = self.coupling
        return j

    @property
    def flat(self) -> bool:
        """True when ``f`` vanishes identically (plain Kuramoto coupling)."""
        return self.interaction is None or self.interaction.is_zero


def maxkcut_network(g: Graph, K: int, sigma: float | None = None, extra=()) -> OscillatorNetwork:
    fi = build_max_k_cut_interaction(K, sigma, extra)
    return OscillatorNetwork("maxkcut", g.n, g.src, g.dst, -g.weights, fi, K)


def tsp_network(D, sigma: float | None = None, normalize: bool = True, extra=()) -> OscillatorNetwork:
    """All-pairs couplings ``J = -D`` (divided by ``max(D)`` when ``normalize``)."""
    D = np.asarray(D, dtype=float)
    n = D.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    d = D[iu, ju]
    if normalize and d.size and d.max() > 0:
        d = d / d.max()
    fi = build_tsp_interaction(n, sigma, extra)
    return OscillatorNetwork("tsp", n, iu.astype(np.intp), ju.astype(np.intp), -d, fi, n)


def hc_network(g: Graph, sigma: float | None = None, nonadjacent_target: float | None = None,
               extra=()) -> OscillatorNetwork:
    fi = build_hc_interaction(g.n, sigma, nonadjacent_target, extra)
    return OscillatorNetwork("hc", g.n, g.src, g.dst, -np.ones(g.m), fi, g.n)


def gp_network(g: Graph, balance: str = "edges") -> OscillatorNetwork:
    return OscillatorNetwork("gp", g.n, g.src, g.dst, np.ones(g.m), None, 2, balance)
