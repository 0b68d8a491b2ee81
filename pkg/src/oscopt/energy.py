"""Lyapunov energies, discrete objectives and descent diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coupling import TWO_PI, eval_f, wrap_angle
from .graph import Graph
from .network import OscillatorNetwork

DEFAULT_MONOTONE_TOL = 1e-6


class FlatZoneError(ValueError):
    """A coupled pair sits too close to a bump center for the gradient identity."""


def mean_phase(phases):
    """Arithmetic mean phase on the branch ``[-pi/2, 3*pi/2)``.

    The cut sits at ``-pi/2``, away from both partition phases 0 and pi, so
    a settled bipartition never straddles it.
    """
    p = np.mod(np.asarray(phases, dtype=float) + math.pi / 2, TWO_PI) - math.pi / 2
    return p.mean(axis=-1)


def lyapunov_energy(phases, net: OscillatorNetwork, c1: float, c_sync: float, c2: float = 1.0):
    """Energy of a phase state (or a batch of states along the last axis).

    Max-K-Cut, TSP and Hamiltonian cycle share::

        E = -(order*c1/2) * sum_{i != j} J_ij cos(dphi_ij + f(dphi_ij))
            - c_sync * sum_i cos(order * phi_i)

    Graph partitioning uses::

        E = -sum_{i != j} J_ij (2*N*c1*cos(mean(phi) - pi/2) + c2*cos(dphi_ij))
            - c_sync * sum_i cos(2 * phi_i)

    Both sums run over ordered pairs; only pairs with nonzero ``J`` are
    visited, each in both orientations.
    """
    phases = np.asarray(phases, dtype=float)
    d_fwd = phases[..., net.src] - phases[..., net.dst]
    d_bwd = -d_fwd
    inject = -c_sync * np.cos(net.order * phases).sum(axis=-1)
    if net.kind == "gp":
        total = 2.0 * net.total_coupling
        bal = -2.0 * net.n * c1 * total * np.cos(mean_phase(phases) - math.pi / 2)
        pair = -c2 * (net.coupling * (np.cos(d_fwd) + np.cos(d_bwd))).sum(axis=-1)
        return bal + pair + inject
    if net.flat:
        both = np.cos(d_fwd) + np.cos(d_bwd)
    else:
        fi = net.interaction
        both = np.cos(d_fwd + eval_f(fi, d_fwd)) + np.cos(d_bwd + eval_f(fi, d_bwd))
    return -(net.order * c1 / 2.0) * (net.coupling * both).sum(axis=-1) + inject


# -- discrete objectives -----------------------------------------------------

def ising_energy(spins, src, dst, J) -> float:
    """``H = -sum_{i<j} J_ij s_i s_j``."""
    s = np.asarray(spins, dtype=float)
    return float(-(np.asarray(J) * s[src] * s[dst]).sum())


def _offset_cosine(diff, K: int) -> np.ndarray:
    """cos(dtheta + f(dtheta)) at exact grid differences, in the sigma -> 0 limit.

    ``diff = (k_i - k_j) mod K``; ``f`` is the bump amplitude
    ``(2m-1)*pi - 2*pi*m/K`` at ``dtheta = 2*pi*m/K`` and 0 at ``m = 0``.
    """
    m = np.mod(diff, K)
    dtheta = TWO_PI * m / K
    f = np.where(m == 0, 0.0, (2 * m - 1) * math.pi - TWO_PI * m / K)
    return np.cos(dtheta + f)


def max_k_cut_hamiltonian(labels, src, dst, J, K: int) -> float:
    """``H = -sum_{i<j} J_ij cos(dtheta_ij + f(dtheta_ij))`` with labels on the K-grid."""
    labels = np.asarray(labels)
    c = _offset_cosine(labels[src] - labels[dst], K)
    return float(-(np.asarray(J) * c).sum())


def _tour_positions(tour) -> np.ndarray:
    tour = np.asarray(tour, dtype=int)
    n = tour.size
    if sorted(tour.tolist()) != list(range(n)):
        raise ValueError(f"tour must be a permutation of 0..{n - 1}")
    pos = np.empty(n, dtype=int)
    pos[tour] = np.arange(n)
    return pos


def objective_value(config, instance, problem: str, K: int | None = None,
                    A: float = 1.0, B: float = 1.0) -> float:
    """Discrete objective of a labelling or tour.

    ``problem`` is one of ``"maxcut"`` (Ising form, labels in {0, 1}),
    ``"maxkcut"`` (labels in 0..K-1), ``"tsp"`` (``instance`` is the distance
    matrix, ``config`` a tour), ``"hc"`` (tour on a graph) or ``"gp"``
    (binary labels; ``A`` and ``B`` weight the balance and cut rewards).
    Lower is better for all of them.
    """
    if problem == "tsp":
        D = np.asarray(instance, dtype=float)
        pos = _tour_positions(config)
        n = pos.size
        iu, ju = np.triu_indices(n, k=1)
        m = np.mod(pos[iu] - pos[ju], n)
        # f_TSP sends adjacent slots to 0 and every other slot to pi.
        c = np.where((m == 1) | (m == n - 1), 1.0, -1.0)
        return float((D[iu, ju] * c).sum())

    g: Graph = instance
    if problem == "hc":
        pos = _tour_positions(config)
        if pos.size != g.n:
            raise ValueError(f"tour has {pos.size} entries for a {g.n}-node graph")
        m = np.mod(pos[g.src] - pos[g.dst], g.n)
        adjacent = (m == 1) | (m == g.n - 1)
        return -float(adjacent.sum())

    labels = np.asarray(config, dtype=int)
    if labels.shape != (g.n,):
        raise ValueError(f"expected {g.n} labels, got shape {labels.shape}")
    if problem == "maxcut":
        if np.any((labels < 0) | (labels > 1)):
            raise ValueError("MaxCut labels must be 0 or 1")
        return ising_energy(1 - 2 * labels, g.src, g.dst, -g.weights)
    if problem == "maxkcut":
        if K is None or K < 2:
            raise ValueError("maxkcut needs K >= 2")
        if np.any((labels < 0) | (labels >= K)):
            raise ValueError(f"labels must lie in 0..{K - 1}")
        return max_k_cut_hamiltonian(labels, g.src, g.dst, -g.weights, K)
    if problem == "gp":
        if np.any((labels < 0) | (labels > 1)):
            raise ValueError("partition labels must be 0 or 1")
        theta = math.pi * labels
        balance = math.cos(theta.mean() - math.pi / 2)
        pair = np.cos(theta[g.src] - theta[g.dst])
        return float(-(g.weights * (A * balance + B * pair)).sum())
    raise ValueError(f"unknown problem {problem!r}")


def discrete_equivalence_gap(labels, net: OscillatorNetwork, c1: float, c_sync: float) -> float:
    """``|E(grid phases) - (order*c1*H(labels) - N*c_sync)|``.

    The factor ``order * c1`` comes from the ordered-pair double count in the
    energy against the ``i < j`` sum in ``H``.
    """
    if net.kind not in ("maxkcut",):
        raise ValueError("the equivalence gap is defined for Max-K-Cut networks")
    labels = np.asarray(labels, dtype=int)
    K = net.order
    phases = TWO_PI * labels / K
    e = float(lyapunov_energy(phases, net, c1, c_sync))
    if K == 2:
        h = ising_energy(1 - 2 * labels, net.src, net.dst, net.coupling)
    else:
        h = max_k_cut_hamiltonian(labels, net.src, net.dst, net.coupling, K)
    return abs(e - (K * c1 * h - net.n * c_sync))


# -- descent diagnostics -----------------------------------------------------

@dataclass
class EnergyTraceReport:
    total_steps: int
    violations: list[tuple[int, float]] = field(default_factory=list)
    max_uptick: float = 0.0

    @property
    def monotone_fraction(self) -> float:
        return 1.0 - len(self.violations) / self.total_steps

    @property
    def monotone(self) -> bool:
        return not self.violations


def check_energy_monotone(trace, tol: float = DEFAULT_MONOTONE_TOL) -> EnergyTraceReport:
    """Flag every recorded interval whose energy rises by more than ``tol``.

    ``trace`` is a sequence of energies, or of ``(t, E)`` pairs.
    """
    e = np.asarray(trace, dtype=float)
    if e.ndim == 2:
        e = e[:, 1]
    if e.size < 2:
        raise ValueError("need at least two energy samples")
    de = np.diff(e)
    bad = np.flatnonzero(de > tol)
    return EnergyTraceReport(
        total_steps=de.size,
        violations=[(int(k) + 1, float(de[k])) for k in bad],
        max_uptick=float(max(de.max(), 0.0)),
    )


def flat_zone_margin(phases, net: OscillatorNetwork) -> float:
    """Smallest distance, in units of sigma, from a coupled pair to a bump center."""
    if net.flat:
        return math.inf
    fi = net.interaction
    phases = np.asarray(phases, dtype=float)
    d = wrap_angle(phases[net.src] - phases[net.dst])
    centers = fi.all_centers()
    dist = np.abs(wrap_angle(d[:, None] - centers[None, :]))
    return float(dist.min() / fi.sigma) if dist.size else math.inf


def gradient_consistency(phases, net: OscillatorNetwork, c1: float, c_sync: float,
                         c2: float = 1.0, h: float = 1e-5, margin: float = 5.0) -> float:
    """Compare a central-difference energy gradient with ``-order * velocity``.

    Returns ``max_i |dE/dphi_i - (-order * v_i)| / max_i |order * v_i|``,
    i.e. the worst component error relative to the gradient's scale.  Every
    coupled pair must sit at least ``margin`` sigmas from every bump center;
    otherwise :class:`FlatZoneError` is raised.
    """
    from .dynamics import phase_velocity

    phases = np.asarray(phases, dtype=float)
    got = flat_zone_margin(phases, net)
    if got < margin:
        raise FlatZoneError(f"a coupled pair is {got:.2f} sigma from a bump center (< {margin})")
    fd = np.empty(net.n)
    for i in range(net.n):
        up = phases.copy()
        dn = phases.copy()
        up[i] += h
        dn[i] -= h
        fd[i] = (lyapunov_energy(up, net, c1, c_sync, c2) - lyapunov_energy(dn, net, c1, c_sync, c2)) / (2 * h)
    analytic = -net.order * phase_velocity(phases, net, c1, c_sync, c2)
    scale = max(np.abs(analytic).max(), 1e-12)
    return float(np.abs(fd - analytic).max() / scale)


def sample_flat_state(net: OscillatorNetwork, rng: np.random.Generator, margin: float = 5.0,
                      candidates: int = 4096, max_restarts: int = 200) -> np.ndarray:
    """Random phases with every coupled pair at least ``margin`` sigmas off-center.

    Nodes are placed one at a time; each draws uniform candidates and keeps
    the first one compatible with the already-placed neighbours.
    """
    n = net.n
    if net.flat:
        return rng.uniform(0.0, TWO_PI, n)
    fi = net.interaction
    centers = fi.all_centers()
    limit = margin * fi.sigma
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for a, b in zip(net.src.tolist(), net.dst.tolist()):
        nbrs[max(a, b)].append((min(a, b), 1 if a > b else -1))
    for _ in range(max_restarts):
        phases = np.empty(n)
        ok = True
        for i in range(n):
            cand = rng.uniform(0.0, TWO_PI, candidates)
            good = np.ones(candidates, dtype=bool)
            for j, sign in nbrs[i]:
                d = sign * (cand - phases[j])
                dist = np.abs(wrap_angle(d[:, None] - centers[None, :])).min(axis=1)
                good &= dist >= limit
            hit = np.flatnonzero(good)
            if hit.size == 0:
                ok = False
                break
            phases[i] = cand[hit[0]]
        if ok:
            return phases
    raise RuntimeError("could not place phases in the flat zones; lower the margin")
