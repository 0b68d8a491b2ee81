"""End-to-end solvers: build a network, integrate restarts, decode, keep the best."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .decode import (check_hamiltonian, decode_partition, decode_tour, independent_sets_from,
                     is_clique, is_independent, partition_report, snap_phases, tour_length)
from .dynamics import RunConfig, RunResult, Schedule, simulate_many
from .graph import Graph, check_distance_matrix, complement, max_degree
from .network import gp_network, hc_network, maxkcut_network, tsp_network


@dataclass(frozen=True)
class Solution:
    """One decoded trial.  ``payload`` is a label array or a tour tuple."""

    payload: object
    score: float
    valid: bool
    discreteness: float
    seed: int
    detail: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TrialSummary:
    seed: int
    score: float
    discreteness: float
    valid: bool
    energy_start: float
    energy_end: float


@dataclass(frozen=True)
class SolveOutcome:
    problem: str
    best: Solution
    trials: tuple[TrialSummary, ...]
    wall_time: float
    runs: tuple[RunResult, ...] = ()

    @property
    def best_run(self) -> RunResult | None:
        for r in self.runs:
            if r.seed == self.best.seed:
                return r
        return None


def _pick(solutions: list[Solution], key) -> Solution:
    # ``key`` is "smaller is better"; ties fall to the lowest seed.
    return min(solutions, key=lambda s: (key(s), s.seed))


def _outcome(problem, solutions, runs, key, t0) -> SolveOutcome:
    trials = tuple(
        TrialSummary(s.seed, s.score, s.discreteness, s.valid,
                     float(r.energies[0]), float(r.energies[-1]))
        for s, r in zip(solutions, runs))
    return SolveOutcome(problem, _pick(solutions, key), trials, time.perf_counter() - t0, tuple(runs))


def default_config(**kw) -> RunConfig:
    return RunConfig(**kw)


def solve_max_k_cut(g: Graph, K: int, cfg: RunConfig | None = None, sigma: float | None = None,
                    keep_runs: bool = True) -> SolveOutcome:
    """Best-of-restarts Max-K-Cut; the score is the weighted cut (edge count when unweighted)."""
    if K < 2:
        raise ValueError(f"K must be >= 2, got {K}")
    cfg = cfg or RunConfig()
    t0 = time.perf_counter()
    net = maxkcut_network(g, K, sigma)
    runs = simulate_many(net, cfg)
    sols = []
    for r in runs:
        d = decode_partition(r.phases, g, K)
        sols.append(Solution(d.labels, d.weighted_cut, True, d.discreteness, r.seed,
                             {"cut_edges": d.cut_edges, "internal_edges": d.internal_edges}))
    return _outcome("maxkcut", sols, runs if keep_runs else [], lambda s: -s.score, t0)


@dataclass(frozen=True)
class ColoringResult:
    """``success`` is False when no proper colouring turned up by ``K = max_degree + 1``."""

    k: int
    coloring: np.ndarray
    success: bool
    internal_edges: int
    attempts: tuple[tuple[int, int], ...]


def chromatic_search(g: Graph, cfg: RunConfig | None = None, k_start: int = 2,
                     sigma: float | None = None) -> ColoringResult:
    """Ascending ``K`` until a best Max-K-Cut labelling has no internal edge.

    Each ``K`` reuses the full restart budget.  ``k_start`` lets callers
    begin at a known lower bound such as a clique size.
    """
    if g.n == 0:
        raise ValueError("graph is empty")
    if g.m == 0:
        return ColoringResult(1, np.zeros(g.n, dtype=int), True, 0, ())
    cfg = cfg or RunConfig()
    top = max_degree(g) + 1
    attempts = []
    best_fail = None
    for K in range(max(2, k_start), top + 1):
        out = solve_max_k_cut(g, K, cfg, sigma, keep_runs=False)
        internal = int(out.best.detail["internal_edges"])
        attempts.append((K, internal))
        if internal == 0:
            labels = np.asarray(out.best.payload)
            assert all(labels[i] != labels[j] for i, j, _ in g.edges), "improper colouring accepted"
            return ColoringResult(K, labels, True, 0, tuple(attempts))
        if best_fail is None or internal < best_fail[1]:
            best_fail = (K, internal, np.asarray(out.best.payload))
    K, internal, labels = best_fail
    return ColoringResult(K, labels, False, internal, tuple(attempts))


def approximate_mis(g: Graph, cfg: RunConfig | None = None, k_values=None,
                    sigma: float | None = None) -> list[int]:
    """Largest edge-free colour class seen during an ascending colouring search.

    ``K`` climbs from 2 as in :func:`chromatic_search`, and every restart of
    every ``K`` contributes its edge-free classes.  The search stops after
    the first ``K`` at which some restart colours the graph properly, or at
    ``max_degree + 1``.  An explicit ``k_values`` runs exactly those values.
    """
    if g.n == 0:
        return []
    if g.m == 0:
        return list(range(g.n))
    cfg = (cfg or RunConfig()).with_(record_phases=False)
    fixed = k_values is not None
    ks = k_values if fixed else range(2, max_degree(g) + 2)
    best: list[int] = [0]
    for K in ks:
        proper = False
        for r in simulate_many(maxkcut_network(g, K, sigma), cfg):
            labels, _ = snap_phases(r.phases, K)
            internal, members = independent_sets_from(labels, g)
            proper |= not any(internal.values())
            if len(members) > len(best):
                best = members
        if proper and not fixed:
            break
    assert is_independent(best, g), "independent set has an internal edge"
    return best


def approximate_max_clique(g: Graph, cfg: RunConfig | None = None, **kw) -> list[int]:
    """Maximum independent set of the complement, checked to be a clique of ``g``."""
    if not g.is_unweighted:
        raise ValueError("max clique expects an unweighted graph")
    clique = approximate_mis(complement(g), cfg, **kw)
    assert is_clique(clique, g), "returned set is not a clique"
    return clique


def solve_tsp(D, cfg: RunConfig | None = None, sigma: float | None = None,
              normalize: bool = True) -> SolveOutcome:
    """Shortest valid tour over restarts; invalid decodes rank after every valid one."""
    D = check_distance_matrix(D)
    if D.shape[0] < 3:
        raise ValueError("TSP needs at least 3 cities")
    cfg = cfg or RunConfig()
    t0 = time.perf_counter()
    net = tsp_network(D, sigma, normalize)
    runs = simulate_many(net, cfg)
    sols = []
    for r in runs:
        d = decode_tour(r.phases)
        sols.append(Solution(d.order, tour_length(d.order, D), d.valid, d.discreteness, r.seed))
    return _outcome("tsp", sols, runs, lambda s: (not s.valid, s.score), t0)


_HC_RANK = {"cycle": 0, "path_only": 1, "neither": 2}


def solve_hamiltonian(g: Graph, cfg: RunConfig | None = None, sigma: float | None = None,
                      nonadjacent_target: float | None = None) -> SolveOutcome:
    """Score is the number of tour-consecutive pairs without an edge."""
    if g.n < 3:
        raise ValueError("Hamiltonian cycle search needs at least 3 nodes")
    cfg = cfg or RunConfig()
    t0 = time.perf_counter()
    net = hc_network(g, sigma, nonadjacent_target)
    runs = simulate_many(net, cfg)
    sols = []
    for r in runs:
        d = decode_tour(r.phases)
        status, missing = check_hamiltonian(d.order, g)
        sols.append(Solution(d.order, float(missing), status == "cycle", d.discreteness, r.seed,
                             {"status": status, "slots_valid": d.valid}))
    return _outcome("hc", sols, runs, lambda s: (_HC_RANK[s.detail["status"]], s.score), t0)


GP_SCHEDULE = Schedule.constant(1.0, c_sync=1.0, c2=0.5)


def solve_graph_partition(g: Graph, cfg: RunConfig | None = None,
                          balance: str = "edges") -> SolveOutcome:
    """Minimum-cut bisection; balanced trials beat unbalanced ones.

    Without an explicit ``cfg`` the balance weight is a constant 1 with cut
    weight 0.5 and injection 1.
    """
    if g.n % 2:
        raise ValueError(f"graph partitioning needs an even node count, got {g.n}")
    cfg = cfg or RunConfig(schedule=GP_SCHEDULE)
    t0 = time.perf_counter()
    net = gp_network(g, balance)
    runs = simulate_many(net, cfg)
    sols = []
    for r in runs:
        labels, disc = snap_phases(r.phases, 2)
        imbalance, cut = partition_report(labels, g)
        sols.append(Solution(labels, float(cut), imbalance == 0, disc, r.seed, {"imbalance": imbalance}))
    return _outcome("gp", sols, runs, lambda s: (s.detail["imbalance"], s.score), t0)
