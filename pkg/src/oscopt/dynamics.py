"""Fixed-step integration of the coupled phase dynamics.

For Max-K-Cut, TSP and Hamiltonian cycle networks::

    dphi_i/dt = -C1(t) * sum_j J_ij sin(dphi_ij + f(dphi_ij)) - Csync * sin(order * phi_i)

with ``C1(t)`` ramped linearly from ``c1_start`` to ``A`` over the horizon.
Graph partitioning uses the mean-phase balance drive; see
:func:`phase_velocity`.

All routines accept a single state of shape ``(n,)`` or a batch of shape
``(R, n)``; restarts are integrated as one batch.  Per-row results do not
depend on the batch size, so a seed reproduces bit-for-bit whether it runs
alone or with others.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .coupling import TWO_PI, eval_f
from .energy import lyapunov_energy, mean_phase
from .network import OscillatorNetwork

METHODS = ("euler", "rk4")


class IntegrationError(FloatingPointError):
    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"non-finite phase at step {step}; reduce dt")


@dataclass(frozen=True)
class Schedule:
    """Coupling and injection strengths over one run.

    ``C1(t) = c1_start + t * (anneal_a - c1_start) / cycles``; set
    ``anneal_a == c1_start`` for constant coupling.  ``c2`` is only used by
    graph partitioning.
    """

    c1_start: float = 1.0
    anneal_a: float = 10.0
    cycles: float = 100.0
    c_sync: float = 1.0
    c2: float = 1.0
    ratio_ceiling: float = 70.0

    def __post_init__(self):
        if self.cycles <= 0:
            raise ValueError(f"horizon must be positive, got {self.cycles}")
        if self.c_sync < 0:
            raise ValueError(f"c_sync must be >= 0, got {self.c_sync}")
        peak = max(self.c1_start, self.anneal_a)
        if self.c_sync > 0 and peak / self.c_sync > self.ratio_ceiling:
            warnings.warn(
                f"C1/Csync reaches {peak / self.c_sync:.3g}, above {self.ratio_ceiling:g}; "
                "phase clusters are likely to destabilize", RuntimeWarning, stacklevel=3)

    @classmethod
    def constant(cls, c1: float, **kw) -> "Schedule":
        return cls(c1_start=c1, anneal_a=c1, **kw)

    def c1(self, t: float) -> float:
        return self.c1_start + t * (self.anneal_a - self.c1_start) / self.cycles


@dataclass(frozen=True)
class RunConfig:
    schedule: Schedule = field(default_factory=Schedule)
    dt: float = 0.01
    method: str = "euler"
    record_interval: float = 0.1
    record_phases: bool = True
    seed: int = 0
    restarts: int = 20
    noise: float = 0.0
    workers: int | None = None

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be >= 1, got {self.restarts}")
        if self.noise < 0:
            raise ValueError(f"noise must be >= 0, got {self.noise}")

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)

    @property
    def seeds(self) -> list[int]:
        return [self.seed + r for r in range(self.restarts)]


@dataclass
class RunResult:
    phases: np.ndarray
    t: float
    times: np.ndarray
    energies: np.ndarray
    c1: np.ndarray
    phase_trace: np.ndarray | None
    step_count: int
    seed: int

    @property
    def energy_trace(self) -> np.ndarray:
        """``(records, 2)`` array of ``(t, E)`` pairs."""
        return np.column_stack([self.times, self.energies])


def wrap_phases(phases):
    out = np.mod(phases, TWO_PI)
    # mod can round a tiny negative up to exactly 2*pi
    out[out >= TWO_PI] = 0.0
    return out


def phase_velocity(phases, net: OscillatorNetwork, c1: float, c_sync: float, c2: float = 1.0):
    """Right-hand side of the phase ODE.

    For ``net.kind == "gp"``::

        dphi_i/dt = -W_i * 2*c1*sin(mean(phi) - pi/2) - c2 * sum_j J_ij sin(dphi_ij)
                    - c_sync * sin(2 * phi_i)

    where ``W_i`` is the total coupling ``sum_{k<l} J_kl`` when
    ``net.balance == "edges"`` (the negative half-gradient of the partition
    energy) or node ``i``'s weighted degree when ``net.balance == "degree"``.
    """
    phases = np.asarray(phases, dtype=float)
    if phases.shape[-1] != net.n:
        raise ValueError(f"expected {net.n} phases, got shape {phases.shape}")
    batched = phases.ndim == 2
    d = phases[..., net.src] - phases[..., net.dst]
    if net.kind == "gp":
        s = np.sin(d)
    elif net.flat:
        s = np.sin(d)
    else:
        s = np.sin(d + eval_f(net.interaction, d))
    flow = net.coupling * s
    # node i receives +flow for pairs (i, j) and -flow for pairs (j, i) by oddness
    pair = net.incidence @ (flow.T if batched else flow)
    if batched:
        pair = pair.T
    inject = c_sync * np.sin(net.order * phases)
    if net.kind == "gp":
        weight = net.total_coupling if net.balance == "edges" else net.weighted_degree
        drive = 2.0 * c1 * np.sin(mean_phase(phases) - math.pi / 2)
        if batched:
            drive = drive[:, None]
        return -weight * drive - c2 * pair - inject
    return -c1 * pair - inject


def _velocity(phases, net, t, sched: Schedule):
    return phase_velocity(phases, net, sched.c1(t), sched.c_sync, sched.c2)


def step(phases, t: float, net: OscillatorNetwork, sched: Schedule, dt: float,
         method: str = "euler", step_index: int = 0):
    """Advance by ``dt``; ``C1`` is held at its value at the step's start."""
    c1 = sched.c1(t)

    def v(p):
        return phase_velocity(p, net, c1, sched.c_sync, sched.c2)

    if method == "euler":
        new = phases + dt * v(phases)
    elif method == "rk4":
        k1 = v(phases)
        k2 = v(phases + 0.5 * dt * k1)
        k3 = v(phases + 0.5 * dt * k2)
        k4 = v(phases + dt * k3)
        new = phases + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not np.all(np.isfinite(new)):
        raise IntegrationError(step_index)
    return wrap_phases(new)


def euler_step_limit(net: OscillatorNetwork, sched: Schedule) -> float:
    """Largest Euler step the linearised dynamics tolerate, ignoring ``f'``.

    The Jacobian's spectral radius is bounded by twice the largest
    Gershgorin row sum, ``2*C1*max_i sum_j |J_ij|`` plus ``order*Csync``
    (the partition drive adds ``2*C1*|W|``), and explicit Euler needs
    ``dt * rho < 2``.  Steep bump flanks make the true limit smaller.
    """
    c1 = max(abs(sched.c1_start), abs(sched.anneal_a))
    deg = np.zeros(net.n)
    np.add.at(deg, net.src, np.abs(net.coupling))
    np.add.at(deg, net.dst, np.abs(net.coupling))
    row = float(deg.max()) if net.n else 0.0
    if net.kind == "gp":
        weight = abs(net.total_coupling) if net.balance == "edges" else float(np.abs(net.weighted_degree).max())
        rho = 2.0 * c1 * weight + 2.0 * sched.c2 * row + 2.0 * sched.c_sync
    else:
        rho = 2.0 * c1 * row + net.order * sched.c_sync
    return math.inf if rho == 0 else 2.0 / rho


def initial_phases(seed: int, n: int) -> np.ndarray:
    return np.random.default_rng(seed).uniform(0.0, TWO_PI, n)


def simulate(net: OscillatorNetwork, cfg: RunConfig, seeds=None, initial=None) -> list[RunResult]:
    """Integrate one trajectory per seed, batched.

    ``initial`` overrides the seeded uniform initial phases (shape
    ``(len(seeds), n)``).  Energies are recorded at ``t = 0``, every
    ``record_interval`` and at the horizon.
    """
    seeds = list(cfg.seeds if seeds is None else seeds)
    sched = cfg.schedule
    if cfg.method == "euler":
        limit = euler_step_limit(net, sched)
        if cfg.dt > limit:
            warnings.warn(f"dt={cfg.dt:g} exceeds the Euler stability limit {limit:.3g} for this network "
                          "and schedule; results may be numerical noise", RuntimeWarning, stacklevel=2)
    n_steps = max(1, int(round(sched.cycles / cfg.dt)))
    stride = max(1, int(round(cfg.record_interval / cfg.dt)))
    record_at = sorted(set(range(0, n_steps + 1, stride)) | {n_steps})

    if initial is None:
        phases = np.stack([initial_phases(s, net.n) for s in seeds]) if net.n else np.zeros((len(seeds), 0))
    else:
        phases = wrap_phases(np.array(initial, dtype=float).reshape(len(seeds), net.n))
    noise_rngs = [np.random.default_rng([s, 1]) for s in seeds] if cfg.noise > 0 else None

    times, energies, c1s, snaps = [], [], [], []

    def record(k, p):
        t = k * cfg.dt
        c1 = sched.c1(t)
        times.append(t)
        c1s.append(c1)
        energies.append(np.atleast_1d(lyapunov_energy(p, net, c1, sched.c_sync, sched.c2)))
        if cfg.record_phases:
            snaps.append(p.copy())

    next_rec = 0
    for k in range(n_steps + 1):
        if next_rec < len(record_at) and record_at[next_rec] == k:
            record(k, phases)
            next_rec += 1
        if k == n_steps:
            break
        phases = step(phases, k * cfg.dt, net, sched, cfg.dt, cfg.method, k)
        if noise_rngs is not None:
            kick = np.stack([r.normal(0.0, 1.0, net.n) for r in noise_rngs])
            phases = wrap_phases(phases + cfg.noise * math.sqrt(cfg.dt) * kick)

    times_a = np.array(times)
    c1_a = np.array(c1s)
    e_a = np.stack(energies, axis=1)  # (R, records)
    snap_a = np.stack(snaps, axis=1) if cfg.record_phases else None
    return [
        RunResult(
            phases=phases[r].copy(), t=n_steps * cfg.dt, times=times_a, energies=e_a[r],
            c1=c1_a, phase_trace=None if snap_a is None else snap_a[r], step_count=n_steps,
            seed=int(s))
        for r, s in enumerate(seeds)
    ]


def _worker_count(cfg: RunConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    try:
        return max(1, int(os.environ.get("OSC_OPT_THREADS", "1")))
    except ValueError:
        return 1


def simulate_many(net: OscillatorNetwork, cfg: RunConfig, seeds=None) -> list[RunResult]:
    """Like :func:`simulate`, split across ``OSC_OPT_THREADS`` worker threads."""
    seeds = list(cfg.seeds if seeds is None else seeds)
    workers = min(_worker_count(cfg), len(seeds))
    if workers <= 1:
        return simulate(net, cfg, seeds)
    chunks = [seeds[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(workers) as pool:
        parts = list(pool.map(lambda c: simulate(net, cfg, c), chunks))
    by_seed = {r.seed: r for part in parts for r in part}
    return [by_seed[s] for s in seeds]


def run(net: OscillatorNetwork, cfg: RunConfig, seed: int | None = None) -> RunResult:
    """Single trajectory from ``seed`` (default ``cfg.seed``)."""
    return simulate(net, cfg, [cfg.seed if seed is None else seed])[0]
