"""Coupled phase oscillators as heuristic solvers for graph problems.

The usual entry points are re-exported here; the submodules hold the rest.
"""

from .coupling import PhaseInteraction, BumpSpec, eval_f, quadrature_split
from .decode import decode_partition, decode_tour, snap_phases, tour_length, check_hamiltonian
from .dynamics import RunConfig, RunResult, Schedule, euler_step_limit, phase_velocity, run, simulate
from .energy import lyapunov_energy, objective_value, check_energy_monotone, gradient_consistency
from .graph import Graph, GraphError, build_graph, complement, mobius_ladder, random_graph
from .network import OscillatorNetwork, maxkcut_network, tsp_network, hc_network, gp_network
from .oracle import OracleBudgetError
from .problems import (SolveOutcome, solve_max_k_cut, chromatic_search, approximate_mis,
                       approximate_max_clique, solve_tsp, solve_hamiltonian, solve_graph_partition)

__version__ = "0.1.0"
