"""Hamiltonian cycle search on a planted cycle and on a star.

Edges between neighbouring tour slots are rewarded.  Pairs without an edge
are not coupled at all, which leaves room for states that pile several nodes
into the same slot; the demo prints what the decoder sees.
"""

import numpy as np

from oscopt import RunConfig, build_graph, solve_hamiltonian
from oscopt.decode import check_hamiltonian, tour_phases
from oscopt.dynamics import simulate
from oscopt.graph import star_graph
from oscopt.network import hc_network

rng = np.random.default_rng(2)
perm = rng.permutation(8)
edges = {tuple(sorted((int(perm[i]), int(perm[(i + 1) % 8])))) for i in range(8)}
edges |= {(0, 4), (1, 6)}
g = build_graph(8, sorted(edges))
cfg = RunConfig(restarts=20, record_phases=False)

out = solve_hamiltonian(g, cfg)
found = sum(t.valid for t in out.trials)
print(f"planted 8-cycle {perm.tolist()} plus chords: best decode {out.best.detail['status']}, "
      f"{out.best.score:g} missing edges, {found}/20 restarts found a cycle")

# Starting exactly on the planted cycle, the dynamics stay there.
start = tour_phases(perm)
r = simulate(hc_network(g), cfg.with_(restarts=1), initial=[start])[0]
order = np.argsort(r.phases)
print(f"started on the planted cycle: stays a {check_hamiltonian(order.tolist(), g)[0]}")

star = solve_hamiltonian(star_graph(5), cfg.with_(restarts=5))
print(f"star with 5 leaves: {star.best.detail['status']} ({star.best.score:g} missing edges)")
