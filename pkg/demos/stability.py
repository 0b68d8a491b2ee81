"""How injection strength, coupling strength and step size shape the final phases.

Three short experiments:

1. Injection locking pulls phases onto the K-grid; without it they stay analog.
2. Strong coupling against weak injection lets frustrated graphs park between
   grid points.
3. A step past the explicit-Euler limit produces noise that can be mistaken
   for a physical instability.
"""

import numpy as np

from oscopt import RunConfig, Schedule, euler_step_limit, maxkcut_network, simulate
from oscopt.decode import snap_phases
from oscopt.graph import cycle_graph, mobius_ladder


def spread(net, sched, K, dt=0.01):
    runs = simulate(net, RunConfig(schedule=sched, dt=dt, restarts=10, record_phases=False))
    return np.array([snap_phases(r.phases, K)[1] for r in runs])


c5 = maxkcut_network(cycle_graph(5), 3)
print("5-cycle, K=3, distance to the nearest grid point over 10 seeds")
for label, sched in [("no injection", Schedule(c_sync=0.0)), ("default ramp", Schedule()),
                     ("weak coupling C1=0.2", Schedule.constant(0.2, c_sync=1.0))]:
    d = spread(c5, sched, 3)
    print(f"  {label:22} median {np.median(d):.3f} rad, on grid {int((d < 0.1).sum())}/10")

ladder = maxkcut_network(mobius_ladder(10), 2)
sched = Schedule.constant(100.0, c_sync=1.0)
limit = euler_step_limit(ladder, sched)
print(f"\nBipartite ladder n=10, C1/Csync = 100 (Euler limit dt < {limit:.4f})")
for dt in (0.01, 0.001):
    d = spread(ladder, sched, 2, dt=dt)
    print(f"  dt={dt:<6} on grid {int((d < 0.1).sum())}/10")
