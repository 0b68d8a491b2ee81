"""Balanced two-way partitioning.

The mean phase is pushed toward pi/2, which is where a balanced {0, pi}
split puts it, while the pair term pulls neighbours into the same half.
"""

from oscopt import solve_graph_partition
from oscopt.graph import complete_graph, cycle_graph, disjoint_union, random_graph
from oscopt.oracle import exact_balanced_partition

cases = [("4-cycle", cycle_graph(4)), ("K4", complete_graph(4)),
         ("two triangles", disjoint_union(complete_graph(3), complete_graph(3))),
         ("random n=12", random_graph(12, 0.5, 1))]
for name, g in cases:
    best = solve_graph_partition(g).best
    exact, _ = exact_balanced_partition(g)
    print(f"{name:14} cut {best.score:g} (exact {exact}), imbalance {best.detail['imbalance']}, "
          f"sides {best.payload.tolist()}")
