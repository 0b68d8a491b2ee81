"""Colouring, independent sets and cliques from repeated Max-K-Cut runs.

Colouring climbs K until a labelling has no edge inside any class.  Every
edge-free class along the way is an independent set, and the largest one is
the approximate maximum independent set.  Cliques are independent sets of the
complement graph.
"""

from oscopt import RunConfig, approximate_max_clique, approximate_mis, chromatic_search
from oscopt.graph import complete_graph, cycle_graph, petersen_graph, random_graph
from oscopt.oracle import exact_chromatic, exact_mis

cfg = RunConfig(restarts=10, record_phases=False)

print("Chromatic number by ascending K")
for name, g in [("triangle", complete_graph(3)), ("5-cycle", cycle_graph(5)), ("Petersen", petersen_graph())]:
    res = chromatic_search(g, cfg)
    tried = ", ".join(f"K={k}: {bad} internal" for k, bad in res.attempts)
    print(f"  {name:9} found {res.k} (exact {exact_chromatic(g)[0]})   [{tried}]")

g = random_graph(12, 0.3, 7)
mis = approximate_mis(g, cfg)
print(f"\nRandom graph with {g.n} nodes and {g.m} edges")
print(f"  independent set {mis} of size {len(mis)}, exact maximum {exact_mis(g)[0]}")

dense = random_graph(10, 0.7, 3)
clique = approximate_max_clique(dense, cfg)
print(f"  clique in a denser graph ({dense.m} edges): {clique}")
