# Searching theta for the smallest Tr(F^-1) with a seeded particle swarm.

from graphqfim import PsoConfig, catalog, compare_sun_minima, graph_state_stabilizer
from graphqfim.figures import fig5_families

cfg = PsoConfig(swarm_size=30, iterations=80, bounds=[(-0.5, 0.5)], seed=0)

for n in (2, 3):
    rho = graph_state_stabilizer(catalog("complete", n))
    rep = compare_sun_minima(rho, fig5_families(n), cfg)
    print(f"n={n}")
    for e in rep["entries"]:
        print(f"  {e['family']}: {e['best_value']:.6f} at {[round(t, 4) for t in e['best_theta']]}")
    for v in rep["verdicts"]:
        print(f"  min {v['lhs']} <= min {v['rhs']}: {v['holds']}")
