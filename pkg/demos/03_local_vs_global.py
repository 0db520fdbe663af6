# Three parameters on the three-qubit complete graph state.

import numpy as np

from graphqfim import DynamicsSpec, catalog, graph_state_stabilizer, qfim_at, qfim_limit
from graphqfim.metrology import qfim_neighborhood_rule, search_commuting_sets
from graphqfim.sun import collective_set, local_set, sun_set

g = catalog("complete", 3)
rho = graph_state_stabilizer(g)

# local sigma_x / 2 on each qubit: commuting, theta does not matter
for theta in ([0.0, 0.0, 0.0], [0.9, -0.4, 2.0]):
    res = qfim_at(rho, DynamicsSpec(local_set(3, "x"), theta))
    print("local x", theta, "Tr(F^-1) =", round(res.crb_trace, 12))

# the same matrices straight from the graph
for axis in "xyz":
    print(axis, qfim_neighborhood_rule(g, axis).tolist())

# collective spins, theta -> 0
res = qfim_limit(rho, collective_set(3))
print("collective limit F =", np.round(res.matrix, 12).tolist(), "Tr(F^-1) =", res.crb_trace)

# away from zero the bound moves
for b in (0.1, 0.5, 1.0):
    res = qfim_at(rho, DynamicsSpec(collective_set(3), b * np.array([1, 1, 1]) / np.sqrt(3)))
    print(f"|theta|={b}: Tr(F^-1) = {res.crb_trace:.6f}")

# commuting SU(4) and SU(8) triples (generators halved)
for N, offset, target in ((4, "sliding", 11 / 3), (8, 0, 12.0)):
    found = search_commuting_sets(rho, 3, N, offset=offset, target=target)
    values = sorted({round(h["crb"], 6) for h in found["hits"]})
    print(f"SU({N}) commuting triples: {len(found['hits'])}, values {values[:5]}..., match {found['match']}")

# the sliding triple keeps its value for any theta
ops = sun_set(3, 4, [12, 13, 14], offset="sliding", scale=0.5)
print([round(qfim_at(rho, DynamicsSpec(ops, t)).crb_trace, 12) for t in np.random.default_rng(0).normal(size=(3, 3))])
