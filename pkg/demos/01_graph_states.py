# Graph states two ways: stabilizer projectors and the CZ circuit.

import numpy as np

from graphqfim import catalog, graph_state_circuit, graph_state_stabilizer, stabilizer_generators, topological_number

g = catalog("complete", 4)
print("edges:", g.edges)
print("stabilizers:", [str(p) for p in stabilizer_generators(g).generators])
print("4-cliques:", topological_number(g))

rho = graph_state_stabilizer(g)
psi = graph_state_circuit(g)
print("trace, purity:", np.trace(rho).real, np.trace(rho @ rho).real)
print("max |rho - |G><G||:", np.abs(rho - np.outer(psi, psi.conj())).max())

# every stabilizer leaves the state alone
for s in stabilizer_generators(g).generators:
    print(s, np.allclose(s.to_dense() @ psi, psi))

# the six connected four-vertex graphs
for name in ("chain", "star", "triangle_pendant", "ring", "diamond", "complete"):
    h = catalog(name, 4)
    print(f"{name:17s} edges={len(h.edges)} shared neighborhoods={h.duplicate_neighborhoods()}")
