# A Bell measurement on the two-qubit graph state and how much it recovers.

import numpy as np

from graphqfim import DynamicsSpec, bell_basis, catalog, cfim_vs_qfim, computational_basis, graph_state_stabilizer
from graphqfim.measurement import probabilities
from graphqfim.sun import collective_set

rho = graph_state_stabilizer(catalog("complete", 2))
print("Bell probabilities at theta=0:", probabilities(rho, bell_basis()))

for axes in (("x", "y"), ("x", "z"), ("y", "z")):
    spec = DynamicsSpec(collective_set(2, axes), [1e-3, 1e-3])
    bell = cfim_vs_qfim(rho, spec, bell_basis())
    comp = cfim_vs_qfim(rho, spec, computational_basis(2))
    print(
        f"J_{axes[0]}, J_{axes[1]}: |F_c - F| bell={bell['max_abs_difference']:.1e}"
        f" computational={comp['max_abs_difference']:.2f}"
    )
    print("   F =", np.round(bell["qfim"], 4).tolist())
