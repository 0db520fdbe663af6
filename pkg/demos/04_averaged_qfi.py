# Averaged QFI over J_x, J_y, J_z as an entanglement witness.

from graphqfim import catalog, f_ave, graph_state_stabilizer
from graphqfim.sun import collective_set, sun_set

print(" n  complete  (n^2+2n)/3   chain   star")
for n in range(2, 7):
    j = collective_set(n)
    vals = [f_ave(graph_state_stabilizer(catalog(name, n)), j) for name in ("complete", "chain", "star")]
    print(f"{n:2d} {vals[0]:9.4f} {(n * n + 2 * n) / 3:10.4f} {vals[1]:7.4f} {vals[2]:6.4f}")

# SU(16) generators see no difference between the six four-vertex classes
ops = sun_set(4, 16, [0, 121, 240, 2], scale=0.5)
for name in ("chain", "star", "triangle_pendant", "ring", "diamond", "complete"):
    rho = graph_state_stabilizer(catalog(name, 4))
    print(f"{name:17s} collective {f_ave(rho, collective_set(4)):.4f}   SU(16) subset {f_ave(rho, ops):.6f}")
