# One parameter: J_y on complete graph states hits the n^2 scaling.

from graphqfim import catalog, graph_state_stabilizer, qfi_single
from graphqfim.sun import collective_spin, gell_mann, spin_j_operators

print(" n   J_x    J_y    J_z   spin-j S_y   lambda_0")
for n in range(2, 7):
    rho = graph_state_stabilizer(catalog("complete", n))
    jx, jy, jz = (qfi_single(rho, collective_spin(n, a)) for a in "xyz")
    sy = qfi_single(rho, spin_j_operators(2**n)[1])
    lam = qfi_single(rho, gell_mann(2**n, 0))
    print(f"{n:2d} {jx:6.2f} {jy:6.2f} {jz:6.2f} {sy:11.3f} {lam:10.4f}")

# J_y reaches n^2, the spin-(2^n-1)/2 operator does better still,
# and a single SU(2^n) generator falls below the shot-noise value n.
