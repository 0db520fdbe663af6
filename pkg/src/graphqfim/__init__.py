"""Quantum Fisher information of graph states under SU(N) dynamics.

Modules
-------
pauli        phased Pauli strings and stabilizer groups over GF(2)
graphs       graphs, named catalog, composition, graph-state construction
sun          SU(N) generators, spin and Pauli operator families
dynamics     ``U = exp(-i sum theta_k H_k)`` and its parameter generators
metrology    QFIM, Cramer-Rao bound, averaged QFI, neighborhood rules
measurement  POVMs and the classical Fisher information matrix
optimize     seeded particle swarm search for the optimal bound
figures      figure datasets written by ``graphqfim reproduce``
"""

__version__ = "0.1.0"

from .dynamics import (
    DynamicsSpec,
    closed_form_su2,
    evolve,
    param_generators_exact,
    param_generators_fd,
    param_generators_series,
)
from .errors import (
    DegenerateMeasurementError,
    DomainError,
    GraphQfimError,
    OptimizationFailedError,
    ParseError,
    ResourceError,
    SingularQfimError,
    ValidationError,
)
from .graphs import (
    Graph,
    build_graph,
    catalog,
    graph_state_circuit,
    graph_state_stabilizer,
    random_graph,
    sjcr_connect,
    stabilizer_generators,
    topological_number,
)
from .measurement import Povm, bell_basis, cfim, cfim_vs_qfim, computational_basis
from .metrology import (
    QfimResult,
    attainability,
    crb,
    f_ave,
    qfi_single,
    qfim,
    qfim_at,
    qfim_limit,
    qfim_neighborhood_rule,
)
from .optimize import OptResult, PsoConfig, compare_sun_minima, minimize_crb
from .pauli import PauliString, StabilizerGroup
from .sun import OperatorSet, collective_set, local_set, spin_j_set, su_generators, sun_set
