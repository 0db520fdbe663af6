import numpy as np
import pytest
import scipy.linalg

from graphqfim.dynamics import (
    DynamicsSpec,
    assemble_hamiltonian,
    closed_form_su2,
    evolve,
    param_generators_exact,
    param_generators_fd,
    param_generators_series,
    state_derivatives,
    state_derivatives_fd,
    unitary,
)
from graphqfim.errors import DomainError, ValidationError
from graphqfim.graphs import catalog, graph_state_stabilizer
from graphqfim.sun import collective_set, local_set, spin_j_set, sun_set


def _random_spec(rng, n, d):
    N = 1 << n
    idx = rng.choice(N * N - 1, size=d, replace=False)
    ops = sun_set(n, N, idx, scale=0.5)
    theta = rng.normal(size=d)
    theta *= rng.uniform(0, 0.5) / np.linalg.norm(theta)
    return DynamicsSpec(ops, theta)


def test_unitary_matches_expm(rng):
    spec = _random_spec(rng, 2, 3)
    h = assemble_hamiltonian(spec)
    assert np.allclose(unitary(h), scipy.linalg.expm(-1j * h), atol=1e-13)


def test_generators_definition(rng):
    """hgen_j = i (d_j U^dag) U."""
    spec = _random_spec(rng, 2, 2)
    gens = param_generators_exact(spec)
    fd = param_generators_fd(spec)
    for g, f in zip(gens, fd):
        assert np.allclose(g, g.conj().T)
        assert np.allclose(g, f, atol=1e-8)


def test_generator_methods_agree(rng):
    for _ in range(10):
        spec = _random_spec(rng, int(rng.integers(1, 4)), 2)
        ex = param_generators_exact(spec)
        se = param_generators_series(spec)
        for a, b in zip(ex, se):
            assert np.max(np.abs(a - b)) < 1e-12


def test_limit_generators_are_minus_h():
    ops = collective_set(3)
    spec = DynamicsSpec(ops, [0.3, 0.1, 0.2], mode="limit")
    for g, h in zip(param_generators_exact(spec), ops):
        assert np.allclose(g, -h)


def test_commuting_generators_are_minus_h():
    ops = local_set(3, "x")
    spec = DynamicsSpec(ops, [1.1, -0.4, 2.5])
    for g, h in zip(param_generators_exact(spec), ops):
        assert np.allclose(g, -h, atol=1e-12)


@pytest.mark.parametrize("theta", [[0.0, 0.0, 0.0], [1e-6, 0, 2e-6], [0.3, -0.2, 0.4], [1.2, 0.7, -2.0]])
def test_closed_form_su2(theta):
    for ops in (collective_set(3), spin_j_set(2)):
        spec = DynamicsSpec(ops, theta)
        for a, b in zip(closed_form_su2(spec), param_generators_exact(spec)):
            assert np.max(np.abs(a - b)) < 1e-10


def test_closed_form_rejects_non_su2():
    spec = DynamicsSpec(sun_set(2, 4, [0, 1, 2]), [0.1, 0.1, 0.1])
    with pytest.raises(DomainError):
        closed_form_su2(spec)


def test_state_derivatives(rng):
    rho = graph_state_stabilizer(catalog("complete", 3))
    spec = DynamicsSpec(collective_set(3), [0.2, -0.1, 0.3])
    for a, b in zip(state_derivatives(rho, spec), state_derivatives_fd(rho, spec)):
        assert np.max(np.abs(a - b)) < 1e-8


def test_evolve_preserves_purity():
    rho = graph_state_stabilizer(catalog("ring", 4))
    out = evolve(rho, DynamicsSpec(collective_set(4), [0.5, 0.4, -0.3]))
    assert np.isclose(np.trace(out).real, 1)
    assert np.allclose(out @ out, out)


def test_spec_validation():
    with pytest.raises(ValidationError):
        DynamicsSpec(collective_set(2), [0.1, 0.2])
    with pytest.raises(ValidationError):
        DynamicsSpec(collective_set(2), [0.1, 0.2, 0.3], mode="fast")
    with pytest.raises(ValidationError):
        param_generators_series(DynamicsSpec(collective_set(2), [0, 0, 0]), order=-1)
    spec = DynamicsSpec(collective_set(2), [0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        spec.theta[0] = 1.0


def test_hamiltonian_must_be_hermitian():
    from graphqfim.dynamics import eigh_hermitian

    with pytest.raises(DomainError):
        eigh_hermitian(np.array([[0, 1], [0, 0]]))
