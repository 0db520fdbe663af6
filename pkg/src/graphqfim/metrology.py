"""Quantum Fisher information for pure probe states.

Dense routes (:func:`qfim`, :func:`qfim_limit`, :func:`qfi_single`,
:func:`f_ave`) work on density matrices.  The neighborhood rules work on the
graph alone, through exact stabilizer-group membership.
"""

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg

from .dynamics import (
    DynamicsSpec,
    ParamGenerators,
    assemble_hamiltonian,
    param_generators_exact,
    unitary,
)
from .errors import DomainError, SingularQfimError, ValidationError
from .graphs import stabilizer_generators
from .pauli import PauliString, expectation_in_group
from .sun import AXES, OperatorSet

PURITY_TOL = 1e-8
RANK_RTOL = 1e-10


@dataclass(frozen=True)
class QfimResult:
    """A QFIM with its invertibility diagnostics.

    ``crb_trace`` is ``Tr(F^-1)`` and is ``None`` exactly when the matrix is
    singular; ``attainability`` is ``max_{j<k} |Tr(rho0 [hgen_j, hgen_k])|``
    when generators were available.
    """

    matrix: np.ndarray
    rank: int
    invertible: bool
    crb_trace: Optional[float]
    attainability: Optional[float] = None

    @property
    def d(self):
        return self.matrix.shape[0]

    def null_space(self):
        return scipy.linalg.null_space(self.matrix, rcond=RANK_RTOL)


def _check_pure(rho):
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValidationError(f"density matrix must be square, got {rho.shape}")
    if abs(np.trace(rho) - 1) > PURITY_TOL:
        raise DomainError("density matrix does not have unit trace")
    if np.max(np.abs(rho @ rho - rho)) > PURITY_TOL:
        raise DomainError("the QFIM formula used here requires a pure state")
    return rho


def _expect(op, rho):
    # Tr(op rho) without forming the product
    return np.einsum("ij,ji->", op, rho)


def covariance_matrix(rho, ops):
    """``Re Tr(A_j A_k rho) - Tr(A_j rho) Tr(A_k rho)``."""
    means = np.array([_expect(a, rho) for a in ops])
    d = len(ops)
    cov = np.empty((d, d))
    for j in range(d):
        aj_rho = ops[j] @ rho
        for k in range(j, d):
            second = _expect(ops[k], aj_rho)
            cov[j, k] = cov[k, j] = (second - means[j] * means[k]).real
    return cov


def analyze(matrix, attainability=None):
    """Wrap a QFIM with rank, invertibility and ``Tr(F^-1)``."""
    f = np.asarray(matrix, dtype=float)
    f = (f + f.T) / 2
    s = np.linalg.svd(f, compute_uv=False)
    top = s[0] if s.size else 0.0
    rank = int(np.sum(s > RANK_RTOL * top)) if top > 0 else 0
    invertible = rank == f.shape[0] and top > 0
    crb_trace = float(np.trace(np.linalg.inv(f))) if invertible else None
    f.setflags(write=False)
    return QfimResult(f, rank, invertible, crb_trace, attainability)


def _max_commutator_expectation(rho, mats):
    worst = 0.0
    for a, b in itertools.combinations(mats, 2):
        val = _expect(a @ b - b @ a, rho)
        worst = max(worst, abs(val))
    return float(worst)


def qfim(rho0, gens):
    """``F_jk = 4 (Re Tr(hgen_j hgen_k rho0) - Tr(hgen_j rho0) Tr(hgen_k rho0))``."""
    rho0 = _check_pure(rho0)
    mats = list(gens)
    if mats and mats[0].shape != rho0.shape:
        raise ValidationError("generator and state dimensions differ")
    f = 4 * covariance_matrix(rho0, mats)
    return analyze(f, _max_commutator_expectation(rho0, mats))


def qfim_at(rho0, spec):
    """QFIM of ``spec`` using the exact eigenbasis generators."""
    return qfim(rho0, param_generators_exact(spec))


def qfim_limit(rho0, ops):
    """QFIM in the limit ``theta -> 0``: the covariance of the bare ``H_k``."""
    rho0 = _check_pure(rho0)
    mats = list(ops)
    f = 4 * covariance_matrix(rho0, mats)
    return analyze(f, _max_commutator_expectation(rho0, mats))


def qfi_single(rho0, h):
    """``4 (Tr(rho0 H^2) - Tr(rho0 H)^2)`` for one Hermitian generator."""
    rho0 = _check_pure(rho0)
    h = np.asarray(h, dtype=complex)
    mean = _expect(h, rho0).real
    second = _expect(h @ h, rho0).real
    return float(max(4 * (second - mean**2), 0.0))


def crb(result, mu=1):
    """``Tr(F^-1) / mu``; raises :class:`SingularQfimError` for singular F."""
    if mu <= 0:
        raise ValidationError("repetition count must be positive")
    if not isinstance(result, QfimResult):
        result = analyze(result)
    if not result.invertible:
        raise SingularQfimError(result.rank, result.null_space())
    return result.crb_trace / mu


def attainability(rho0, gens):
    """``max_{j<k} |Tr(rho0 [hgen_j, hgen_k])|``; zero certifies saturability."""
    rho0 = np.asarray(rho0, dtype=complex)
    return _max_commutator_expectation(rho0, list(gens))


def weak_commutativity_matrix(rho0, gens):
    """``Im Tr(rho0 hgen_j hgen_k)`` for all pairs (half the commutator
    expectation up to a factor ``i``)."""
    rho0 = np.asarray(rho0, dtype=complex)
    mats = list(gens)
    d = len(mats)
    out = np.zeros((d, d))
    for j in range(d):
        for k in range(d):
            out[j, k] = _expect(mats[j] @ mats[k], rho0).imag
    return out


def f_ave(rho0, ops):
    """Averaged QFI ``(4/|ops|) sum_j Var(H_j)``."""
    mats = list(ops)
    if not mats:
        raise ValidationError("need at least one operator")
    rho0 = _check_pure(rho0)
    total = 0.0
    for h in mats:
        mean = _expect(h, rho0).real
        total += _expect(h @ h, rho0).real - mean**2
    return 4 * total / len(mats)


def sld_pure(rho_theta, drho):
    """Symmetric logarithmic derivatives ``L_j = 2 d_j rho`` of a pure state."""
    rho_theta = _check_pure(rho_theta)
    out = []
    for d in drho:
        d = np.asarray(d, dtype=complex)
        if d.shape != rho_theta.shape:
            raise ValidationError("derivative and state dimensions differ")
        out.append(2 * d)
    return out


def qfim_from_sld(rho_theta, slds):
    """``F_jk = Re Tr(rho L_j L_k)``."""
    rho_theta = np.asarray(rho_theta, dtype=complex)
    d = len(slds)
    f = np.empty((d, d))
    for j in range(d):
        for k in range(j, d):
            f[j, k] = f[k, j] = _expect(slds[j] @ slds[k], rho_theta).real
    return f


def qfim_state_derivative(psi0, spec, eps=1e-5):
    """``4 Re(<d_j psi|d_k psi> - <d_j psi|psi><psi|d_k psi>)`` with the
    state derivatives taken by central finite differences."""
    psi0 = np.asarray(psi0, dtype=complex)
    theta = spec.effective_theta
    psi = unitary(assemble_hamiltonian(spec.with_theta(theta))) @ psi0
    dpsi = []
    for j in range(spec.d):
        tp = theta.copy()
        tm = theta.copy()
        tp[j] += eps
        tm[j] -= eps
        up = unitary(assemble_hamiltonian(DynamicsSpec(spec.operators, tp)))
        um = unitary(assemble_hamiltonian(DynamicsSpec(spec.operators, tm)))
        dpsi.append((up @ psi0 - um @ psi0) / (2 * eps))
    d = spec.d
    f = np.empty((d, d))
    for j in range(d):
        for k in range(j, d):
            val = np.vdot(dpsi[j], dpsi[k]) - np.vdot(dpsi[j], psi) * np.vdot(psi, dpsi[k])
            f[j, k] = f[k, j] = 4 * val.real
    return f


# -- closed forms on graphs ------------------------------------------------


def _pair_string(n, j, k, axis):
    p = PauliString.single(n, j, axis.upper())
    return p * PauliString.single(n, k, axis.upper())


def qfim_local_pauli_exact(g, axis):
    """Local ``sigma/2`` QFIM from exact stabilizer expectations.

    ``F_jk = <s_j s_k> - <s_j><s_k>``, every expectation being a group
    membership test rather than a dense trace.
    """
    if axis not in AXES:
        raise ValidationError(f"axis must be one of {AXES}")
    group = stabilizer_generators(g)
    n = g.n
    means = [expectation_in_group(PauliString.single(n, j, axis.upper()), group) for j in range(n)]
    f = np.zeros((n, n))
    for j in range(n):
        for k in range(j, n):
            second = 1 if j == k else expectation_in_group(_pair_string(n, j, k, axis), group)
            f[j, k] = f[k, j] = second - means[j] * means[k]
    return f


def qfim_neighborhood_rule(g, axis):
    """0/1 QFIM of local ``sigma^axis / 2`` dynamics read off the graph.

    * x: ``F_jk = 1`` iff ``N(j) == N(k)``;
    * y: ``F_jk = 1`` iff ``N(j) ^ {k} == N(k) ^ {j}`` (symmetric difference,
      i.e. ``j, k`` adjacent with identical remaining neighbors);
    * z: identity.
    """
    if axis not in AXES:
        raise ValidationError(f"axis must be one of {AXES}")
    if not g.no_isolated:
        raise DomainError(f"graph has isolated vertices {list(g.isolated)}")
    n = g.n
    nb = g.neighborhoods
    f = np.eye(n)
    if axis == "z":
        return f
    for j, k in itertools.combinations(range(n), 2):
        if axis == "x":
            hit = nb[j] == nb[k]
        else:
            hit = nb[j] ^ {k} == nb[k] ^ {j}
        if hit:
            f[j, k] = f[k, j] = 1.0
    return f


def _check_partition(partition, n):
    seen = set()
    blocks = []
    for block in partition:
        block = [int(v) for v in block]
        if not block:
            raise ValidationError("partition blocks must be non-empty")
        for v in block:
            if not 0 <= v < n:
                raise ValidationError(f"vertex {v} out of range")
            if v in seen:
                raise ValidationError(f"vertex {v} appears in more than one block")
            seen.add(v)
        blocks.append(block)
    return blocks


def qfim_grouped(g, partition, axis="x"):
    """QFIM when parameter ``j`` drives ``sigma/2`` on every vertex of block
    ``S_j``: the block sums of the single-vertex rule matrix."""
    blocks = _check_partition(partition, g.n)
    f = qfim_neighborhood_rule(g, axis)
    d = len(blocks)
    out = np.empty((d, d))
    for j in range(d):
        for m in range(d):
            out[j, m] = f[np.ix_(blocks[j], blocks[m])].sum()
    return out


def grouped_operators(n, partition, axis="x"):
    """Dense operators ``(1/2) sum_{v in S_j} sigma^axis_v`` matching
    :func:`qfim_grouped`."""
    from .sun import local_pauli

    blocks = _check_partition(partition, n)
    ops = tuple(sum(local_pauli(n, v, axis, 0.5) for v in b) for b in blocks)
    return OperatorSet(n, ops, tuple(f"S{j}" for j in range(len(blocks))))


# -- perturbative reference for the three-qubit complete graph --------------


def analytic_su2_qfim_b(b, polar, azimuth):
    """Small-``B`` QFIM entries for the three-qubit complete graph under
    ``theta = B (sin t cos p, sin t sin p, cos t)`` with collective spins.

    Accurate to second order in ``B``; use as a reference at small ``B`` only.
    """
    st, ct = np.sin(polar), np.cos(polar)
    sp, cp = np.sin(azimuth), np.cos(azimuth)
    q = 3 * b**2 / 4
    f11 = 3 + q * (3 * ct**2 + st**2 * sp**2)
    f22 = 9 + q * (ct**2 + cp**2 * st**2)
    f33 = 3 + q * (2 + np.cos(2 * azimuth)) * st**2
    f12 = -(3 * b / 4) * (4 * ct + b * cp * st**2 * sp)
    f13 = (9 * b**2 / 4) * ct * cp * st
    f23 = -(3 * b / 4) * st * (-4 * cp + b * ct * sp)
    return np.array([[f11, f12, f13], [f12, f22, f23], [f13, f23, f33]])


def spherical_theta(b, polar, azimuth):
    return np.array(
        [
            b * np.sin(polar) * np.cos(azimuth),
            b * np.sin(polar) * np.sin(azimuth),
            b * np.cos(polar),
        ]
    )


# -- commuting generator search ---------------------------------------------


def commuting_triples(ops, size=3, atol=1e-12):
    """All index tuples of ``size`` pairwise-commuting operators in ``ops``."""
    mats = list(ops)
    m = len(mats)
    comm = np.zeros((m, m), dtype=bool)
    for a in range(m):
        for b in range(a, m):
            ok = np.allclose(mats[a] @ mats[b], mats[b] @ mats[a], atol=atol)
            comm[a, b] = comm[b, a] = ok
    out = []
    for combo in itertools.combinations(range(m), size):
        if all(comm[a, b] for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


def search_commuting_sets(rho0, n, N, offset=0, scale=0.5, size=3, target=None, atol=1e-9):
    """Rank every commuting ``size``-subset of SU(N) generators by the limit
    ``Tr(F^-1)`` it gives on ``rho0``.

    Returns a dict with all invertible ``hits`` (``indices``, ``crb``) sorted
    by value, the number of singular subsets, and ``match``: the first subset
    whose value equals ``target`` within ``atol`` (``None`` if no target or no
    match).
    """
    from .sun import su_generators, sun_set

    # commutation is checked after embedding: overlapping blocks can break it
    full = sun_set(n, N, range(len(su_generators(N))), offset=offset, scale=scale)
    hits, singular = [], 0
    for combo in commuting_triples(list(full), size=size):
        res = qfim_limit(rho0, OperatorSet(n, tuple(full[k] for k in combo)))
        if res.invertible:
            hits.append({"indices": list(combo), "crb": res.crb_trace})
        else:
            singular += 1
    hits.sort(key=lambda h: (h["crb"], h["indices"]))
    match = None
    if target is not None:
        for h in hits:
            if abs(h["crb"] - target) <= atol:
                match = h
                break
    return {"hits": hits, "singular": singular, "match": match}
