"""Parameterized unitary dynamics ``U = exp(-i sum_k theta_k H_k)``.

Every route to the parameter generators returns ``hgen_j = i (d_j U^dag) U``,
which equals ``-int_0^1 exp(isH) (d_j H) exp(-isH) ds``.  That sign fixes the
convention for all methods, including the SU(2) closed form.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .sun import OperatorSet

HERMITIAN_ATOL = 1e-10


@dataclass(frozen=True)
class DynamicsSpec:
    """Operators ``H_k`` and parameters ``theta``.

    ``mode="limit"`` means structures are evaluated at ``theta -> 0``
    regardless of the stored ``theta``.
    """

    operators: OperatorSet
    theta: np.ndarray
    mode: str = "general"

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float).reshape(-1)
        if len(theta) != len(self.operators):
            raise ValidationError(
                f"{len(theta)} parameters for {len(self.operators)} operators"
            )
        if self.mode not in ("general", "limit"):
            raise ValidationError(f"mode must be 'general' or 'limit', got {self.mode!r}")
        theta.setflags(write=False)
        object.__setattr__(self, "theta", theta)

    @property
    def d(self):
        return len(self.theta)

    @property
    def dim(self):
        return self.operators.dim

    @property
    def effective_theta(self):
        return np.zeros_like(self.theta) if self.mode == "limit" else self.theta

    def with_theta(self, theta):
        return DynamicsSpec(self.operators, theta, self.mode)


@dataclass(frozen=True)
class ParamGenerators:
    """Hermitian generators ``hgen_j`` and the method that produced them."""

    matrices: tuple
    method: str

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, j):
        return self.matrices[j]

    def __iter__(self):
        return iter(self.matrices)


def _check_hermitian(h, what="matrix"):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValidationError(f"{what} must be square, got shape {h.shape}")
    if np.max(np.abs(h - h.conj().T), initial=0.0) > HERMITIAN_ATOL:
        raise DomainError(f"{what} is not Hermitian")
    return h


def assemble_hamiltonian(spec):
    """``H(theta) = sum_k theta_k H_k``."""
    theta = spec.effective_theta
    h = np.zeros((spec.dim, spec.dim), dtype=complex)
    for t, op in zip(theta, spec.operators):
        h += t * op
    return h


def eigh_hermitian(h):
    h = _check_hermitian(h, "Hamiltonian")
    return np.linalg.eigh((h + h.conj().T) / 2)


def unitary(h):
    """``exp(-iH)`` through the eigendecomposition of Hermitian ``H``."""
    w, v = eigh_hermitian(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def _phi(x):
    """``(exp(ix) - 1)/(ix)`` with its series near zero."""
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape, dtype=complex)
    small = np.abs(x) < 1e-6
    xs = x[small]
    out[small] = 1 + 1j * xs / 2 - xs**2 / 6
    xl = x[~small]
    out[~small] = np.expm1(1j * xl) / (1j * xl)
    return out


def param_generators_exact(spec):
    """Generators from the eigenbasis of ``H(theta)``.

    With ``H = V diag(w) V^dag``:
    ``(V^dag hgen_j V)_ab = -(V^dag H_j V)_ab * phi(w_a - w_b)``.
    """
    w, v = eigh_hermitian(assemble_hamiltonian(spec))
    kernel = _phi(w[:, None] - w[None, :])
    vh = v.conj().T
    mats = []
    for op in spec.operators:
        tilde = -(vh @ op @ v) * kernel
        g = v @ tilde @ vh
        mats.append((g + g.conj().T) / 2)
    return ParamGenerators(tuple(mats), "exact_eigen")


def param_generators_series(spec, order=20, tol=1e-14):
    """Truncated nested-commutator series
    ``-sum_{m=0}^{order} i^m/(m+1)! ad_H^m (H_j)``.

    Summation stops early once a term's max-entry norm drops below ``tol``.
    """
    if order < 0:
        raise ValidationError("series order must be non-negative")
    h = assemble_hamiltonian(spec)
    mats = []
    for op in spec.operators:
        term = op.copy()
        total = term.copy()
        fact = 1.0
        for m in range(1, order + 1):
            term = h @ term - term @ h
            fact *= m + 1
            contrib = (1j**m / fact) * term
            total = total + contrib
            if np.max(np.abs(contrib), initial=0.0) < tol:
                break
        mats.append(-total)
    return ParamGenerators(tuple(mats), f"series({order})")


def _is_su2_triple(ops, atol=1e-10):
    jx, jy, jz = ops
    for a, b, c in ((jx, jy, jz), (jy, jz, jx), (jz, jx, jy)):
        if not np.allclose(a @ b - b @ a, 1j * c, atol=atol):
            return False
    return True


def closed_form_su2(spec):
    """Generators for ``H = theta . (J_x, J_y, J_z)`` in closed form.

    For spin operators ``ad_H^3 = xi^2 ad_H`` with ``xi = |theta|``, which
    sums the series to

        hgen_j = -( J_j + (1 - cos xi)/xi^2 [iH, J_j]
                    + (1 - sin xi / xi)/xi^2 [iH, [iH, J_j]] ).

    The leading minus sign aligns this with :func:`param_generators_exact`.
    """
    ops = spec.operators
    if len(ops) != 3 or not _is_su2_triple(ops.operators):
        raise DomainError("closed form needs operators obeying [J_x, J_y] = i J_z (cyclic)")
    theta = spec.effective_theta
    xi = float(np.linalg.norm(theta))
    h = assemble_hamiltonian(spec)
    if xi < 1e-4:
        c1 = 0.5 - xi**2 / 24
        c2 = 1 / 6 - xi**2 / 120
    else:
        c1 = (1 - np.cos(xi)) / xi**2
        c2 = (1 - np.sin(xi) / xi) / xi**2
    ih = 1j * h
    mats = []
    for op in ops:
        inner = ih @ op - op @ ih
        outer = ih @ inner - inner @ ih
        mats.append(-(op + c1 * inner + c2 * outer))
    return ParamGenerators(tuple(mats), "closed_form_su2")


def param_generators_fd(spec, eps=1e-5):
    """``i (d_j U^dag) U`` by central differences, an independent check."""
    theta = spec.effective_theta
    u = unitary(assemble_hamiltonian(spec.with_theta(theta)))
    mats = []
    for j in range(spec.d):
        tp = theta.copy()
        tm = theta.copy()
        tp[j] += eps
        tm[j] -= eps
        up = unitary(assemble_hamiltonian(DynamicsSpec(spec.operators, tp)))
        um = unitary(assemble_hamiltonian(DynamicsSpec(spec.operators, tm)))
        dudag = (up.conj().T - um.conj().T) / (2 * eps)
        mats.append(1j * dudag @ u)
    return ParamGenerators(tuple(mats), "finite_difference")


def _check_rho(rho0, dim):
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (dim, dim):
        raise ValidationError(f"state has shape {rho0.shape}, expected {(dim, dim)}")
    return rho0


def evolve(rho0, spec):
    """``U rho0 U^dag``."""
    rho0 = _check_rho(rho0, spec.dim)
    u = unitary(assemble_hamiltonian(spec))
    return u @ rho0 @ u.conj().T


def state_derivatives(rho0, spec, gens=None):
    """``d_j rho_theta = i U [hgen_j, rho0] U^dag`` for every parameter."""
    rho0 = _check_rho(rho0, spec.dim)
    if gens is None:
        gens = param_generators_exact(spec)
    u = unitary(assemble_hamiltonian(spec))
    ud = u.conj().T
    return [1j * u @ (g @ rho0 - rho0 @ g) @ ud for g in gens]


def state_derivatives_fd(rho0, spec, eps=1e-5):
    """Central finite differences of ``rho_theta``."""
    theta = spec.effective_theta
    out = []
    for j in range(spec.d):
        tp = theta.copy()
        tm = theta.copy()
        tp[j] += eps
        tm[j] -= eps
        rp = evolve(rho0, DynamicsSpec(spec.operators, tp))
        rm = evolve(rho0, DynamicsSpec(spec.operators, tm))
        out.append((rp - rm) / (2 * eps))
    return out
