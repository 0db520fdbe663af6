"""POVMs, outcome statistics and the classical Fisher information matrix."""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dynamics import (
    DynamicsSpec,
    assemble_hamiltonian,
    evolve,
    param_generators_exact,
    unitary,
)
from .errors import DegenerateMeasurementError, ParseError, ValidationError
from .metrology import qfim

PSD_TOL = 1e-10
PROB_FLOOR = 1e-12


@dataclass(frozen=True)
class Povm:
    """Positive operators summing to the identity."""

    elements: tuple
    labels: tuple = ()

    def __post_init__(self):
        elems = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if not elems:
            raise ValidationError("a POVM needs at least one element")
        dim = elems[0].shape[0]
        for k, e in enumerate(elems):
            if e.shape != (dim, dim):
                raise ValidationError(f"element {k} has shape {e.shape}, expected {(dim, dim)}")
            if np.max(np.abs(e - e.conj().T)) > PSD_TOL:
                raise ValidationError(f"element {k} is not Hermitian")
            if np.linalg.eigvalsh((e + e.conj().T) / 2)[0] < -PSD_TOL:
                raise ValidationError(f"element {k} is not positive semidefinite")
        if np.max(np.abs(sum(elems) - np.eye(dim))) > PSD_TOL:
            raise ValidationError("POVM elements do not sum to the identity")
        labels = tuple(self.labels) or tuple(str(k) for k in range(len(elems)))
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


@dataclass(frozen=True)
class CfimResult:
    matrix: np.ndarray
    probabilities: np.ndarray
    dropped_outcomes: tuple


def _projector(v):
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def bell_basis():
    """Projectors onto ``(|00>+|11>)``, ``(|00>-|11>)``, ``(|01>+|10>)``,
    ``(|01>-|10>)`` (normalized), in that order."""
    s = 1 / np.sqrt(2)
    vecs = [
        [s, 0, 0, s],
        [s, 0, 0, -s],
        [0, s, s, 0],
        [0, s, -s, 0],
    ]
    return Povm(tuple(_projector(v) for v in vecs), ("psi1", "psi2", "phi1", "phi2"))


def computational_basis(n):
    dim = 1 << n
    elems = []
    for k in range(dim):
        p = np.zeros((dim, dim), dtype=complex)
        p[k, k] = 1
        elems.append(p)
    return Povm(tuple(elems), tuple(format(k, f"0{n}b") for k in range(dim)))


def trivial_povm(dim):
    return Povm((np.eye(dim, dtype=complex),), ("id",))


def probabilities(rho, povm):
    """Born-rule probabilities, clipped at zero and renormalized."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (povm.dim, povm.dim):
        raise ValidationError(f"state has shape {rho.shape}, POVM acts on dim {povm.dim}")
    p = np.array([np.einsum("ij,ji->", e, rho).real for e in povm])
    if p.min() < -1e-12:
        raise ValidationError(f"negative outcome probability {p.min():.3g}")
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if total < PROB_FLOOR:
        raise DegenerateMeasurementError("every outcome has vanishing probability")
    return p / total


def probability_derivatives(rho0, spec, povm, gens=None):
    """``d_j p_m = Tr(Pi_m i U [hgen_j, rho0] U^dag)``, shape ``(d, outcomes)``."""
    if gens is None:
        gens = param_generators_exact(spec)
    u = unitary(assemble_hamiltonian(spec))
    ud = u.conj().T
    out = np.empty((spec.d, len(povm)))
    for j, g in enumerate(gens):
        drho = 1j * u @ (g @ rho0 - rho0 @ g) @ ud
        out[j] = [np.einsum("ij,ji->", e, drho).real for e in povm]
    return out


def probability_derivatives_fd(rho0, spec, povm, eps=1e-5):
    theta = spec.effective_theta
    out = np.empty((spec.d, len(povm)))
    for j in range(spec.d):
        tp = theta.copy()
        tm = theta.copy()
        tp[j] += eps
        tm[j] -= eps
        pp = probabilities(evolve(rho0, DynamicsSpec(spec.operators, tp)), povm)
        pm = probabilities(evolve(rho0, DynamicsSpec(spec.operators, tm)), povm)
        out[j] = (pp - pm) / (2 * eps)
    return out


def cfim(rho0, spec, povm, method="analytic"):
    """Classical Fisher information ``sum_m d_j p_m d_k p_m / p_m``.

    Outcomes with ``p_m < 1e-12`` are left out and listed in
    ``dropped_outcomes``.  ``method="fd"`` uses finite-difference derivatives.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (spec.dim, spec.dim) or povm.dim != spec.dim:
        raise ValidationError("state, dynamics and POVM dimensions must agree")
    p = probabilities(evolve(rho0, spec), povm)
    if method == "analytic":
        dp = probability_derivatives(rho0, spec, povm)
    elif method == "fd":
        dp = probability_derivatives_fd(rho0, spec, povm)
    else:
        raise ValidationError(f"unknown derivative method {method!r}")
    keep = p >= PROB_FLOOR
    if not keep.any():
        raise DegenerateMeasurementError("every outcome has vanishing probability")
    dropped = tuple(int(k) for k in np.flatnonzero(~keep))
    dpk = dp[:, keep]
    f = (dpk / p[keep]) @ dpk.T
    f = (f + f.T) / 2
    return CfimResult(f, p, dropped)


def cfim_vs_qfim(rho0, spec, povm):
    """Compare the CFIM of ``povm`` with the QFIM at the same point.

    Returns a dict with both matrices, their entrywise difference, the
    eigenvalues of ``F - F_c`` (non-negative up to rounding) and the
    ``Tr(F^-1)`` / ``Tr(F_c^-1)`` bounds when defined.
    """
    c = cfim(rho0, spec, povm)
    q = qfim(rho0, param_generators_exact(spec))
    diff = q.matrix - c.matrix
    slack = np.linalg.eigvalsh(diff)

    def _trinv(m):
        s = np.linalg.svd(m, compute_uv=False)
        if s[0] <= 0 or s[-1] <= 1e-10 * s[0]:
            return None
        return float(np.trace(np.linalg.inv(m)))

    return {
        "qfim": q.matrix,
        "cfim": c.matrix,
        "difference": diff,
        "max_abs_difference": float(np.max(np.abs(diff))),
        "slack_eigenvalues": slack,
        "crb_quantum": q.crb_trace,
        "crb_classical": _trinv(c.matrix),
        "probabilities": c.probabilities,
        "dropped_outcomes": c.dropped_outcomes,
    }


# -- POVM file format -----------------------------------------------------
#
# JSON document:
#   {"dim": 4,
#    "elements": [ {"label": "a", "real": [[...]], "imag": [[...]]}, ... ]}
# "real"/"imag" are dim x dim row-major nested lists; "imag" and "label" are
# optional.


def load_povm(path):
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, str(path))
    return povm_from_dict(doc, str(path))


def povm_from_dict(doc, source=None):
    try:
        dim = int(doc["dim"])
        entries = doc["elements"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("POVM document needs integer 'dim' and list 'elements'", None, source)
    elems, labels = [], []
    for k, entry in enumerate(entries):
        try:
            re = np.asarray(entry["real"], dtype=float)
            im = np.asarray(entry.get("imag", np.zeros_like(re)), dtype=float)
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"element {k} needs a numeric 'real' matrix", None, source)
        if re.shape != (dim, dim) or im.shape != (dim, dim):
            raise ParseError(f"element {k} is not {dim}x{dim}", None, source)
        elems.append(re + 1j * im)
        labels.append(str(entry.get("label", k)))
    try:
        return Povm(tuple(elems), tuple(labels))
    except ValidationError as exc:
        raise ParseError(str(exc), None, source)


def povm_to_dict(povm):
    return {
        "dim": povm.dim,
        "elements": [
            {"label": lab, "real": e.real.tolist(), "imag": e.imag.tolist()}
            for lab, e in zip(povm.labels, povm.elements)
        ],
    }


def save_povm(povm, path):
    Path(path).write_text(json.dumps(povm_to_dict(povm), indent=2) + "\n")
