"""Operator factory: SU(N) generators, Pauli and spin operators, embeddings.

Generalized Gell-Mann ordering (0-based), for ``N`` levels:

* indices ``0 .. M-1``: symmetric ``|a><b| + |b><a|`` for ``a < b`` in
  lexicographic order, ``M = N(N-1)/2``;
* indices ``M .. 2M-1``: antisymmetric ``-i|a><b| + i|b><a|``, same pair order;
* indices ``2M .. N^2-2``: diagonal
  ``sqrt(2/(k(k+1))) diag(1, ..., 1, -k, 0, ..., 0)`` for ``k = 1 .. N-1``.

For ``N = 2`` this is ``(sigma_x, sigma_y, sigma_z)`` and for ``N = 4`` it
reproduces the fifteen matrices ``lambda_0 .. lambda_14`` of the standard
SU(4) listing.
"""

import itertools
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from ._config import check_dense
from .errors import ValidationError

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
AXES = ("x", "y", "z")


@dataclass(frozen=True)
class GeneratorBasis:
    """Ordered SU(N) generators plus a record of the block layout."""

    dim: int
    matrices: tuple
    labels: tuple

    @property
    def blocks(self):
        m = self.dim * (self.dim - 1) // 2
        return {
            "symmetric": range(0, m),
            "antisymmetric": range(m, 2 * m),
            "diagonal": range(2 * m, 2 * m + self.dim - 1),
        }

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, k):
        return self.matrices[k]

    def __iter__(self):
        return iter(self.matrices)


@dataclass(frozen=True)
class OperatorSet:
    """Ordered Hermitian operators on ``n_qubits`` qubits."""

    n_qubits: int
    operators: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        ops = tuple(np.asarray(o, dtype=complex) for o in self.operators)
        dim = 1 << self.n_qubits
        for k, o in enumerate(ops):
            if o.shape != (dim, dim):
                raise ValidationError(
                    f"operator {k} has shape {o.shape}, expected {(dim, dim)}"
                )
            if not np.allclose(o, o.conj().T, atol=1e-10):
                raise ValidationError(f"operator {k} is not Hermitian")
        labels = tuple(self.labels) or tuple(f"H{k}" for k in range(len(ops)))
        if len(labels) != len(ops):
            raise ValidationError("one label per operator is required")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return 1 << self.n_qubits

    def __len__(self):
        return len(self.operators)

    def __getitem__(self, k):
        return self.operators[k]

    def __iter__(self):
        return iter(self.operators)

    def scaled(self, factor):
        return OperatorSet(
            self.n_qubits, tuple(factor * o for o in self.operators), self.labels
        )

    def commuting(self, atol=1e-10):
        """True when every pair of operators commutes."""
        for a, b in itertools.combinations(self.operators, 2):
            if not np.allclose(a @ b, b @ a, atol=atol):
                return False
        return True


def _pair_list(N):
    return list(itertools.combinations(range(N), 2))


def gell_mann(N, k):
    """The ``k``-th generator of SU(N) in the module ordering."""
    if N < 2:
        raise ValidationError(f"SU(N) needs N >= 2, got {N}")
    pairs = _pair_list(N)
    m = len(pairs)
    if not 0 <= k < N * N - 1:
        raise ValidationError(f"generator index {k} out of range 0..{N * N - 2}")
    mat = np.zeros((N, N), dtype=complex)
    if k < m:
        a, b = pairs[k]
        mat[a, b] = mat[b, a] = 1
    elif k < 2 * m:
        a, b = pairs[k - m]
        mat[a, b] = -1j
        mat[b, a] = 1j
    else:
        j = k - 2 * m + 1
        mat[np.arange(j), np.arange(j)] = 1
        mat[j, j] = -j
        mat *= np.sqrt(2.0 / (j * (j + 1)))
    return mat


def gell_mann_label(N, k):
    pairs = _pair_list(N)
    m = len(pairs)
    if k < m:
        return f"sym{pairs[k]}"
    if k < 2 * m:
        return f"asym{pairs[k - m]}"
    return f"diag{k - 2 * m + 1}"


def su_generators(N):
    """All ``N**2 - 1`` generators of SU(N) as a :class:`GeneratorBasis`."""
    if not isinstance(N, (int, np.integer)) or N < 2:
        raise ValidationError(f"SU(N) needs an integer N >= 2, got {N!r}")
    mats = tuple(gell_mann(N, k) for k in range(N * N - 1))
    labels = tuple(gell_mann_label(N, k) for k in range(N * N - 1))
    return GeneratorBasis(int(N), mats, labels)


def _kron_all(mats):
    return reduce(np.kron, mats)


def local_pauli(n, qubit, axis, scale=1.0):
    """``scale * sigma^axis`` on ``qubit`` of an ``n``-qubit register."""
    if not 0 <= qubit < n:
        raise ValidationError(f"qubit {qubit} out of range for n={n}")
    check_dense(n)
    mats = [PAULI["i"]] * n
    mats[qubit] = PAULI[axis]
    return scale * _kron_all(mats)


def collective_spin(n, axis):
    """``J_axis = (1/2) sum_j sigma_j^axis`` on ``n`` qubits."""
    if axis not in AXES:
        raise ValidationError(f"axis must be one of {AXES}, got {axis!r}")
    if n < 1:
        raise ValidationError("need at least one qubit")
    return sum(local_pauli(n, q, axis, 0.5) for q in range(n))


def spin_j_operators(dim):
    """Spin-``s`` matrices ``(J_x, J_y, J_z)`` with ``s = (dim - 1)/2``.

    Basis states are ordered ``m = s, s-1, ..., -s``.
    """
    if dim < 2:
        raise ValidationError(f"spin matrices need dim >= 2, got {dim}")
    s = (dim - 1) / 2
    m = s - np.arange(dim)
    # <m+1|J+|m> sits just above the diagonal in this ordering
    plus = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), 1).astype(complex)
    minus = plus.conj().T
    jx = (plus + minus) / 2
    jy = (plus - minus) / 2j
    jz = np.diag(m).astype(complex)
    return jx, jy, jz


def embed(op, offset, n):
    """``I^(offset) (x) op (x) I^(n - offset - m)`` for a ``2**m``-dim ``op``."""
    op = np.asarray(op, dtype=complex)
    d = op.shape[0]
    if op.ndim != 2 or op.shape != (d, d):
        raise ValidationError(f"operator must be square, got shape {op.shape}")
    m = d.bit_length() - 1
    if d < 1 or (1 << m) != d:
        raise ValidationError(f"operator dimension {d} is not a power of two")
    if offset < 0 or offset + m > n:
        raise ValidationError(
            f"{m}-qubit operator at offset {offset} does not fit in {n} qubits"
        )
    check_dense(n)
    left = np.eye(1 << offset, dtype=complex)
    right = np.eye(1 << (n - offset - m), dtype=complex)
    return np.kron(np.kron(left, op), right)


# -- ready-made operator families ----------------------------------------


def collective_set(n, axes=AXES):
    return OperatorSet(n, tuple(collective_spin(n, a) for a in axes), tuple(f"J{a}" for a in axes))


def local_set(n, axis, qubits=None, scale=0.5):
    """``scale * sigma^axis_q`` for each listed qubit (default: all)."""
    qubits = range(n) if qubits is None else qubits
    return OperatorSet(
        n,
        tuple(local_pauli(n, q, axis, scale) for q in qubits),
        tuple(f"{scale:g}*s{axis}_{q}" for q in qubits),
    )


def spin_j_set(n, axes=AXES):
    """Spin-``(2**n - 1)/2`` operators acting on the full ``2**n`` register."""
    ops = dict(zip(AXES, spin_j_operators(1 << n)))
    return OperatorSet(n, tuple(ops[a] for a in axes), tuple(f"S{a}" for a in axes))


def sun_set(n, N, indices, offset=0, scale=1.0):
    """Selected SU(N) generators (times ``scale``) embedded at ``offset``.

    ``N`` must be a power of two no larger than ``2**n``.  With
    ``offset="sliding"`` each operator is the sum of its embeddings over every
    contiguous block of ``log2 N`` qubits, e.g. ``l (x) I + I (x) l`` for SU(4)
    on three qubits.
    """
    if N < 2 or N & (N - 1):
        raise ValidationError(f"N must be a power of two >= 2, got {N}")
    m = N.bit_length() - 1
    if m > n:
        raise ValidationError(f"SU({N}) needs {m} qubits, register has {n}")
    if offset == "sliding":
        offsets = range(n - m + 1)
    elif isinstance(offset, (int, np.integer)):
        offsets = (int(offset),)
    else:
        raise ValidationError(f"offset must be an integer or 'sliding', got {offset!r}")
    ops, labels = [], []
    for k in indices:
        g = scale * gell_mann(N, k)
        ops.append(sum(embed(g, o, n) for o in offsets))
        labels.append(f"SU({N})[{k}]@{offset}")
    return OperatorSet(n, tuple(ops), tuple(labels))
