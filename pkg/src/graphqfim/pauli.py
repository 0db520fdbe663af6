"""Phased Pauli strings over GF(2) and stabilizer-group membership.

A Pauli string on ``n`` qubits is stored as two ``n``-bit integers (bit ``q``
of ``x``/``z`` describes qubit ``q``) and a phase exponent ``k`` meaning the
overall factor ``i**k``.  Site operators are I, X, Z, Y for
``(x, z) = (0, 0), (1, 0), (0, 1), (1, 1)``, so ``Y`` is the Hermitian Pauli
matrix and a string is Hermitian exactly when its phase is real.

Qubit 0 is the leftmost Kronecker factor of the dense realization.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._config import check_dense
from .errors import DomainError, ValidationError

_PHASES = (1, 1j, -1, -1j)
_SITE = {
    (0, 0): np.eye(2, dtype=complex),
    (1, 0): np.array([[0, 1], [1, 0]], dtype=complex),
    (0, 1): np.array([[1, 0], [0, -1]], dtype=complex),
    (1, 1): np.array([[0, -1j], [1j, 0]], dtype=complex),
}
_LABEL = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}
_FROM_LABEL = {v: k for k, v in _LABEL.items()}


def _popcount(v):
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    """Immutable phased Pauli operator ``i**phase * P_0 (x) P_1 (x) ...``."""

    n: int
    x: int = 0
    z: int = 0
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("qubit count must be non-negative")
        full = (1 << self.n) - 1
        if self.x & ~full or self.z & ~full:
            raise ValidationError("bit vectors do not fit in n qubits")
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n):
        return cls(n)

    @classmethod
    def single(cls, n, qubit, op):
        """One-site operator ``op`` in {"X", "Y", "Z", "I"} on ``qubit``."""
        if not 0 <= qubit < n:
            raise ValidationError(f"qubit {qubit} out of range for n={n}")
        bx, bz = _FROM_LABEL[op.upper()]
        return cls(n, bx << qubit, bz << qubit)

    @classmethod
    def from_label(cls, label):
        """Parse labels like ``"XZZ"``, ``"-iYY"`` or ``"+XI"``."""
        s = label.strip()
        phase = 0
        if s.startswith("-"):
            phase, s = 2, s[1:]
        elif s.startswith("+"):
            s = s[1:]
        if s.startswith("i"):
            phase, s = phase + 1, s[1:]
        x = z = 0
        for q, ch in enumerate(s):
            try:
                bx, bz = _FROM_LABEL[ch.upper()]
            except KeyError:
                raise ValidationError(f"bad Pauli label {label!r}")
            x |= bx << q
            z |= bz << q
        return cls(len(s), x, z, phase)

    # -- properties ------------------------------------------------------

    @property
    def coefficient(self):
        return _PHASES[self.phase]

    @property
    def x_bits(self):
        return np.array([(self.x >> q) & 1 for q in range(self.n)], dtype=np.uint8)

    @property
    def z_bits(self):
        return np.array([(self.z >> q) & 1 for q in range(self.n)], dtype=np.uint8)

    @property
    def weight(self):
        return _popcount(self.x | self.z)

    def is_hermitian(self):
        return self.phase % 2 == 0

    def is_identity(self):
        return self.x == 0 and self.z == 0

    def site(self, q):
        return _LABEL[((self.x >> q) & 1, (self.z >> q) & 1)]

    @property
    def label(self):
        """Pauli label without phase, qubit 0 first."""
        return "".join(self.site(q) for q in range(self.n))

    def __str__(self):
        return ("+", "+i", "-", "-i")[self.phase] + self.label

    def commutes(self, other):
        _check_same_n(self, other)
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def __neg__(self):
        return PauliString(self.n, self.x, self.z, self.phase + 2)

    def __mul__(self, other):
        return multiply(self, other)

    def to_dense(self):
        return to_dense(self)


def _check_same_n(a, b):
    if a.n != b.n:
        raise ValidationError(f"qubit counts differ: {a.n} != {b.n}")


def multiply(a, b):
    """Group product ``a * b`` with exact phase.

    Each string is rewritten as ``i**(k + |x&z|) X^x Z^z``; moving ``Z^za``
    through ``X^xb`` costs ``(-1)**|za & xb|``.
    """
    _check_same_n(a, b)
    x = a.x ^ b.x
    z = a.z ^ b.z
    k = (
        a.phase
        + b.phase
        + _popcount(a.x & a.z)
        + _popcount(b.x & b.z)
        + 2 * _popcount(a.z & b.x)
        - _popcount(x & z)
    )
    return PauliString(a.n, x, z, k)


def to_dense(p, cap=None):
    """Dense ``2**n x 2**n`` matrix of ``p``."""
    check_dense(p.n, cap)
    if p.n == 0:
        return np.array([[p.coefficient]], dtype=complex)
    mats = [_SITE[((p.x >> q) & 1, (p.z >> q) & 1)] for q in range(p.n)]
    return p.coefficient * reduce(np.kron, mats)


class StabilizerGroup:
    """Abelian group generated by independent, commuting Hermitian Pauli strings.

    The constructor row-reduces the generators over GF(2) (each row is the
    ``2n``-bit vector ``x << n | z``) and keeps, for every pivot row, the
    group element it represents with its exact phase.
    """

    def __init__(self, generators):
        generators = tuple(generators)
        if not generators:
            raise ValidationError("a stabilizer group needs at least one generator")
        n = generators[0].n
        for g in generators:
            if g.n != n:
                raise ValidationError("generators act on different qubit counts")
            if not g.is_hermitian():
                raise DomainError(f"generator {g} is not Hermitian")
        for i, a in enumerate(generators):
            for b in generators[i + 1:]:
                if not a.commutes(b):
                    raise DomainError(f"generators {a} and {b} do not commute")
        self.n = n
        self.generators = generators
        self._rows = self._echelon(generators)
        if len(self._rows) != len(generators):
            raise DomainError("generators are not independent")

    def _echelon(self, gens):
        n = self.n
        rows = []  # (pivot bit, bits, element)
        for g in gens:
            bits = (g.x << n) | g.z
            elem = g
            for pivot, rbits, relem in rows:
                if bits >> pivot & 1:
                    bits ^= rbits
                    elem = multiply(relem, elem)
            if bits == 0:
                continue
            pivot = bits.bit_length() - 1
            # keep the table fully reduced
            reduced = []
            for p2, rbits, relem in rows:
                if rbits >> pivot & 1:
                    rbits ^= bits
                    relem = multiply(elem, relem)
                reduced.append((p2, rbits, relem))
            rows = reduced + [(pivot, bits, elem)]
        rows.sort(key=lambda r: -r[0])
        return rows

    @property
    def rank(self):
        return len(self._rows)

    @property
    def tableau(self):
        """Reduced rows as group elements, highest pivot first."""
        return [elem for _, _, elem in self._rows]

    def decompose(self, p):
        """Return the group element with the same bits as ``p``, or None."""
        _check_same_n(p, self.generators[0])
        n = self.n
        bits = (p.x << n) | p.z
        acc = PauliString.identity(n)
        for pivot, rbits, relem in self._rows:
            if bits >> pivot & 1:
                bits ^= rbits
                acc = multiply(acc, relem)
        if bits:
            return None
        return acc

    def __contains__(self, p):
        elem = self.decompose(p)
        return elem is not None and elem.phase == p.phase

    def __len__(self):
        return 1 << self.rank

    def elements(self):
        """Iterate over all ``2**rank`` group elements (small groups only)."""
        gens = self.generators
        for mask in range(1 << len(gens)):
            acc = PauliString.identity(self.n)
            for i, g in enumerate(gens):
                if mask >> i & 1:
                    acc = multiply(acc, g)
            yield acc


def expectation_in_group(p, group):
    """Expectation of Hermitian ``p`` in the stabilizer state of ``group``.

    Returns +1 if ``p`` is in the group, -1 if ``-p`` is, else 0.  For a
    full-rank group this equals ``Tr(p rho)`` exactly.
    """
    if not p.is_hermitian():
        raise DomainError(f"{p} is not Hermitian")
    elem = group.decompose(p)
    if elem is None:
        return 0
    return 1 if elem.phase == p.phase else -1
