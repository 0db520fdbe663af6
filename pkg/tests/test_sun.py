import itertools

import numpy as np
import pytest

from graphqfim.errors import ValidationError
from graphqfim.sun import (
    PAULI,
    OperatorSet,
    collective_set,
    collective_spin,
    embed,
    gell_mann,
    local_pauli,
    spin_j_operators,
    spin_j_set,
    su_generators,
    sun_set,
)


@pytest.mark.parametrize("N", [2, 3, 4, 8])
def test_gell_mann_orthonormal_traceless(N):
    basis = su_generators(N)
    assert len(basis) == N * N - 1
    for a in basis:
        assert np.allclose(a, a.conj().T)
        assert abs(np.trace(a)) < 1e-12
    gram = np.array([[np.trace(a @ b).real for b in basis] for a in basis])
    assert np.allclose(gram, 2 * np.eye(N * N - 1))


def test_su2_is_pauli():
    basis = su_generators(2)
    for k, ax in enumerate("xyz"):
        assert np.array_equal(basis[k], PAULI[ax])


def test_su4_listing_spot_checks():
    s = 1 / np.sqrt(3)
    assert np.array_equal(gell_mann(4, 0)[[0, 1], [1, 0]], [1, 1])
    assert gell_mann(4, 5)[2, 3] == 1 and gell_mann(4, 5)[3, 2] == 1
    assert gell_mann(4, 6)[0, 1] == -1j and gell_mann(4, 6)[1, 0] == 1j
    assert np.allclose(np.diag(gell_mann(4, 12)), [1, -1, 0, 0])
    assert np.allclose(np.diag(gell_mann(4, 13)), [s, s, -2 * s, 0])
    assert np.allclose(np.diag(gell_mann(4, 14)), np.array([1, 1, 1, -3]) / np.sqrt(6))


def test_blocks():
    b = su_generators(4).blocks
    assert list(b["symmetric"]) == list(range(6))
    assert list(b["diagonal"]) == [12, 13, 14]
    assert su_generators(4).labels[12] == "diag1"


def test_generator_index_errors():
    with pytest.raises(ValidationError):
        gell_mann(4, 15)
    with pytest.raises(ValidationError):
        su_generators(1)


@pytest.mark.parametrize("dim", [2, 3, 4, 8])
def test_spin_commutators(dim):
    jx, jy, jz = spin_j_operators(dim)
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz)
    assert np.allclose(jy @ jz - jz @ jy, 1j * jx)
    s = (dim - 1) / 2
    assert np.allclose(jx @ jx + jy @ jy + jz @ jz, s * (s + 1) * np.eye(dim))
    assert jz[0, 0] == s


def test_collective_spin_is_spin_algebra():
    jx, jy, jz = collective_set(3)
    assert np.allclose(jx @ jy - jy @ jx, 1j * jz)
    assert np.allclose(np.linalg.eigvalsh(jz), [-1.5, -0.5, -0.5, -0.5, 0.5, 0.5, 0.5, 1.5])


def test_local_pauli_and_embed():
    assert np.array_equal(local_pauli(2, 1, "x"), np.kron(np.eye(2), PAULI["x"]))
    op = np.kron(PAULI["z"], PAULI["y"])
    assert np.array_equal(embed(op, 1, 3), np.kron(np.eye(2), op))
    with pytest.raises(ValidationError):
        embed(op, 2, 3)
    with pytest.raises(ValidationError):
        embed(np.eye(3), 0, 3)


def test_sun_set_offsets():
    lam = gell_mann(4, 12)
    one = sun_set(3, 4, [12], offset=1, scale=0.5)[0]
    assert np.allclose(one, np.kron(np.eye(2), lam / 2))
    slide = sun_set(3, 4, [12], offset="sliding", scale=0.5)[0]
    assert np.allclose(slide, np.kron(lam, np.eye(2)) / 2 + np.kron(np.eye(2), lam) / 2)
    with pytest.raises(ValidationError):
        sun_set(2, 8, [0])
    with pytest.raises(ValidationError):
        sun_set(3, 6, [0])
    with pytest.raises(ValidationError):
        sun_set(3, 4, [0], offset="left")


def test_operator_set_validation():
    with pytest.raises(ValidationError):
        OperatorSet(1, (np.array([[0, 1], [0, 0]]),))
    with pytest.raises(ValidationError):
        OperatorSet(2, (PAULI["x"],))
    s = collective_set(2, ("x", "z")).scaled(2.0)
    assert np.allclose(s[0], local_pauli(2, 0, "x") + local_pauli(2, 1, "x"))
    assert collective_set(2, ("z",)).commuting()
    assert not collective_set(2).commuting()


def test_spin_j_set_full_register():
    ops = spin_j_set(2, ("y",))
    assert ops[0].shape == (4, 4)
    assert np.allclose(np.linalg.eigvalsh(ops[0]), [-1.5, -0.5, 0.5, 1.5])


def test_diagonal_block_commutes():
    basis = su_generators(8)
    diag = [basis[k] for k in basis.blocks["diagonal"]]
    for a, b in itertools.combinations(diag, 2):
        assert np.allclose(a @ b, b @ a)
