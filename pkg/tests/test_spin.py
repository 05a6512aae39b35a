import numpy as np
import pytest

from alignfree_bell.errors import IndexOutOfRange
from alignfree_bell.linalg import haar_su2
from alignfree_bell.spin import (
    collective_rotate,
    collective_rotation_matrix,
    four_qubit_singlet_basis,
    pauli,
    total_spin_squared,
    two_qubit_singlet,
)


def test_pauli_single_qubit():
    assert np.allclose(pauli("z", 1, 1), np.diag([1, -1]))


def test_pauli_eigenstate():
    state = np.zeros(4, dtype=complex)
    state[0b01] = 1.0
    assert np.allclose(pauli("z", 2, 2) @ state, -state)


def test_pauli_involution():
    for axis in ("x", "y", "z"):
        for n in (1, 2, 4):
            for k in range(1, n + 1):
                p = pauli(axis, k, n)
                assert np.allclose(p @ p, np.eye(2**n))


def test_pauli_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        pauli("z", 3, 2)


def test_singlet_amplitudes():
    s = two_qubit_singlet()
    assert abs(s[0b01] - 1 / np.sqrt(2)) < 1e-12
    assert abs(s[0b10] + 1 / np.sqrt(2)) < 1e-12
    assert abs(s[0b00]) == 0 and abs(s[0b11]) == 0


def test_singlet_total_spin_zero():
    s = two_qubit_singlet()
    for axis in ("x", "y", "z"):
        total = pauli(axis, 1, 2) + pauli(axis, 2, 2)
        assert np.max(np.abs(total @ s)) <= 1e-10


def test_singlet_rotation_invariance():
    s = two_qubit_singlet()
    rng = np.random.default_rng(2)
    for _ in range(10):
        u = haar_su2(rng)
        rotated = np.kron(u, u) @ s
        assert abs(abs(s.conj() @ rotated) - 1) <= 1e-10


def test_singlet_antisymmetric_under_swap():
    s = two_qubit_singlet().reshape(2, 2)
    assert np.allclose(s.T, -s)


def test_four_qubit_basis_dimension_and_gram():
    basis = four_qubit_singlet_basis()
    assert basis.shape == (16, 2)
    gram = basis.conj().T @ basis
    assert np.max(np.abs(gram - np.eye(2))) <= 1e-10


def test_four_qubit_basis_annihilated_by_s2():
    basis = four_qubit_singlet_basis()
    s2 = total_spin_squared(4)
    assert np.max(np.abs(s2 @ basis)) <= 1e-10


def test_s2_nullspace_multiplicity_oracle():
    # independent brute-force count of zero eigenvalues of S^2 on 4 qubits
    eigenvalues = np.linalg.eigvalsh(total_spin_squared(4))
    assert int(np.sum(np.abs(eigenvalues) < 1e-8)) == 2


def test_seed_vectors_lie_in_span():
    basis = four_qubit_singlet_basis()
    s = two_qubit_singlet()
    seed1 = np.kron(s, s)
    seed2 = np.kron(s, s).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(16)
    seed2 = seed2 / np.linalg.norm(seed2)
    projector = basis @ basis.conj().T
    for seed in (seed1, seed2):
        assert np.max(np.abs(projector @ seed - seed)) <= 1e-10


def test_collective_rotate_identity_and_norm():
    basis = four_qubit_singlet_basis()
    state = basis[:, 0]
    assert np.allclose(collective_rotate(state, np.eye(2), [1, 2, 3, 4]), state)
    u = haar_su2(np.random.default_rng(9))
    rotated = collective_rotate(state, u, [1, 2, 3, 4])
    assert abs(np.linalg.norm(rotated) - 1) <= 1e-10


def test_collective_rotate_validates_indices():
    state = np.zeros(4, dtype=complex)
    state[0] = 1
    with pytest.raises(IndexOutOfRange):
        collective_rotate(state, np.eye(2), [1, 1])
    with pytest.raises(IndexOutOfRange):
        collective_rotate(state, np.eye(2), [3])


def test_singlet_basis_phase_invariance_many_haar():
    basis = four_qubit_singlet_basis()
    rng = np.random.default_rng(17)
    for _ in range(100):
        u = haar_su2(rng)
        rotation = collective_rotation_matrix(u, 4)
        for k in range(2):
            v = basis[:, k]
            assert abs(abs(v.conj() @ rotation @ v) - 1) <= 1e-9
