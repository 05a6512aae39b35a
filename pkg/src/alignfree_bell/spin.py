"""Qubit registers, Pauli operators, and the four-qubit total-spin-zero
subspace.

Conventions (fixed once, used everywhere):
  * qubit 1 is the most significant bit of a computational-basis index;
  * Alice owns global qubits 1-4, Bob owns global qubits 5-8;
  * z outcome 0 <-> sigma_z eigenvalue +1 (|0>), x outcome 0 <-> sigma_x
    eigenvalue +1 (|+> = (|0>+|1>)/sqrt(2)).
"""

from __future__ import annotations

import numpy as np

from .config import TOL_EXACT
from .errors import DegenerateBasis, IndexOutOfRange
from .linalg import hermitian_eigen, kron

I2 = np.eye(2, dtype=complex)
SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli(axis: str, qubit_index: int, n_qubits: int) -> np.ndarray:
    """sigma_axis acting on one qubit of an n-qubit register.

    qubit_index is 1-based; qubit 1 is the leftmost tensor factor.
    """
    if not 1 <= qubit_index <= n_qubits:
        raise IndexOutOfRange(f"qubit {qubit_index} outside register of {n_qubits}")
    factors = [I2] * n_qubits
    factors[qubit_index - 1] = SIGMA[axis]
    return kron(*factors)


def two_qubit_singlet() -> np.ndarray:
    """(|01> - |10>)/sqrt(2)."""
    state = np.zeros(4, dtype=complex)
    state[0b01] = 1.0 / np.sqrt(2.0)
    state[0b10] = -1.0 / np.sqrt(2.0)
    return state


def total_spin_squared(n_qubits: int) -> np.ndarray:
    """S^2 = sum_alpha (sum_k sigma_alpha,k)^2 on n qubits."""
    dim = 2**n_qubits
    s2 = np.zeros((dim, dim), dtype=complex)
    for axis in ("x", "y", "z"):
        total = sum(pauli(axis, k, n_qubits) for k in range(1, n_qubits + 1))
        s2 += total @ total
    return s2


def _phase_fixed(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    k = int(np.argmax(np.abs(v) > tol))
    return v * np.exp(-1j * np.angle(v[k]))


def four_qubit_singlet_basis(mixing: np.ndarray | None = None) -> np.ndarray:
    """Orthonormal basis (16x2 columns) of the four-qubit J=0 subspace.

    The subspace is extracted as the eigenvalue-0 eigenspace of S^2 and
    then fixed deterministically: first vector along
    singlet(1,2) x singlet(3,4), second the Gram-Schmidt remainder of
    singlet(1,3) x singlet(2,4).  An optional 2x2 unitary `mixing` is
    applied to the columns afterwards (alternative basis conventions for
    robustness checks; the span is unchanged).
    """
    s2 = total_spin_squared(4)
    eigenvalues, eigenvectors = hermitian_eigen(s2)
    null_dim = int(np.sum(eigenvalues < TOL_EXACT))
    if null_dim != 2:
        raise DegenerateBasis(f"J=0 subspace has dimension {null_dim}, expected 2")
    projector = eigenvectors[:, :2] @ eigenvectors[:, :2].conj().T

    singlet = two_qubit_singlet()
    seed1 = np.kron(singlet, singlet)  # pairs (1,2)(3,4)
    # pairs (1,3)(2,4): amplitude(b1 b2 b3 b4) = s(b1 b3) * s(b2 b4)
    seed2 = np.kron(singlet, singlet).reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(16)

    v1 = projector @ seed1
    v1 = _phase_fixed(v1 / np.linalg.norm(v1))
    v2 = projector @ seed2
    v2 = v2 - (v1.conj() @ v2) * v1
    v2 = _phase_fixed(v2 / np.linalg.norm(v2))
    basis = np.column_stack([v1, v2])
    if mixing is not None:
        basis = basis @ np.asarray(mixing, dtype=complex)
    return basis


def collective_rotation_matrix(u: np.ndarray, n_qubits: int) -> np.ndarray:
    """u applied to every qubit of the register: u^(tensor n)."""
    return kron(*([np.asarray(u, dtype=complex)] * n_qubits))


def collective_rotate(state: np.ndarray, u: np.ndarray, qubit_indices: list[int]) -> np.ndarray:
    """Apply the single-qubit unitary u to each listed qubit of `state`."""
    n_qubits = int(np.log2(state.size))
    if len(set(qubit_indices)) != len(qubit_indices):
        raise IndexOutOfRange("qubit indices must be distinct")
    if any(not 1 <= k <= n_qubits for k in qubit_indices):
        raise IndexOutOfRange(f"qubit index outside register of {n_qubits}")
    factors = [np.asarray(u, dtype=complex) if k in qubit_indices else I2
               for k in range(1, n_qubits + 1)]
    return kron(*factors) @ state
