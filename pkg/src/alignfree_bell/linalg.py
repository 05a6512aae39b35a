"""Dense complex linear algebra helpers: tensor products, Hermitian
eigendecomposition for small matrices, and Haar-uniform SU(2) sampling."""

from __future__ import annotations

from functools import reduce

import numpy as np

from .config import TOL_UNITARY
from .errors import NotHermitian


def kron(*matrices: np.ndarray) -> np.ndarray:
    """Kronecker product of two or more matrices, left to right."""
    return reduce(np.kron, matrices)


def is_hermitian(m: np.ndarray, tol: float = TOL_UNITARY) -> bool:
    return m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T)) <= tol


def hermitian_eigen(m: np.ndarray, tol: float = TOL_UNITARY):
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues ascending, eigenvectors as orthonormal columns).
    Raises NotHermitian if the symmetry check fails.
    """
    m = np.asarray(m, dtype=complex)
    if not is_hermitian(m, tol):
        raise NotHermitian(f"matrix deviates from M = M† by more than {tol}")
    eigenvalues, eigenvectors = np.linalg.eigh(m)
    return eigenvalues, eigenvectors


def is_su2(u: np.ndarray, tol: float = TOL_UNITARY) -> bool:
    """Check u is a 2x2 special unitary within tol."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        return False
    unitary = np.max(np.abs(u.conj().T @ u - np.eye(2))) <= tol
    return unitary and abs(np.linalg.det(u) - 1.0) <= tol


def haar_su2(rng: np.random.Generator, identity: bool = False) -> np.ndarray:
    """Draw one Haar-uniform SU(2) matrix.

    A random unit quaternion (four iid standard normals, normalized) is
    mapped to SU(2); the push-forward of the uniform measure on S^3 is
    exactly the Haar measure.  With identity=True the identity matrix is
    returned without consuming randomness (aligned-case escape hatch).
    """
    if identity:
        return np.eye(2, dtype=complex)
    q = rng.standard_normal(4)
    q /= np.linalg.norm(q)
    a, b, c, d = q
    return np.array(
        [[a + 1j * b, c + 1j * d],
         [-c + 1j * d, a - 1j * b]],
        dtype=complex,
    )
