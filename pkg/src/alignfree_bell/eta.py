"""Reconstruction of the eight-qubit state from its zero-probability
constraints.

The state is sought in the 4-complex-dimensional span
{S_i^A x S_j^B} of products of the two parties' four-qubit total-spin-zero
basis vectors: per-party collective-rotation invariance (the alignment-free
property) forces each party's reduced support into its J=0 subspace.  The
three zero-probability constraints are imposed as annihilation by the
corresponding event projectors, compressed to 4x4 Hermitian PSD matrices;
the state is the nullspace of their sum.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_NULLSPACE_TOL, SCHEMA_VERSION, TOL_EXACT
from .errors import AmbiguousSolution, NoSolution
from .linalg import haar_su2, hermitian_eigen
from .measurement import (
    F_FAMILY,
    G_FAMILY,
    IDENTITY_ROTATION,
    PartySetting,
    event_projector,
    hardy_record,
)
from .spin import four_qubit_singlet_basis

# Event projectors entering the three zero constraints, as
# (family_A, value_A, family_B, value_B), with identity rotations.
CONSTRAINT_EVENTS = {
    1: (F_FAMILY, +1, F_FAMILY, +1),
    2: (F_FAMILY, -1, G_FAMILY, +1),
    3: (G_FAMILY, +1, F_FAMILY, -1),
}


def compress(operator: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Compress a 16x16 party operator to the 2-dim J=0 subspace."""
    return basis.conj().T @ operator @ basis


def build_constraint(eq_label: int, basis_a: np.ndarray, basis_b: np.ndarray) -> np.ndarray:
    """4x4 PSD constraint matrix for one zero-probability equation.

    m[ij, kl] = <S_i^A S_j^B| Pi_A x Pi_B |S_k^A S_l^B> with the event
    projectors of CONSTRAINT_EVENTS[eq_label] at identity rotations.
    """
    family_a, value_a, family_b, value_b = CONSTRAINT_EVENTS[eq_label]
    pi_a = event_projector(PartySetting("A", family_a), value_a)
    pi_b = event_projector(PartySetting("B", family_b), value_b)
    return np.kron(compress(pi_a, basis_a), compress(pi_b, basis_b))


def embed(coefficients: np.ndarray, basis_a: np.ndarray, basis_b: np.ndarray) -> np.ndarray:
    """Lift coefficients over {S_i^A x S_j^B} to a 256-dim state vector."""
    c = np.asarray(coefficients, dtype=complex).reshape(2, 2)
    return (basis_a @ c @ basis_b.T).reshape(256)


@dataclass(frozen=True)
class EtaSolution:
    """Solved state: coefficients over {S_i^A x S_j^B}, the embedded
    256-dim vector, and the certification numbers."""

    coefficients: np.ndarray
    state: np.ndarray
    nullspace_dimension: int
    eigenvalues: np.ndarray
    residuals: tuple[float, float, float]
    p_gagb: float

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "basis_convention": "J0 basis: singlet(1,2)x(3,4) first, "
                                "Gram-Schmidt singlet(1,3)x(2,4) second; "
                                "qubit 1 = most significant bit",
            "coefficients": [[z.real, z.imag] for z in self.coefficients],
            "amplitudes": [[z.real, z.imag] for z in self.state],
            "nullspace_dimension": self.nullspace_dimension,
            "constraint_eigenvalues": list(self.eigenvalues),
            "residuals": list(self.residuals),
            "p_gagb": self.p_gagb,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def solution_from_dict(doc: dict) -> EtaSolution:
    return EtaSolution(
        coefficients=np.array([complex(re, im) for re, im in doc["coefficients"]]),
        state=np.array([complex(re, im) for re, im in doc["amplitudes"]]),
        nullspace_dimension=int(doc["nullspace_dimension"]),
        eigenvalues=np.array(doc["constraint_eigenvalues"], dtype=float),
        residuals=tuple(doc["residuals"]),
        p_gagb=float(doc["p_gagb"]),
    )


def solve_eta(
    tol: float = DEFAULT_NULLSPACE_TOL,
    basis_a: np.ndarray | None = None,
    basis_b: np.ndarray | None = None,
) -> EtaSolution:
    """Solve the three annihilation constraints in the singlet x singlet span.

    The nullspace threshold `tol` is relative to the largest eigenvalue of
    the summed constraint matrix.  Raises NoSolution on an empty nullspace
    and AmbiguousSolution (carrying all candidate coefficient vectors) if
    the nullspace dimension exceeds one.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if basis_a is None:
        basis_a = four_qubit_singlet_basis()
    if basis_b is None:
        basis_b = basis_a
    constraints = [build_constraint(k, basis_a, basis_b) for k in (1, 2, 3)]
    total = constraints[0] + constraints[1] + constraints[2]
    eigenvalues, eigenvectors = hermitian_eigen(total)
    threshold = tol * float(eigenvalues[-1])
    null_mask = eigenvalues < threshold
    null_dim = int(np.sum(null_mask))
    if null_dim == 0:
        raise NoSolution(f"no eigenvalue below {threshold}")
    if null_dim > 1:
        raise AmbiguousSolution(
            f"nullspace dimension {null_dim} > 1",
            basis_coefficients=eigenvectors[:, null_mask].T.copy(),
        )

    c = eigenvectors[:, null_mask][:, 0]
    k0 = int(np.argmax(np.abs(c) > 1e-12))
    c = c * np.exp(-1j * np.angle(c[k0]))
    c /= np.linalg.norm(c)

    residuals = tuple(float((c.conj() @ m @ c).real) for m in constraints)
    pg_a = event_projector(PartySetting("A", G_FAMILY), +1)
    pg_b = event_projector(PartySetting("B", G_FAMILY), +1)
    m_gg = np.kron(compress(pg_a, basis_a), compress(pg_b, basis_b))
    p_gagb = float((c.conj() @ m_gg @ c).real)
    return EtaSolution(
        coefficients=c,
        state=embed(c, basis_a, basis_b),
        nullspace_dimension=null_dim,
        eigenvalues=np.asarray(eigenvalues, dtype=float),
        residuals=residuals,
        p_gagb=p_gagb,
    )


def certify(
    solution: EtaSolution,
    n_rotations: int,
    rng: np.random.Generator,
    tol: float = 1e-9,
) -> dict:
    """Evaluate the four probabilities for identity rotations plus
    n_rotations Haar-random quadruples; report per-quantity max deviations."""
    records = [hardy_record(solution.state)]
    for _ in range(n_rotations):
        quad = tuple(haar_su2(rng) for _ in range(4))
        records.append(hardy_record(solution.state, *quad))
    deviation_matrix = np.array([r.deviations for r in records])
    max_deviations = deviation_matrix.max(axis=0)
    return {
        "n_rotations": n_rotations,
        "records": [r.to_dict() for r in records],
        "max_deviations": {
            "p_fafb": float(max_deviations[0]),
            "p_fa_given_gb": float(max_deviations[1]),
            "p_fb_given_ga": float(max_deviations[2]),
            "p_gagb": float(max_deviations[3]),
        },
        "tolerance": tol,
        "pass": bool(max_deviations.max() <= tol),
    }
