import json

import numpy as np
import pytest

from alignfree_bell.config import P_GG_TARGET
from alignfree_bell.errors import NoSolution
from alignfree_bell.eta import (
    CONSTRAINT_EVENTS,
    build_constraint,
    certify,
    compress,
    solution_from_dict,
    solve_eta,
)
from alignfree_bell.linalg import is_hermitian
from alignfree_bell.measurement import (
    G_FAMILY,
    PartySetting,
    aggregate,
    event_projector,
    joint_outcome_table,
)
from alignfree_bell.spin import four_qubit_singlet_basis


@pytest.fixture(scope="module")
def basis():
    return four_qubit_singlet_basis()


@pytest.fixture(scope="module")
def solution():
    return solve_eta()


def test_constraints_are_hermitian_psd(basis):
    for label in (1, 2, 3):
        m = build_constraint(label, basis, basis)
        assert is_hermitian(m)
        assert np.linalg.eigvalsh(m).min() >= -1e-10
        assert 0.0 <= np.trace(m).real <= 4.0


def test_constraint_sum_has_nontrivial_nullspace(basis):
    total = sum(build_constraint(k, basis, basis) for k in (1, 2, 3))
    eigenvalues = np.linalg.eigvalsh(total)
    assert eigenvalues[0] <= 1e-8 * eigenvalues[-1]


def test_solution_nullspace_dimension_and_residuals(solution):
    assert solution.nullspace_dimension == 1
    assert all(abs(r) <= 1e-10 for r in solution.residuals)
    assert abs(np.linalg.norm(solution.state) - 1.0) <= 1e-10


def test_solution_p_gagb_is_9_over_112(solution):
    assert abs(solution.p_gagb - P_GG_TARGET) <= 1e-9


def test_full_space_annihilation(solution):
    # stronger than expectation-zero: the event projectors annihilate the state
    psi = solution.state.reshape(16, 16)
    for label, (fam_a, val_a, fam_b, val_b) in CONSTRAINT_EVENTS.items():
        pi_a = event_projector(PartySetting("A", fam_a), val_a)
        pi_b = event_projector(PartySetting("B", fam_b), val_b)
        assert np.linalg.norm(pi_a @ psi @ pi_b.T) <= 1e-9


def test_solution_lies_in_singlet_product_subspace(solution, basis):
    p_sing = basis @ basis.conj().T
    psi = solution.state.reshape(16, 16)
    outside = psi - p_sing @ psi @ p_sing.T
    assert np.linalg.norm(outside) <= 1e-10


def test_p_gagb_cross_check_table_vs_expectation(solution):
    table = joint_outcome_table(
        solution.state, PartySetting("A", G_FAMILY), PartySetting("B", G_FAMILY)
    )
    from_table = aggregate(table, 1, 1)
    assert abs(from_table - solution.p_gagb) <= 1e-12


def test_solver_determinism(solution):
    again = solve_eta()
    assert np.array_equal(solution.coefficients, again.coefficients)
    assert np.array_equal(again.state, solution.state)


def test_phase_fix_first_coefficient_real_positive(solution):
    c = solution.coefficients
    k0 = int(np.argmax(np.abs(c) > 1e-12))
    assert c[k0].real > 0 and abs(c[k0].imag) <= 1e-12


def test_basis_convention_independence(solution):
    # a rotated orthonormal choice of the J=0 basis gives the same physical state
    theta = 0.3
    mixing = np.array(
        [[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]], dtype=complex
    )
    alternative = solve_eta(basis_a=four_qubit_singlet_basis(mixing=mixing))
    overlap = abs(solution.state.conj() @ alternative.state)
    assert abs(overlap - 1.0) <= 1e-9


def test_tiny_tolerance_gives_no_solution():
    with pytest.raises(NoSolution):
        solve_eta(tol=1e-30)


def test_certify_identity_and_random(solution):
    report = certify(solution, n_rotations=10, rng=np.random.default_rng(21))
    assert report["pass"]
    assert max(report["max_deviations"].values()) <= 1e-9
    assert len(report["records"]) == 11


def test_certify_rejects_perturbed_state(solution, basis):
    # push the state toward an orthogonal singlet-subspace direction
    psi = solution.coefficients.copy()
    orthogonal = np.zeros(4, dtype=complex)
    orthogonal[int(np.argmin(np.abs(psi)))] = 1.0
    orthogonal -= (psi.conj() @ orthogonal) * psi
    orthogonal /= np.linalg.norm(orthogonal)
    perturbed_c = psi + 0.1 * orthogonal
    perturbed_c /= np.linalg.norm(perturbed_c)
    from alignfree_bell.eta import EtaSolution, embed

    perturbed = EtaSolution(
        coefficients=perturbed_c,
        state=embed(perturbed_c, basis, basis),
        nullspace_dimension=1,
        eigenvalues=solution.eigenvalues,
        residuals=(0.0, 0.0, 0.0),
        p_gagb=0.0,
    )
    report = certify(perturbed, n_rotations=0, rng=np.random.default_rng(0))
    assert not report["pass"]


def test_compress_of_identity_is_identity(basis):
    assert np.max(np.abs(compress(np.eye(16), basis) - np.eye(2))) <= 1e-10


def test_serialization_round_trip(solution):
    doc = json.loads(solution.to_json())
    restored = solution_from_dict(doc)
    assert np.max(np.abs(restored.state - solution.state)) == 0.0
    assert np.max(np.abs(restored.coefficients - solution.coefficients)) == 0.0
    assert restored.p_gagb == solution.p_gagb


def test_certify_under_haar_rotation_of_state(solution):
    # rotation quadruples leave all four quantities fixed
    report = certify(solution, n_rotations=3, rng=np.random.default_rng(33))
    assert report["pass"]
    assert all(abs(r["p_gagb"] - P_GG_TARGET) <= 1e-9 for r in report["records"])
