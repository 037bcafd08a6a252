"""Density witnesses: spectra, fixed vectors, Schmidt ranks, screens."""

import numpy as np
import pytest

from metaplectic.gates import omega, sum_gate, relative_phase_gate
from metaplectic.witnesses import (imprimitivity_witness, infinite_order_witness,
                                   qupit_subspace_chain, qutrit_commutator_witness,
                                   qutrit_fixed_vector, so5_partial_results)


def expected_commutator_eigenvalues():
    # oracle: the stated pair are the roots of 3x^2 - 4x + 3
    return np.roots([3.0, -4.0, 3.0])


@pytest.mark.parametrize("i", [0, 1, 2])
def test_qutrit_commutator_spectrum(i):
    report = qutrit_commutator_witness(i)
    roots = expected_commutator_eigenvalues()
    for vals in (report.eigenvalues_w, report.eigenvalues_z):
        nontrivial = sorted((v for v in vals if abs(v - 1) > 1e-6), key=np.angle)
        expected = sorted(roots, key=np.angle)
        assert abs(np.array(nontrivial) - np.array(expected)).max() < 1e-9
    assert report.eigenvalue_residual < 1e-9
    assert report.polynomial_residual < 1e-9


@pytest.mark.parametrize("i", [0, 1, 2])
def test_qutrit_shared_fixed_vector(i):
    report = qutrit_commutator_witness(i)
    ref = qutrit_fixed_vector(i)
    ref = ref / np.linalg.norm(ref)
    assert abs(abs(np.vdot(ref, report.fixed_vector)) - 1.0) < 1e-9
    assert report.fixed_vector_residual < 1e-9


def test_qutrit_commutators_do_not_commute():
    for i in range(3):
        assert qutrit_commutator_witness(i).commutator_norm > 1e-3


def test_commutator_determinant_consistency():
    # the two nontrivial eigenvalues multiply to 1, so det W = det Z = 1
    roots = expected_commutator_eigenvalues()
    assert abs(roots[0] * roots[1] - 1.0) < 1e-12
    for i in range(3):
        report = qutrit_commutator_witness(i)
        assert abs(np.prod(report.eigenvalues_w) - 1.0) < 1e-10
        assert abs(np.prod(report.eigenvalues_z) - 1.0) < 1e-10


def test_infinite_order_screen_on_commutator():
    report = qutrit_commutator_witness(0)
    basis = np.linalg.svd(report.fixed_vector[:, None], full_matrices=True)[0][:, 1:]
    from metaplectic.gates import hadamard, p_gate
    h, p = hadamard(3), p_gate(3, 0)
    w_mat = h @ p @ h.conj().T @ p.conj().T
    restricted = basis.conj().T @ w_mat @ basis
    assert infinite_order_witness(restricted, 10000, 1e-6).passed


def test_infinite_order_rejects_roots_of_unity():
    w3 = omega(3)
    assert not infinite_order_witness(w3 * np.eye(3), 10, 1e-6).passed


def test_schmidt_rank_of_sum():
    report = imprimitivity_witness(sum_gate(3), 3)
    assert report.schmidt_rank == 3
    # oracle: the image is the maximally entangled state (1/sqrt d) sum |ii>
    image = sum_gate(3) @ report.input_state
    bell = np.zeros(9, dtype=complex)
    for i in range(3):
        bell[i * 3 + i] = 1 / np.sqrt(3)
    assert abs(image - bell).max() < 1e-12
    assert imprimitivity_witness(sum_gate(5), 5).schmidt_rank == 5


def test_schmidt_rank_of_identity():
    assert imprimitivity_witness(np.eye(9), 3).schmidt_rank == 1


@pytest.mark.parametrize("p", [5, 7])
def test_qupit_subspace_chain(p):
    report = qupit_subspace_chain(p)
    assert report.identity_residual < 1e-9
    assert report.restricted_commutator_min > 1e-3
    assert report.infinite_order_passed
    assert min(report.chain_overlaps) > 1e-9
    assert report.total_rank == p
    assert report.passed()


def test_subspace_planes_not_orthogonal():
    # S_0 vs S_1 at p = 5: the cross inner-product matrix is nonzero
    w = omega(5)
    def plane(i):
        first = np.zeros(5, dtype=complex)
        first[i] = 1.0
        second = np.array([w ** (i * j) if j != i else 0.0 for j in range(5)])
        return np.column_stack([first, second / np.linalg.norm(second)])
    cross = plane(0).conj().T @ plane(1)
    assert abs(cross).max() > 1e-9


def test_chain_rejects_bad_p():
    with pytest.raises(ValueError):
        qupit_subspace_chain(4)
    with pytest.raises(ValueError):
        qupit_subspace_chain(3)


def test_so5_partial_results():
    report = so5_partial_results()
    w5 = omega(5)
    expected_r = np.diag([w5, w5 ** -1, 1.0, 1.0, 1.0])
    assert abs(report.r_matrix_k1 - expected_r).max() < 1e-12
    assert report.fix_residual < 1e-8
    assert report.infinite_order_passed
    assert report.commutant_dim == 1
    assert report.passed()


def test_so5_fixed_vector_value():
    report = so5_partial_results()
    w5 = omega(5)
    raw = np.array([0, 0, w5 ** -1, (np.sqrt(5) + 1) / 2 * w5 ** 2, 1.0], dtype=complex)
    raw /= np.linalg.norm(raw)
    assert abs(report.fixed_vector - raw).max() < 1e-12
    for x_mat in report.x_matrices:
        assert abs(x_mat @ raw - raw).max() < 1e-8


def test_relative_phase_gate_matches_display():
    w5 = omega(5)
    mat = relative_phase_gate(5, 0, 1, 2)
    assert abs(np.diag(mat) - np.array([w5 ** 2, w5 ** -2, 1, 1, 1])).max() < 1e-12
