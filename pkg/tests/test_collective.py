"""Decay-matrix diagonalization into collective jump channels."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antibunch import DecayMatrix, decompose, jump_probabilities
from antibunch.operators import S1_MINUS, S2_MINUS


def _matrix(d: DecayMatrix) -> np.ndarray:
    return np.array([[d.gamma1, d.gamma12], [d.gamma12, d.gamma2]])


def test_rates_match_eigensolver():
    d = DecayMatrix(1.0, 0.5, 0.3)
    basis = decompose(d)
    eig = np.sort(np.linalg.eigvalsh(_matrix(d)))
    assert abs(basis.lambda1 - eig[1]) < 1e-12
    assert abs(basis.lambda2 - eig[0]) < 1e-12


rates = st.floats(min_value=0.01, max_value=10.0)
mixing = st.floats(min_value=-0.999, max_value=0.999)


@settings(max_examples=200, deadline=None)
@given(g1=rates, g2=rates, frac=mixing)
def test_decompose_properties(g1, g2, frac):
    d = DecayMatrix(g1, g2, frac * np.sqrt(g1 * g2))
    basis = decompose(d)
    # spectral identities of the 2x2 symmetric decay matrix
    assert basis.lambda1 >= basis.lambda2 >= 0
    assert abs(basis.lambda1 + basis.lambda2 - (g1 + g2)) < 1e-9 * (g1 + g2)
    det = g1 * g2 - d.gamma12**2
    assert abs(basis.lambda1 * basis.lambda2 - det) < 1e-9 * max(det, 1.0)
    assert abs(basis.alpha**2 + basis.beta**2 - 1.0) < 1e-12
    # channel operators reconstruct sum_ij gamma_ij S_i+ S_j-
    recon = (
        basis.l1.conj().T @ basis.l1 + basis.l2.conj().T @ basis.l2
    )
    direct = (
        g1 * S1_MINUS.conj().T @ S1_MINUS
        + g2 * S2_MINUS.conj().T @ S2_MINUS
        + d.gamma12 * (S1_MINUS.conj().T @ S2_MINUS + S2_MINUS.conj().T @ S1_MINUS)
    )
    assert np.max(np.abs(recon - direct)) < 1e-9 * (g1 + g2)


def test_degenerate_convention():
    basis = decompose(DecayMatrix(1.0, 1.0, 0.0))
    assert (basis.alpha, basis.beta) == (1.0, 0.0)
    assert np.allclose(basis.l1, S1_MINUS)
    assert np.allclose(basis.l2, S2_MINUS)


def test_diagonal_matrix_orders_channels_by_rate():
    basis = decompose(DecayMatrix(1.0, 2.0, 0.0))
    assert abs(basis.lambda1 - 2.0) < 1e-12
    assert np.allclose(basis.l1, np.sqrt(2.0) * S2_MINUS)
    assert np.allclose(np.abs(basis.l2), S1_MINUS)


def test_beta_carries_gamma12_sign():
    plus = decompose(DecayMatrix(1.0, 1.0, 0.5))
    minus = decompose(DecayMatrix(1.0, 1.0, -0.5))
    assert plus.beta > 0 > minus.beta
    assert abs(plus.alpha - minus.alpha) < 1e-12


def test_symmetric_case_is_super_and_subradiant():
    basis = decompose(DecayMatrix(1.0, 1.0, 1.0))
    assert abs(basis.lambda1 - 2.0) < 1e-12
    assert abs(basis.lambda2) < 1e-12
    assert abs(basis.alpha - 1 / np.sqrt(2)) < 1e-12
    assert abs(basis.beta - 1 / np.sqrt(2)) < 1e-12


def test_unphysical_matrix_rejected():
    with pytest.raises(ValueError):
        DecayMatrix(1.0, 1.0, 1.1)
    with pytest.raises(ValueError):
        DecayMatrix(-1.0, 1.0, 0.0)


def test_jump_probabilities_symmetric_state():
    basis = decompose(DecayMatrix(1.0, 1.0, 1.0))
    psi = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2)
    dt = 1e-3
    p1, p2 = jump_probabilities(psi, basis, dt)
    # the symmetric single-excitation state decays only superradiantly
    assert abs(p1 - 2.0 * dt) < 1e-15
    assert abs(p2) < 1e-15


def test_jump_probabilities_antisymmetric_state():
    basis = decompose(DecayMatrix(1.0, 1.0, 1.0))
    psi = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2)
    p1, p2 = jump_probabilities(psi, basis, 1e-3)
    assert abs(p1) < 1e-15 and abs(p2) < 1e-15  # fully subradiant, lambda2 = 0


def test_jump_probabilities_rejects_bad_dt():
    basis = decompose(DecayMatrix(1.0, 1.0, 0.0))
    with pytest.raises(ValueError):
        jump_probabilities(np.array([1, 0, 0, 0], dtype=complex), basis, 0.0)
