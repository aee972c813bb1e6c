"""Hamiltonian construction and propagator checks."""

import numpy as np
import pytest

from antibunch import (
    PhysicalParams,
    build_effective_hamiltonian,
    build_pair_hamiltonian,
    build_single_hamiltonian,
    matrix_exponential,
    propagate_no_jump,
)
from antibunch.operators import S1_MINUS, S2_MINUS, SIGMA_MINUS


def test_single_hamiltonian_entries():
    h = build_single_hamiltonian(2.0, 0.5)
    assert np.allclose(h, [[0.0, 1.0], [1.0, 0.5]])
    assert np.allclose(h, h.conj().T)


def test_pair_hamiltonian_entries():
    p = PhysicalParams(omega1=2.0, omega2=4.0, delta=0.5, delta12=3.0)
    h = build_pair_hamiltonian(p)
    # basis (gg, ge, eg, ee); omega/2 off-diagonals, delta12 couples ge<->eg
    expected = np.array(
        [
            [0.0, 2.0, 1.0, 0.0],
            [2.0, 0.5, 3.0, 1.0],
            [1.0, 3.0, 0.5, 2.0],
            [0.0, 1.0, 2.0, 1.0],
        ]
    )
    assert np.allclose(h, expected)
    assert np.allclose(h, h.conj().T)


def test_pair_hamiltonian_is_kron_sum_plus_exchange():
    p = PhysicalParams(omega1=1.3, omega2=0.7, delta=-0.2, delta12=2.5)
    h1 = build_single_hamiltonian(p.omega1, p.delta)
    h2 = build_single_hamiltonian(p.omega2, p.delta)
    w = p.delta12 * (S1_MINUS.conj().T @ S2_MINUS + S2_MINUS.conj().T @ S1_MINUS)
    assert np.allclose(
        build_pair_hamiltonian(p),
        np.kron(h1, np.eye(2)) + np.kron(np.eye(2), h2) + w,
    )


def test_effective_hamiltonian_single_atom():
    gamma = 0.8
    h = build_single_hamiltonian(1.0, 0.0)
    l1 = np.sqrt(gamma) * SIGMA_MINUS
    h_eff = build_effective_hamiltonian(h, [l1])
    assert np.allclose(h_eff, h - 0.5j * gamma * np.diag([0.0, 1.0]))


def test_effective_hamiltonian_dimension_mismatch():
    h = build_single_hamiltonian(1.0, 0.0)
    with pytest.raises(ValueError):
        build_effective_hamiltonian(h, [S1_MINUS])


def test_matrix_exponential_rabi_oscillation():
    omega, t = 1.7, 2.3
    h = build_single_hamiltonian(omega, 0.0)
    u = matrix_exponential(h, t)
    # resonant Rabi: <e|U|g> = -i sin(omega t / 2)
    assert abs(u[1, 0] - (-1j * np.sin(omega * t / 2))) < 1e-12
    assert abs(u[0, 0] - np.cos(omega * t / 2)) < 1e-12
    assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-12)


def test_propagate_no_jump_renormalizes():
    gamma = 1.0
    h_eff = build_effective_hamiltonian(
        np.zeros((2, 2), dtype=complex), [np.sqrt(gamma) * SIGMA_MINUS]
    )
    psi = np.array([0.6, 0.8], dtype=complex)
    out = propagate_no_jump(psi, h_eff, 0.5)
    assert abs(np.linalg.norm(out) - 1.0) < 1e-12
    # pure decay shrinks the excited amplitude by e^{-gamma dt / 2}
    ratio = (out[1] / out[0]) / (psi[1] / psi[0])
    assert abs(ratio - np.exp(-gamma * 0.5 / 2)) < 1e-12


def test_propagate_no_jump_rejects_bad_dt():
    h = build_single_hamiltonian(1.0, 0.0)
    with pytest.raises(ValueError):
        propagate_no_jump(np.array([1.0, 0.0]), h, 0.0)


def test_params_validation():
    with pytest.raises(ValueError):
        PhysicalParams(omega1=1.0, gamma1=-0.1)
    with pytest.raises(ValueError):
        PhysicalParams(omega1=1.0, gamma1=1.0, gamma2=1.0, gamma12=1.5)
    # boundary |gamma12| = sqrt(gamma1 gamma2) is allowed
    PhysicalParams(omega1=1.0, gamma1=1.0, gamma2=4.0, gamma12=-2.0)
