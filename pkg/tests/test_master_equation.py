"""Deterministic Lindblad oracle: invariants, known solutions, regression g2."""

import numpy as np
import pytest

from antibunch import (
    InvariantViolation,
    PhysicalParams,
    build_pair_hamiltonian,
    g2_regression,
    lindblad_integrate,
    matrix_exponential,
    steady_state,
)
from antibunch.master_equation import check_density_matrix

RHO_GG_1 = np.diag([1.0, 0.0]).astype(complex)
RHO_GG_2 = np.diag([1.0, 0.0, 0.0, 0.0]).astype(complex)


def test_closed_system_matches_unitary_evolution():
    p = PhysicalParams(omega1=1.0, omega2=1.0, delta12=2.0,
                       gamma1=0.0, gamma2=0.0)
    t, rhos = lindblad_integrate(RHO_GG_2, p, dt=1e-3, t_end=10.0, n_record=11)
    h = build_pair_hamiltonian(p)
    psi0 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    for ti, rho in zip(t, rhos):
        psi = matrix_exponential(h, ti) @ psi0
        assert np.max(np.abs(rho - np.outer(psi, psi.conj()))) < 1e-9


def test_single_atom_saturation():
    """omega = gamma, resonance: steady excited population is 1/3."""
    p = PhysicalParams(omega1=1.0)
    rho = steady_state(p, n_atoms=1)
    assert abs(rho[1, 1].real - 1.0 / 3.0) < 1e-8


def test_independent_pair_excited_state_decay():
    """|ee> with no drive: P_ee(t) = e^(-2 gamma t)."""
    p = PhysicalParams(omega1=0.0, omega2=0.0)
    rho0 = np.diag([0.0, 0.0, 0.0, 1.0]).astype(complex)
    t, rhos = lindblad_integrate(rho0, p, dt=1e-3, t_end=5.0, n_record=21)
    pee = rhos[:, 3, 3].real
    assert np.max(np.abs(pee - np.exp(-2.0 * t))) < 1e-8
    # total excitation decays as 2 e^(-t) - 2 e^(-2t) + ... check one-atom sum
    p1 = rhos[:, 2, 2].real + pee
    assert np.max(np.abs(p1 - np.exp(-t))) < 1e-8


def test_long_time_invariants():
    p = PhysicalParams(omega1=1.0, omega2=1.0, delta12=5.0, gamma12=0.9)
    t, rhos = lindblad_integrate(RHO_GG_2, p, dt=1e-3, t_end=100.0, n_record=21)
    for rho in rhos:  # validate=True already checked; assert explicitly
        assert abs(np.trace(rho) - 1.0) < 1e-8
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-10
        assert np.linalg.eigvalsh(rho).min() > -1e-8


def test_check_density_matrix_raises():
    with pytest.raises(InvariantViolation):
        check_density_matrix(np.diag([0.6, 0.6]).astype(complex))
    bad_herm = np.array([[0.5, 1e-3], [0.0, 0.5]], dtype=complex)
    with pytest.raises(InvariantViolation):
        check_density_matrix(bad_herm)
    with pytest.raises(InvariantViolation):
        check_density_matrix(np.diag([1.5, -0.5]).astype(complex))


def test_steady_state_is_stationary():
    p = PhysicalParams(omega1=1.0, omega2=1.0, delta12=2.0, gamma12=0.5)
    rho = steady_state(p)
    t, rhos = lindblad_integrate(rho, p, dt=1e-3, t_end=5.0, n_record=3)
    assert np.max(np.abs(rhos[-1] - rho)) < 1e-7


def test_g2_regression_single_atom_closed_form():
    """Resonance fluorescence: g2 = 1 - e^(-3 g t/4)[cos Mt + 3g/(4M) sin Mt]."""
    for omega in (1.0, 2.0):
        p = PhysicalParams(omega1=omega)
        tau = np.linspace(0.0, 10.0, 101)
        g2 = g2_regression(p, tau, n_atoms=1)
        m = np.sqrt(omega**2 - 1.0 / 16.0)
        ref = 1 - np.exp(-0.75 * tau) * (np.cos(m * tau)
                                         + (0.75 / m) * np.sin(m * tau))
        assert np.max(np.abs(g2 - ref)) < 1e-8
        assert abs(g2[0]) < 1e-10


def test_g2_regression_two_independent_atoms():
    p = PhysicalParams(omega1=1.0, omega2=1.0)
    g2 = g2_regression(p, np.array([0.0, 50.0]))
    assert abs(g2[0] - 0.5) < 1e-8  # (N-1)/N for N = 2
    assert abs(g2[1] - 1.0) < 1e-8


def test_g2_regression_input_validation():
    p = PhysicalParams(omega1=1.0)
    with pytest.raises(ValueError):
        g2_regression(p, np.array([1.0, 0.5]), n_atoms=1)
    with pytest.raises(ValueError):
        g2_regression(p, np.array([-1.0, 0.5]), n_atoms=1)
    with pytest.raises(ValueError):
        g2_regression(PhysicalParams(omega1=1.0, gamma1=0.0, gamma2=0.0),
                      np.array([0.0]), n_atoms=1)


def test_integrate_input_validation():
    p = PhysicalParams(omega1=1.0)
    with pytest.raises(ValueError):
        lindblad_integrate(np.eye(3, dtype=complex) / 3.0, p, 1e-3, 1.0)
    with pytest.raises(InvariantViolation):
        lindblad_integrate(np.diag([0.4, 0.4]).astype(complex), p, 1e-3, 1.0)
