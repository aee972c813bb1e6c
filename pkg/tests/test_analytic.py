"""Closed-form decay-free dynamics against the matrix-exponential oracle."""

import numpy as np
import pytest

from antibunch import (
    PhysicalParams,
    analytic_pee,
    build_pair_hamiltonian,
    doubly_excited_amplitude,
    matrix_exponential,
    single_excitation_product,
)


def _pee_oracle(omega, delta12, ts):
    p = PhysicalParams(omega1=omega, omega2=omega, gamma1=0.0, gamma2=0.0,
                       delta12=delta12)
    h = build_pair_hamiltonian(p)
    psi0 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)
    return np.array(
        [abs((matrix_exponential(h, t) @ psi0)[3]) ** 2 for t in ts]
    )


@pytest.mark.parametrize("delta12", [0.0, 2.0, 10.0])
def test_matches_matrix_exponential(delta12):
    ts = np.linspace(0.0, 50.0, 501)
    closed = analytic_pee(1.0, delta12, ts)
    oracle = _pee_oracle(1.0, delta12, ts)
    assert np.max(np.abs(closed - oracle)) < 1e-10


def test_reduces_to_sin4_without_interaction():
    ts = np.linspace(0.0, 50.0, 2001)
    omega = 1.3
    assert np.max(np.abs(analytic_pee(omega, 0.0, ts)
                         - np.sin(omega * ts / 2) ** 4)) < 1e-10


def test_amplitude_vanishes_at_t0():
    for delta12 in (0.0, 1.0, 7.5, -3.0):
        assert abs(doubly_excited_amplitude(1.0, delta12, 0.0)) < 1e-14


def test_interaction_suppresses_double_excitation_on_drive_timescale():
    # suppression holds on the ~1/Omega timescale; the resonant slow
    # |gg> <-> |ee> two-photon oscillation still peaks near 1 at t ~ delta12/Omega^2
    short = np.linspace(0.0, 5.0, 501)
    peak0 = analytic_pee(1.0, 0.0, short).max()
    peak10 = analytic_pee(1.0, 10.0, short).max()
    assert abs(peak0 - 1.0) < 1e-3  # full Rabi flopping to |ee> at t = pi
    assert peak10 < 0.1
    long = np.linspace(0.0, 50.0, 5001)
    assert analytic_pee(1.0, 10.0, long).max() > 0.9


def test_product_equals_pee_when_independent():
    ts = np.linspace(0.0, 20.0, 201)
    pee = analytic_pee(1.0, 0.0, ts)
    prod = single_excitation_product(1.0, 0.0, ts)
    assert np.max(np.abs(pee - prod)) < 1e-10


def test_product_departs_from_pee_when_interacting():
    ts = np.linspace(0.0, 20.0, 201)
    pee = analytic_pee(1.0, 10.0, ts)
    prod = single_excitation_product(1.0, 10.0, ts)
    assert np.max(np.abs(pee - prod)) > 0.1  # correlations, not independence


def test_scalar_input():
    assert isinstance(single_excitation_product(1.0, 2.0, 1.5), float)
    assert np.isscalar(float(analytic_pee(1.0, 2.0, 1.5)))


def test_rejects_nonpositive_omega():
    with pytest.raises(ValueError):
        analytic_pee(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        single_excitation_product(-1.0, 1.0, 1.0)
