"""Hamiltonians and propagators for one and two driven two-level atoms.

Conventions used throughout the package:

* hbar = 1; Hamiltonian entries are angular frequencies.
* All frequencies and rates are expressed in units of a reference decay
  rate ``gamma_ref`` and times in units of ``1/gamma_ref``.
* The two-atom basis order is ``(gg, ge, eg, ee)`` where the left letter
  refers to atom 1, i.e. ``|ab> = |a>_1 (x) |b>_2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import expm

__all__ = [
    "SIGMA_MINUS",
    "SIGMA_PLUS",
    "S1_MINUS",
    "S2_MINUS",
    "PhysicalParams",
    "build_single_hamiltonian",
    "build_pair_hamiltonian",
    "build_effective_hamiltonian",
    "matrix_exponential",
    "propagate_no_jump",
]

_I2 = np.eye(2, dtype=complex)

#: single-atom lowering operator |g><e| in the (g, e) basis
SIGMA_MINUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.conj().T

#: lowering operators embedded in the two-atom space, basis (gg, ge, eg, ee)
S1_MINUS = np.kron(SIGMA_MINUS, _I2)
S2_MINUS = np.kron(_I2, SIGMA_MINUS)


@dataclass(frozen=True)
class PhysicalParams:
    """Drive and decay parameters of one realization, in units of gamma_ref.

    ``omega1``/``omega2`` are the Rabi frequencies of the two atoms,
    ``delta`` the common laser detuning, ``gamma1``/``gamma2`` the
    single-atom population decay rates, ``gamma12`` the collective decay
    correction and ``delta12`` the coherent dipole-dipole interaction
    strength.
    """

    omega1: float
    omega2: float = 0.0
    delta: float = 0.0
    gamma1: float = 1.0
    gamma2: float = 1.0
    gamma12: float = 0.0
    delta12: float = 0.0

    def __post_init__(self) -> None:
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValueError("decay rates must be non-negative")
        bound = self.gamma1 * self.gamma2
        if self.gamma12**2 > bound * (1.0 + 1e-9) + 1e-300:
            raise ValueError(
                f"gamma12={self.gamma12} violates |gamma12| <= sqrt(gamma1*gamma2)"
            )


def build_single_hamiltonian(omega: float, delta: float) -> np.ndarray:
    """Rotating-frame Hamiltonian [[0, omega/2], [omega/2, delta]] of one atom."""
    return np.array(
        [[0.0, omega / 2.0], [omega / 2.0, delta]], dtype=complex
    )


def build_pair_hamiltonian(p: PhysicalParams) -> np.ndarray:
    """Two-atom Hamiltonian: both driven atoms plus the dipole-dipole coupling.

    The coupling ``delta12`` exchanges excitation between the (ge, eg)
    states.  Basis order is (gg, ge, eg, ee).
    """
    h1 = build_single_hamiltonian(p.omega1, p.delta)
    h2 = build_single_hamiltonian(p.omega2, p.delta)
    h_a = np.kron(h1, _I2) + np.kron(_I2, h2)
    w = p.delta12 * (
        np.kron(SIGMA_PLUS, SIGMA_MINUS) + np.kron(SIGMA_MINUS, SIGMA_PLUS)
    )
    return h_a + w


def build_effective_hamiltonian(
    h_tot: np.ndarray, jumps: Sequence[np.ndarray]
) -> np.ndarray:
    """Non-Hermitian H_eff = H_tot - i/2 sum_m L_m^dag L_m."""
    dim = h_tot.shape[0]
    j = np.zeros((dim, dim), dtype=complex)
    for l in jumps:
        if l.shape != h_tot.shape:
            raise ValueError("jump operator dimension does not match Hamiltonian")
        j += 0.5 * (l.conj().T @ l)
    return h_tot - 1j * j


def matrix_exponential(a: np.ndarray, t: float) -> np.ndarray:
    """Propagator exp(-i a t) of a (not necessarily Hermitian) matrix."""
    return expm(-1j * t * np.asarray(a, dtype=complex))


def propagate_no_jump(psi: np.ndarray, h_eff: np.ndarray, dt: float) -> np.ndarray:
    """One no-jump step: exp(-i H_eff dt) |psi>, renormalized to unit norm."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    out = matrix_exponential(h_eff, dt) @ psi
    norm = np.linalg.norm(out)
    if norm == 0.0:
        raise FloatingPointError("state annihilated by no-jump propagation")
    return out / norm
