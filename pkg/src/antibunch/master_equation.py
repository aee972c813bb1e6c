"""Deterministic Lindblad evolution: the oracle side of the simulation.

Fixed-step RK4 integration of

    drho/dt = -i[H, rho] - sum_ij gamma_ij (S_i+ S_j- rho + rho S_i+ S_j-)/2
              + sum_ij gamma_ij S_j- rho S_i+

written in the diagonalized jump-channel form, plus the steady state and
the quantum-regression g2(tau).
"""

from __future__ import annotations

import numpy as np

from ._kernels import lindblad_residual, lindblad_steps
from .collective import DecayMatrix, decompose
from .operators import (
    SIGMA_MINUS,
    PhysicalParams,
    build_pair_hamiltonian,
    build_single_hamiltonian,
)

__all__ = [
    "InvariantViolation",
    "lindblad_integrate",
    "steady_state",
    "g2_regression",
]


class InvariantViolation(RuntimeError):
    """A density matrix lost trace, Hermiticity or positivity."""


def _operators(p: PhysicalParams, n_atoms: int):
    """Hamiltonian, summed decay operator C = sum L^dag L, and jump operators."""
    if n_atoms == 1:
        h = build_single_hamiltonian(p.omega1, p.delta)
        ls = np.array([np.sqrt(p.gamma1) * SIGMA_MINUS])
    elif n_atoms == 2:
        h = build_pair_hamiltonian(p)
        basis = decompose(DecayMatrix(p.gamma1, p.gamma2, p.gamma12))
        ls = np.array([basis.l1, basis.l2])
    else:
        raise ValueError("only 1 or 2 atoms are supported")
    lsd = np.ascontiguousarray(np.conj(np.transpose(ls, (0, 2, 1))))
    c = np.zeros_like(h)
    for m in range(ls.shape[0]):
        c += lsd[m] @ ls[m]
    return np.ascontiguousarray(h), np.ascontiguousarray(c), np.ascontiguousarray(ls), lsd


def check_density_matrix(rho: np.ndarray, context: str = "") -> None:
    """Raise InvariantViolation unless rho is a valid density matrix."""
    label = f" ({context})" if context else ""
    if abs(np.trace(rho).real - 1.0) > 1e-8 or abs(np.trace(rho).imag) > 1e-8:
        raise InvariantViolation(f"trace deviates from 1{label}: {np.trace(rho)}")
    if np.max(np.abs(rho - rho.conj().T)) > 1e-10:
        raise InvariantViolation(f"Hermiticity defect{label}")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min() < -1e-8:
        raise InvariantViolation(f"negative eigenvalue{label}")


def lindblad_integrate(
    rho0: np.ndarray,
    p: PhysicalParams,
    dt: float,
    t_end: float,
    n_record: int = 201,
    validate: bool = True,
):
    """Integrate the master equation; returns (times, stack of rho(t)).

    The atom number is inferred from the dimension of ``rho0`` (2 -> one
    atom, 4 -> two atoms).  Recorded samples are checked against the
    density-matrix invariants unless ``validate`` is False.
    """
    rho = np.ascontiguousarray(np.asarray(rho0, dtype=complex).copy())
    if rho.shape not in ((2, 2), (4, 4)):
        raise ValueError("rho0 must be 2x2 or 4x4")
    if validate:
        check_density_matrix(rho, "initial state")
    n_atoms = 1 if rho.shape[0] == 2 else 2
    h, c, ls, lsd = _operators(p, n_atoms)

    n_steps = int(round(t_end / dt))
    n_record = min(max(n_record, 2), n_steps + 1)
    record_steps = np.unique(np.round(np.linspace(0, n_steps, n_record)).astype(int))
    times = record_steps * dt
    out = np.empty((record_steps.size, *rho.shape), dtype=complex)
    done = 0
    for k, target in enumerate(record_steps):
        if target > done:
            lindblad_steps(rho, h, c, ls, lsd, dt, int(target - done))
            done = int(target)
        out[k] = rho
        if validate:
            check_density_matrix(rho, f"t={times[k]:g}")
    return times, out


def steady_state(
    p: PhysicalParams,
    n_atoms: int = 2,
    dt: float = 1e-3,
    tol: float = 1e-10,
    t_max: float = 1e3,
    check_every: int = 1000,
) -> np.ndarray:
    """Stationary density matrix, found by integrating from the ground state."""
    dim = 2 * n_atoms
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    h, c, ls, lsd = _operators(p, n_atoms)
    steps_left = int(round(t_max / dt))
    while steps_left > 0:
        n = min(check_every, steps_left)
        lindblad_steps(rho, h, c, ls, lsd, dt, n)
        steps_left -= n
        if lindblad_residual(rho, h, c, ls, lsd) < tol:
            return rho
    raise InvariantViolation(
        f"steady state not converged to {tol} within t = {t_max}"
    )


def g2_regression(
    p: PhysicalParams,
    tau_grid: np.ndarray,
    n_atoms: int = 2,
    dt: float = 1e-3,
) -> np.ndarray:
    """Normalized g2(tau) of the emitted photon stream, via quantum regression.

    The emission correlation of the jump channels: the collapsed state
    sum_m L_m rho_ss L_m^dag is evolved under the same Lindblad generator
    and read out with the photon-flux operator F = sum_m L_m^dag L_m,
    normalized by Tr[F rho_ss]^2.  For a single atom this reduces to the
    S+ S- autocorrelation; for two atoms it is the channel-pooled photon
    statistics that the timestamp estimator measures (an amplitude-summed
    detector would add interference cross terms between independent
    channels).
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(np.diff(tau_grid) < 0) or tau_grid.size == 0 or tau_grid[0] < 0:
        raise ValueError("tau_grid must be sorted and non-negative")
    if p.gamma1 <= 0 and p.gamma2 <= 0:
        raise ValueError("a steady state requires at least one decay channel")

    rho_ss = steady_state(p, n_atoms=n_atoms, dt=dt)
    h, c, ls, lsd = _operators(p, n_atoms)
    n_op = c  # photon-flux operator sum_m L_m^dag L_m

    denom = float(np.trace(n_op @ rho_ss).real)
    if denom <= 0:
        raise ValueError("steady state emits no photons; g2 undefined")
    sigma = np.zeros_like(rho_ss)
    for m in range(ls.shape[0]):
        sigma += ls[m] @ rho_ss @ lsd[m]
    sigma = np.ascontiguousarray(sigma)

    steps = np.round(tau_grid / dt).astype(np.int64)
    out = np.empty(tau_grid.size, dtype=float)
    done = 0
    for k, target in enumerate(steps):
        if target > done:
            lindblad_steps(sigma, h, c, ls, lsd, dt, int(target - done))
            done = int(target)
        out[k] = float(np.trace(n_op @ sigma).real) / denom**2
    return out
