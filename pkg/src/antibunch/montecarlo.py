"""Stochastic quantum-jump trajectory engine.

A trajectory is a pure function of (physical parameters, simulation
config): the state evolves under the no-jump propagator exp(-i H_eff dt)
and collapses through one of the collective jump channels whenever the
per-step jump probabilities fire against a PCG64 uniform stream.  Photon
timestamps are the start times of the steps in which jumps occur.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import _kernels
from .collective import DecayMatrix, decompose
from .operators import (
    SIGMA_MINUS,
    PhysicalParams,
    build_effective_hamiltonian,
    build_pair_hamiltonian,
    build_single_hamiltonian,
)

__all__ = [
    "StepSizeError",
    "SimConfig",
    "Trajectory",
    "GROUND_1",
    "GROUND_2",
    "qmc_trajectory",
    "qmc_excited_populations",
    "trajectory_seeds",
    "save_trajectory_csv",
]

#: ground states for the one- and two-atom systems
GROUND_1 = np.array([1.0, 0.0], dtype=complex)
GROUND_2 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)

_CHUNK = 1 << 20
_P_WARN = 0.05
_P_ERROR = 0.2


class StepSizeError(RuntimeError):
    """Raised when the per-step jump probability invalidates the step size."""


@dataclass(frozen=True)
class SimConfig:
    """Time step, total duration, RNG seed and initial state of one run."""

    dt: float
    duration: float
    seed: int
    initial_state: np.ndarray = field(default_factory=lambda: GROUND_2.copy())

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.duration < self.dt:
            raise ValueError("duration must cover at least one step")
        psi = np.asarray(self.initial_state, dtype=complex)
        if psi.shape not in ((2,), (4,)):
            raise ValueError("initial state must have dimension 2 or 4")
        norm = np.linalg.norm(psi)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError("initial state must be normalized")
        object.__setattr__(self, "initial_state", psi)

    @property
    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))


@dataclass
class Trajectory:
    """Ordered photon-emission timestamps with channel labels."""

    times: np.ndarray
    channels: np.ndarray
    duration: float

    def __post_init__(self) -> None:
        self.times = np.asarray(self.times, dtype=float)
        self.channels = np.asarray(self.channels, dtype=np.int8)
        if self.times.size and (
            np.any(np.diff(self.times) <= 0)
            or self.times[0] < 0
            or self.times[-1] > self.duration
        ):
            raise ValueError("timestamps must be strictly increasing within [0, T]")

    @property
    def count(self) -> int:
        return int(self.times.size)

    @property
    def emission_rate(self) -> float:
        return self.count / self.duration


def _system_matrices(p: PhysicalParams, dim: int):
    """No-jump propagator pieces and jump operators for the given dimension."""
    if dim == 2:
        h = build_single_hamiltonian(p.omega1, p.delta)
        l1 = np.sqrt(p.gamma1) * SIGMA_MINUS
        l2 = np.zeros((2, 2), dtype=complex)
    else:
        h = build_pair_hamiltonian(p)
        basis = decompose(DecayMatrix(p.gamma1, p.gamma2, p.gamma12))
        l1, l2 = basis.l1, basis.l2
    h_eff = build_effective_hamiltonian(h, [l1, l2])
    return h_eff, l1, l2


def _run(p: PhysicalParams, cfg: SimConfig, record_every: int, pops: np.ndarray | None):
    psi = cfg.initial_state.astype(complex).copy()
    dim = psi.shape[0]
    h_eff, l1, l2 = _system_matrices(p, dim)
    u = expm(-1j * cfg.dt * h_eff)
    e1 = np.ascontiguousarray(l1.conj().T @ l1)
    e2 = np.ascontiguousarray(l2.conj().T @ l2)
    u = np.ascontiguousarray(u)
    l1 = np.ascontiguousarray(l1)
    l2 = np.ascontiguousarray(l2)

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed)))
    n_steps = cfg.n_steps
    dummy = np.empty((1, dim), dtype=float)
    jump_steps = np.empty(_CHUNK, dtype=np.int64)
    jump_channels = np.empty(_CHUNK, dtype=np.int8)

    times: list[np.ndarray] = []
    chans: list[np.ndarray] = []
    p_max = 0.0
    done = 0
    while done < n_steps:
        n = min(_CHUNK, n_steps - done)
        randoms = rng.random(n)
        n_jumps, chunk_p = _kernels.qmc_chunk(
            psi,
            u,
            e1,
            e2,
            l1,
            l2,
            cfg.dt,
            randoms,
            jump_steps,
            jump_channels,
            record_every,
            done,
            pops if pops is not None else dummy,
        )
        p_max = max(p_max, chunk_p)
        if n_jumps:
            times.append((jump_steps[:n_jumps] + done) * cfg.dt)
            chans.append(jump_channels[:n_jumps].copy())
        done += n

    if p_max >= _P_ERROR:
        raise StepSizeError(
            f"per-step jump probability reached {p_max:.3g} >= {_P_ERROR}; reduce dt"
        )
    if p_max >= _P_WARN:
        warnings.warn(
            f"per-step jump probability reached {p_max:.3g}; dt may be too coarse",
            stacklevel=3,
        )

    if times:
        all_times = np.concatenate(times)
        all_chans = np.concatenate(chans)
    else:
        all_times = np.empty(0, dtype=float)
        all_chans = np.empty(0, dtype=np.int8)
    return Trajectory(all_times, all_chans, cfg.duration)


def qmc_trajectory(p: PhysicalParams, cfg: SimConfig) -> Trajectory:
    """Simulate one quantum-jump trajectory; deterministic given cfg.seed."""
    return _run(p, cfg, 0, None)


def qmc_excited_populations(
    p: PhysicalParams, cfg: SimConfig, n_samples: int
) -> tuple[np.ndarray, np.ndarray, Trajectory]:
    """Trajectory plus basis-state populations |c_i|^2 sampled along the way.

    Returns (sample times, populations of shape (n_samples, dim), trajectory).
    Samples are taken at the start of evenly spaced steps.
    """
    n_steps = cfg.n_steps
    if not 1 <= n_samples <= n_steps:
        raise ValueError("n_samples must be within [1, n_steps]")
    record_every = n_steps // n_samples
    n_rec = (n_steps + record_every - 1) // record_every
    pops = np.zeros((n_rec, cfg.initial_state.shape[0]), dtype=float)
    traj = _run(p, cfg, record_every, pops)
    t = np.arange(n_rec) * record_every * cfg.dt
    return t, pops, traj


def trajectory_seeds(master_seed: int, count: int) -> np.ndarray:
    """Independent per-trajectory 64-bit seeds derived from one master seed."""
    ss = np.random.SeedSequence(master_seed)
    return ss.generate_state(count, dtype=np.uint64)


def save_trajectory_csv(traj: Trajectory, path) -> None:
    """Write `time,channel` rows, times with 12 significant digits."""
    with open(path, "w") as fh:
        fh.write("time,channel\n")
        for t, c in zip(traj.times, traj.channels):
            fh.write(f"{t:.12g},{int(c)}\n")
