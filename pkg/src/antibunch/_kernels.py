"""Numba inner loops: quantum-jump stepping, RK4 Lindblad stepping, pair counting.

These kernels operate on tiny dense complex matrices (2x2 or 4x4) with
hand-written loops; fastmath stays off so that results are bit-identical
for a given random stream.
"""

from __future__ import annotations

import numpy as np
from numba import njit

__all__ = [
    "qmc_chunk",
    "lindblad_steps",
    "lindblad_residual",
    "pair_histogram",
]


@njit(cache=True)
def _expectation(psi, op):
    """Re <psi| op |psi> for a small dense matrix."""
    dim = psi.shape[0]
    acc = 0.0
    for a in range(dim):
        row = complex(0.0, 0.0)
        for b in range(dim):
            row += op[a, b] * psi[b]
        acc += (np.conj(psi[a]) * row).real
    return acc


@njit(cache=True)
def _apply_and_normalize(mat, psi, out):
    """out = mat @ psi / ||mat @ psi||; returns the pre-normalization norm."""
    dim = psi.shape[0]
    norm2 = 0.0
    for a in range(dim):
        acc = complex(0.0, 0.0)
        for b in range(dim):
            acc += mat[a, b] * psi[b]
        out[a] = acc
        norm2 += acc.real * acc.real + acc.imag * acc.imag
    norm = np.sqrt(norm2)
    if norm > 0.0:
        inv = 1.0 / norm
        for a in range(dim):
            out[a] *= inv
    return norm


@njit(cache=True)
def qmc_chunk(
    psi,
    u,
    e1,
    e2,
    l1,
    l2,
    dt,
    randoms,
    jump_steps,
    jump_channels,
    record_every,
    record_offset,
    pops,
):
    """Advance one chunk of fixed-dt quantum-jump steps.

    One uniform random number is consumed per step.  ``e1``/``e2`` are the
    precomputed L_m^dag L_m matrices, ``u`` the no-jump propagator
    exp(-i H_eff dt).  Jump events are written as (step-within-chunk,
    channel) pairs.  If ``record_every > 0`` the populations |psi|^2 are
    written to ``pops`` whenever the global step index (chunk offset is
    ``record_offset``) is a multiple of ``record_every``.

    Returns (number of jumps, max of p1 + p2 over the chunk).
    """
    dim = psi.shape[0]
    n = randoms.shape[0]
    scratch = np.empty(dim, dtype=np.complex128)
    n_jumps = 0
    p_max = 0.0
    for i in range(n):
        if record_every > 0:
            g = record_offset + i
            if g % record_every == 0:
                k = g // record_every
                for a in range(dim):
                    c = psi[a]
                    pops[k, a] = c.real * c.real + c.imag * c.imag
        p1 = _expectation(psi, e1) * dt
        p2 = _expectation(psi, e2) * dt
        ptot = p1 + p2
        if ptot > p_max:
            p_max = ptot
        r = randoms[i]
        if r < 1.0 - ptot:
            _apply_and_normalize(u, psi, scratch)
        else:
            if (1.0 - ptot) + p1 > r:
                channel = 1
                _apply_and_normalize(l1, psi, scratch)
            else:
                channel = 2
                _apply_and_normalize(l2, psi, scratch)
            jump_steps[n_jumps] = i
            jump_channels[n_jumps] = channel
            n_jumps += 1
        for a in range(dim):
            psi[a] = scratch[a]
    return n_jumps, p_max


@njit(cache=True)
def _mm(a, b, out):
    dim = a.shape[0]
    for i in range(dim):
        for j in range(dim):
            acc = complex(0.0, 0.0)
            for k in range(dim):
                acc += a[i, k] * b[k, j]
            out[i, j] = acc


@njit(cache=True)
def _lindblad_rhs(rho, h, c, ls, lsd, out, t1, t2):
    """out = -i[h, rho] - (c rho + rho c)/2 + sum_m ls[m] rho lsd[m]."""
    dim = rho.shape[0]
    _mm(h, rho, t1)
    _mm(rho, h, t2)
    for i in range(dim):
        for j in range(dim):
            out[i, j] = -1j * (t1[i, j] - t2[i, j])
    _mm(c, rho, t1)
    _mm(rho, c, t2)
    for i in range(dim):
        for j in range(dim):
            out[i, j] -= 0.5 * (t1[i, j] + t2[i, j])
    for m in range(ls.shape[0]):
        _mm(ls[m], rho, t1)
        _mm(t1, lsd[m], t2)
        for i in range(dim):
            for j in range(dim):
                out[i, j] += t2[i, j]


@njit(cache=True)
def lindblad_steps(rho, h, c, ls, lsd, dt, n_steps):
    """Advance rho in place by n_steps classical RK4 steps of size dt."""
    dim = rho.shape[0]
    k1 = np.empty((dim, dim), dtype=np.complex128)
    k2 = np.empty((dim, dim), dtype=np.complex128)
    k3 = np.empty((dim, dim), dtype=np.complex128)
    k4 = np.empty((dim, dim), dtype=np.complex128)
    stage = np.empty((dim, dim), dtype=np.complex128)
    t1 = np.empty((dim, dim), dtype=np.complex128)
    t2 = np.empty((dim, dim), dtype=np.complex128)
    for _ in range(n_steps):
        _lindblad_rhs(rho, h, c, ls, lsd, k1, t1, t2)
        for i in range(dim):
            for j in range(dim):
                stage[i, j] = rho[i, j] + 0.5 * dt * k1[i, j]
        _lindblad_rhs(stage, h, c, ls, lsd, k2, t1, t2)
        for i in range(dim):
            for j in range(dim):
                stage[i, j] = rho[i, j] + 0.5 * dt * k2[i, j]
        _lindblad_rhs(stage, h, c, ls, lsd, k3, t1, t2)
        for i in range(dim):
            for j in range(dim):
                stage[i, j] = rho[i, j] + dt * k3[i, j]
        _lindblad_rhs(stage, h, c, ls, lsd, k4, t1, t2)
        for i in range(dim):
            for j in range(dim):
                rho[i, j] += (dt / 6.0) * (
                    k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j]
                )


@njit(cache=True)
def lindblad_residual(rho, h, c, ls, lsd):
    """max |d rho / dt| entrywise; convergence measure for the steady state."""
    dim = rho.shape[0]
    out = np.empty((dim, dim), dtype=np.complex128)
    t1 = np.empty((dim, dim), dtype=np.complex128)
    t2 = np.empty((dim, dim), dtype=np.complex128)
    _lindblad_rhs(rho, h, c, ls, lsd, out, t1, t2)
    r = 0.0
    for i in range(dim):
        for j in range(dim):
            m = abs(out[i, j])
            if m > r:
                r = m
    return r


@njit(cache=True)
def pair_histogram(times, bin_width, counts):
    """Accumulate ordered photon-pair separations into counts (in place).

    Bin k covers [k*bin_width, (k+1)*bin_width); separations beyond the
    histogram range are skipped.  ``times`` must be sorted ascending.
    """
    n = times.shape[0]
    nbins = counts.shape[0]
    tau_max = bin_width * nbins
    for i in range(n):
        t0 = times[i]
        for j in range(i + 1, n):
            d = times[j] - t0
            if d >= tau_max:
                break
            k = int(d / bin_width)
            if k >= nbins:
                k = nbins - 1
            counts[k] += 1
