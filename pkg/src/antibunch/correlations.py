"""Photon-stream correlation estimation and ensemble statistics.

The g2 estimator counts all ordered photon pairs (full HBT
autocorrelation, no start-stop) and normalizes with the global empirical
rate so that an uncorrelated Poisson stream averages to one in every bin.
The ensemble side implements the Poisson mixture of atom numbers: the
fixed-N value (N-1)/N, its rate-weighted average over P_mu(N), and the
source brightness.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._kernels import pair_histogram
from .montecarlo import Trajectory

__all__ = [
    "CorrelationEstimate",
    "MixtureSpec",
    "estimate_g2",
    "concat_g2",
    "g2_zero_fixed_n",
    "poisson_weight",
    "mixture_g2_zero",
    "brightness",
    "rate_weighted_average",
    "save_correlation_csv",
    "save_summary_json",
]

DEFAULT_BIN_WIDTH = 0.05
DEFAULT_TAU_MAX = 20.0


@dataclass
class CorrelationEstimate:
    """Binned g2(tau) with raw pair counts and Poisson error bars."""

    tau_bins: np.ndarray
    g2_values: np.ndarray
    counts: np.ndarray
    bin_width: float
    total_time: float
    mean_rate: float

    @property
    def sigma(self) -> np.ndarray:
        """Poisson standard error per bin, in g2 units."""
        norm = self.mean_rate**2 * self.total_time * self.bin_width
        return np.sqrt(np.maximum(self.counts, 1.0)) / norm

    @property
    def g2_zero(self) -> float:
        """First-bin value, reported as g2(0)."""
        return float(self.g2_values[0])


def _histogram(trajs: Sequence[Trajectory], bin_width: float, tau_max: float):
    nbins = int(round(tau_max / bin_width))
    if nbins < 1 or bin_width <= 0:
        raise ValueError("need 0 < bin_width <= tau_max")
    counts = np.zeros(nbins, dtype=np.int64)
    total_time = 0.0
    total_photons = 0
    for traj in trajs:
        pair_histogram(np.ascontiguousarray(traj.times, dtype=float), bin_width, counts)
        total_time += traj.duration
        total_photons += traj.count
    return counts, total_time, total_photons, nbins


def _normalize(counts, total_time, total_photons, nbins, bin_width):
    rate = total_photons / total_time
    norm = rate**2 * total_time * bin_width
    centers = (np.arange(nbins) + 0.5) * bin_width
    return CorrelationEstimate(
        tau_bins=centers,
        g2_values=counts / norm,
        counts=counts.astype(float),
        bin_width=bin_width,
        total_time=total_time,
        mean_rate=rate,
    )


def estimate_g2(
    traj: Trajectory,
    bin_width: float = DEFAULT_BIN_WIDTH,
    tau_max: float = DEFAULT_TAU_MAX,
) -> CorrelationEstimate:
    """Autocorrelation histogram of one photon stream."""
    if traj.count < 2:
        raise ValueError("need at least two photons to correlate")
    counts, t, n, nbins = _histogram([traj], bin_width, tau_max)
    return _normalize(counts, t, n, nbins, bin_width)


def concat_g2(
    trajs: Sequence[Trajectory],
    bin_width: float = DEFAULT_BIN_WIDTH,
    tau_max: float = DEFAULT_TAU_MAX,
) -> CorrelationEstimate:
    """Correlation of appended trajectories; no pairs across segment borders.

    Segments contribute pair counts individually; durations and photon
    numbers are pooled for the global-rate normalization.  Photon-free
    segments contribute duration only.
    """
    if not trajs:
        raise ValueError("no trajectories given")
    counts, t, n, nbins = _histogram(trajs, bin_width, tau_max)
    if n < 2:
        raise ValueError("need at least two photons to correlate")
    return _normalize(counts, t, n, nbins, bin_width)


def g2_zero_fixed_n(n: int) -> float:
    """g2(0) = (N-1)/N for a fixed number of independent emitters."""
    if n < 1:
        raise ValueError("need at least one emitter")
    return (n - 1) / n


def poisson_weight(mu: float, n: int) -> float:
    """P_mu(N) = mu^N e^(-mu) / N!."""
    if mu < 0 or n < 0:
        raise ValueError("mu and n must be non-negative")
    if mu == 0:
        return 1.0 if n == 0 else 0.0
    return math.exp(n * math.log(mu) - mu - math.lgamma(n + 1))


@dataclass(frozen=True)
class MixtureSpec:
    """Poisson-distributed atom number with per-N emission rates.

    ``rates[k]`` is the emission rate R_N for N = k + 1 atoms, so
    ``n_max = len(rates)``.
    """

    mu: float
    rates: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.mu < 0:
            raise ValueError("mu must be non-negative")
        if len(self.rates) < 1:
            raise ValueError("need rates up to at least N = 1")
        if any(r < 0 for r in self.rates):
            raise ValueError("rates must be non-negative")
        object.__setattr__(self, "rates", tuple(float(r) for r in self.rates))

    @property
    def n_max(self) -> int:
        return len(self.rates)

    @property
    def weights(self) -> np.ndarray:
        """P_mu(N) for N = 1 .. n_max."""
        return np.array([poisson_weight(self.mu, n) for n in range(1, self.n_max + 1)])


def mixture_g2_zero(spec: MixtureSpec, g2_per_n: Sequence[float]) -> float:
    """Rate-weighted Poisson average of per-N g2(0) values.

    g2_mu(0) = sum_N g2_N(0) P(N) R_N / sum_N P(N) R_N, N = 1 .. n_max.
    """
    if len(g2_per_n) != spec.n_max:
        raise ValueError("need one g2 value per atom number")
    w = spec.weights * np.asarray(spec.rates)
    total = w.sum()
    if total <= 0:
        raise ValueError("all emission rates vanish")
    return float(np.dot(w, np.asarray(g2_per_n, dtype=float)) / total)


def brightness(spec: MixtureSpec) -> float:
    """Total emission rate of the mixture normalized to the one-atom rate."""
    r1 = spec.rates[0]
    if r1 <= 0:
        raise ValueError("one-atom rate must be positive")
    return float(np.dot(spec.weights, np.asarray(spec.rates)) / r1)


def rate_weighted_average(
    estimates: Sequence[CorrelationEstimate],
) -> CorrelationEstimate:
    """Average g2 curves of independent realizations, weighted by their rate.

    The combined mean rate is the duration-weighted mean; pair counts are
    pooled.  All inputs must share the bin grid.
    """
    if not estimates:
        raise ValueError("no estimates given")
    first = estimates[0]
    for e in estimates[1:]:
        if e.bin_width != first.bin_width or e.tau_bins.size != first.tau_bins.size:
            raise ValueError("bin grids differ")
    rates = np.array([e.mean_rate for e in estimates])
    durations = np.array([e.total_time for e in estimates])
    if rates.sum() <= 0:
        raise ValueError("all realizations are photon-free")
    g2 = np.zeros_like(first.g2_values)
    for e, w in zip(estimates, rates / rates.sum()):
        g2 += w * e.g2_values
    counts = np.sum([e.counts for e in estimates], axis=0)
    return CorrelationEstimate(
        tau_bins=first.tau_bins.copy(),
        g2_values=g2,
        counts=counts,
        bin_width=first.bin_width,
        total_time=float(durations.sum()),
        mean_rate=float(np.dot(rates, durations) / durations.sum()),
    )


def save_correlation_csv(est: CorrelationEstimate, path) -> None:
    """Write `tau,g2,counts,sigma` rows."""
    sigma = est.sigma
    with open(path, "w") as fh:
        fh.write("tau,g2,counts,sigma\n")
        for t, g, c, s in zip(est.tau_bins, est.g2_values, est.counts, sigma):
            fh.write(f"{t:.12g},{g:.12g},{int(c)},{s:.12g}\n")


def save_summary_json(path, est: CorrelationEstimate, brightness_value: float,
                      extra: dict | None = None) -> None:
    """Write the scalar summary of a correlation run."""
    payload = {
        "g2_zero": est.g2_zero,
        "mean_rate": est.mean_rate,
        "brightness": brightness_value,
        "total_photons": int(round(est.mean_rate * est.total_time)),
        "duration": est.total_time,
    }
    if extra:
        payload.update(extra)
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
